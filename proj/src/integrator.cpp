#include "lcs/integrator.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace lcs {

namespace {

// One RK4 step of size h for n points in lockstep. Scratch buffers are caller
// provided so grid sweeps do not allocate per step.
struct RkScratch {
  std::vector<Vec3> k1, k2, k3, k4, tmp;
  void resize(size_t n) {
    k1.resize(n);
    k2.resize(n);
    k3.resize(n);
    k4.resize(n);
    tmp.resize(n);
  }
};

void rk4_step(const VelocityField& field, std::vector<Vec3>& p, double t, double h,
              RkScratch& s) {
  const int n = static_cast<int>(p.size());
  s.resize(p.size());
  field.eval_batch(p.data(), n, t, s.k1.data());
  for (int i = 0; i < n; ++i) s.tmp[static_cast<size_t>(i)] = p[static_cast<size_t>(i)] + 0.5 * h * s.k1[static_cast<size_t>(i)];
  field.eval_batch(s.tmp.data(), n, t + 0.5 * h, s.k2.data());
  for (int i = 0; i < n; ++i) s.tmp[static_cast<size_t>(i)] = p[static_cast<size_t>(i)] + 0.5 * h * s.k2[static_cast<size_t>(i)];
  field.eval_batch(s.tmp.data(), n, t + 0.5 * h, s.k3.data());
  for (int i = 0; i < n; ++i) s.tmp[static_cast<size_t>(i)] = p[static_cast<size_t>(i)] + h * s.k3[static_cast<size_t>(i)];
  field.eval_batch(s.tmp.data(), n, t + h, s.k4.data());
  for (int i = 0; i < n; ++i) {
    auto j = static_cast<size_t>(i);
    p[j] += (h / 6.0) * (s.k1[j] + 2.0 * s.k2[j] + 2.0 * s.k3[j] + s.k4[j]);
  }
}

void advect_impl(const VelocityField& field, std::vector<Vec3>& pts, double t0, double t1,
                 const IntegratorConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("integrator: dt must be positive");
  const double span = t1 - t0;
  if (span == 0.0) return;
  const double h = span > 0.0 ? cfg.dt : -cfg.dt;
  const long full = static_cast<long>(std::floor(std::fabs(span) / cfg.dt));
  RkScratch s;
  double t = t0;
  for (long i = 0; i < full; ++i) {
    rk4_step(field, pts, t, h, s);
    t = t0 + static_cast<double>(i + 1) * h;
  }
  const double rem = t1 - t;
  if (std::fabs(rem) > 1e-14 * (std::fabs(t1) + 1.0)) rk4_step(field, pts, t, rem, s);
}

}  // namespace

Vec3 advect_point(const VelocityField& field, const Vec3& x0, double t0, double t1,
                  const IntegratorConfig& cfg) {
  std::vector<Vec3> p{x0};
  advect_impl(field, p, t0, t1, cfg);
  return p[0];
}

void advect_points(const VelocityField& field, std::vector<Vec3>& pts, double t0, double t1,
                   const IntegratorConfig& cfg) {
  advect_impl(field, pts, t0, t1, cfg);
}

Mat3 flow_gradient(const VelocityField& field, const Vec3& x0, double t0, double t1,
                   const IntegratorConfig& cfg) {
  if (!(cfg.grad_h > 0.0)) throw std::invalid_argument("integrator: grad_h must be positive");
  std::vector<Vec3> aux(6, x0);
  for (int i = 0; i < 3; ++i) {
    aux[static_cast<size_t>(2 * i)][i] += cfg.grad_h;
    aux[static_cast<size_t>(2 * i + 1)][i] -= cfg.grad_h;
  }
  advect_impl(field, aux, t0, t1, cfg);
  Mat3 g;
  for (int i = 0; i < 3; ++i)
    g.set_col(i, (aux[static_cast<size_t>(2 * i)] - aux[static_cast<size_t>(2 * i + 1)]) / (2.0 * cfg.grad_h));
  return g;
}

Mat3 cauchy_green(const Mat3& gradF) { return symmetrize(transpose(gradF) * gradF); }

FlowMapSample flow_map_sample(const VelocityField& field, const Vec3& x0, double t0, double t1,
                              const IntegratorConfig& cfg) {
  std::vector<Vec3> pts(7, x0);
  for (int i = 0; i < 3; ++i) {
    pts[static_cast<size_t>(1 + 2 * i)][i] += cfg.grad_h;
    pts[static_cast<size_t>(2 + 2 * i)][i] -= cfg.grad_h;
  }
  advect_impl(field, pts, t0, t1, cfg);
  FlowMapSample out;
  out.x0 = x0;
  out.t0 = t0;
  out.t1 = t1;
  out.F_val = pts[0];
  for (int i = 0; i < 3; ++i)
    out.gradF.set_col(i, (pts[static_cast<size_t>(1 + 2 * i)] - pts[static_cast<size_t>(2 + 2 * i)]) / (2.0 * cfg.grad_h));
  out.C = cauchy_green(out.gradF);
  return out;
}

}  // namespace lcs
