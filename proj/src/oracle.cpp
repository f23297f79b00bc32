#include "lcs/oracle.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace lcs {

namespace {

// Composite Simpson over [t0, t0+T] with an even number of subintervals.
double simpson(const std::function<double(double)>& f, double t0, double T, double dt) {
  long n = std::max(2L, std::lround(std::fabs(T) / dt));
  if (n % 2 != 0) ++n;
  const double h = T / static_cast<double>(n);
  double s = f(t0) + f(t0 + T);
  for (long i = 1; i < n; ++i) s += f(t0 + static_cast<double>(i) * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

double profile_dz(const std::function<double(double, double)>& fz,
                  const std::function<double(double, double)>& f, double z, double t) {
  if (fz) return fz(z, t);
  const double h = 1e-6;
  return (f(z + h, t) - f(z - h, t)) / (2.0 * h);
}

}  // namespace

AnalyticCG parallel_shear_cg(const ShearProfiles& profiles, double z0, double t0, double T,
                             double dt) {
  // z(tau) = z0 + int w; w depends on t only, so this is plain quadrature.
  auto z_of = [&](double tau) {
    return z0 + simpson([&profiles](double s) { return profiles.w(s); }, t0, tau - t0, dt);
  };
  AnalyticCG out;
  out.a = simpson([&](double tau) { return profile_dz(profiles.uz, profiles.u, z_of(tau), tau); },
                  t0, T, dt);
  out.b = simpson([&](double tau) { return profile_dz(profiles.vz, profiles.v, z_of(tau), tau); },
                  t0, T, dt);
  out.C = Mat3::identity();
  out.C(0, 2) = out.C(2, 0) = out.a;
  out.C(1, 2) = out.C(2, 1) = out.b;
  out.C(2, 2) = out.a * out.a + out.b * out.b + 1.0;
  return out;
}

namespace {

SphereExtremum sphere_search(const Mat3& C, int samples,
                             const std::function<double(const Vec3&)>& objective) {
  if (samples < 10000) throw std::invalid_argument("sphere search: need at least 1e4 samples");
  // Fibonacci lattice over the unit sphere.
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  SphereExtremum best;
  best.value = -1.0;
  for (int i = 0; i < samples; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / samples;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = 2.0 * M_PI * static_cast<double>(i) / golden;
    const Vec3 n{r * std::cos(phi), r * std::sin(phi), z};
    const double v = objective(n);
    if (v > best.value) {
      best.value = v;
      best.direction = n;
    }
  }
  // Local polish: shrinking tangent-plane pattern search around the best sample.
  Vec3 n = best.direction;
  double step = 2.0 / std::sqrt(static_cast<double>(samples));
  for (int iter = 0; iter < 60; ++iter) {
    const Vec3 ref = std::fabs(n.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
    const Vec3 e1 = normalized(cross(n, ref));
    const Vec3 e2 = cross(n, e1);
    bool improved = false;
    for (const Vec3& d : {e1, -1.0 * e1, e2, -1.0 * e2}) {
      const Vec3 cand = normalized(n + step * d);
      const double v = objective(cand);
      if (v > best.value) {
        best.value = v;
        n = cand;
        improved = true;
      }
    }
    if (!improved) step *= 0.5;
    if (step < 1e-10) break;
  }
  best.direction = n;
  (void)C;
  return best;
}

}  // namespace

SphereExtremum brute_max_shear(const Mat3& C, int samples) {
  const EigenFrame f = eigen_frame(C);
  if (!f.in_U) throw std::domain_error("brute_max_shear: degenerate spectrum");
  return sphere_search(C, samples, [&C](const Vec3& n) { return tangential_shear(C, n); });
}

SphereExtremum brute_max_repulsion(const Mat3& C, int samples) {
  const EigenFrame f = eigen_frame(C);
  if (!f.in_U) throw std::domain_error("brute_max_repulsion: degenerate spectrum");
  return sphere_search(C, samples, [&C](const Vec3& n) { return normal_repulsion(C, n); });
}

double angle_lemma_residual(const Mat3& C, const EigenFrame& frame, const Vec3& v) {
  // Spherical angles of v: v = (sin phi cos theta, sin phi sin theta, cos phi).
  const double phi = std::acos(std::clamp(v.z / norm(v), -1.0, 1.0));
  const double theta = std::atan2(v.y, v.x);
  const double sp = std::sin(phi), cp = std::cos(phi);
  const double st = std::sin(theta), ct = std::cos(theta);
  const double lhs = C(0, 0) * sp * sp * ct * ct + C(1, 1) * sp * sp * st * st +
                     C(2, 2) * cp * cp +
                     2.0 * (C(0, 1) * sp * sp * st * ct + C(0, 2) * sp * cp * ct +
                            C(1, 2) * sp * cp * st);
  return lhs - std::sqrt(frame.lambda1 * frame.lambda3);
}

}  // namespace lcs
