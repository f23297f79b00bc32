#include "lcs/flow_models.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace lcs {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

class SteadyAbc final : public VelocityField {
 public:
  explicit SteadyAbc(const AbcParams& p)
      : VelocityField("steady-abc", Box{}, Vec3{kTwoPi, kTwoPi, kTwoPi}), p_(p) {}

  Vec3 eval(const Vec3& x, double) const override {
    return {p_.A * std::sin(x.z) + p_.C * std::cos(x.y),
            p_.B * std::sin(x.x) + p_.A * std::cos(x.z),
            p_.C * std::sin(x.y) + p_.B * std::cos(x.x)};
  }

  void eval_batch(const Vec3* x, int n, double, Vec3* out) const override {
    const double A = p_.A, B = p_.B, C = p_.C;
    for (int i = 0; i < n; ++i) {
      out[i].x = A * std::sin(x[i].z) + C * std::cos(x[i].y);
      out[i].y = B * std::sin(x[i].x) + A * std::cos(x[i].z);
      out[i].z = C * std::sin(x[i].y) + B * std::cos(x[i].x);
    }
  }

 private:
  AbcParams p_;
};

class PeriodicAbc final : public VelocityField {
 public:
  PeriodicAbc(const AbcParams& p, double amp)
      : VelocityField("periodic-abc", Box{}, Vec3{kTwoPi, kTwoPi, kTwoPi}), p_(p), amp_(amp) {}

  Vec3 eval(const Vec3& x, double t) const override {
    const double a = p_.A + amp_ * std::sin(t);
    return {a * std::sin(x.z) + p_.C * std::cos(x.y),
            p_.B * std::sin(x.x) + a * std::cos(x.z),
            p_.C * std::sin(x.y) + p_.B * std::cos(x.x)};
  }

  void eval_batch(const Vec3* x, int n, double t, Vec3* out) const override {
    const double a = p_.A + amp_ * std::sin(t);
    const double B = p_.B, C = p_.C;
    for (int i = 0; i < n; ++i) {
      out[i].x = a * std::sin(x[i].z) + C * std::cos(x[i].y);
      out[i].y = B * std::sin(x[i].x) + a * std::cos(x[i].z);
      out[i].z = C * std::sin(x[i].y) + B * std::cos(x[i].x);
    }
  }

 private:
  AbcParams p_;
  double amp_;
};

class ChaoticAbc final : public VelocityField {
 public:
  ChaoticAbc(const AbcParams& p, ForcingSignal forcing, bool printed_variant)
      : VelocityField("chaotic-abc", Box{}, Vec3{kTwoPi, kTwoPi, kTwoPi}),
        p_(p),
        forcing_(std::move(forcing)),
        printed_variant_(printed_variant) {}

  Vec3 eval(const Vec3& x, double t) const override {
    const double a = p_.A + forcing_.value(t);
    const double ycoef = printed_variant_ ? p_.A * a : a;
    return {a * std::sin(x.z) + p_.C * std::cos(x.y),
            p_.B * std::sin(x.x) + ycoef * std::cos(x.z),
            p_.C * std::sin(x.y) + p_.B * std::cos(x.x)};
  }

  void eval_batch(const Vec3* x, int n, double t, Vec3* out) const override {
    const double a = p_.A + forcing_.value(t);
    const double ycoef = printed_variant_ ? p_.A * a : a;
    const double B = p_.B, C = p_.C;
    for (int i = 0; i < n; ++i) {
      out[i].x = a * std::sin(x[i].z) + C * std::cos(x[i].y);
      out[i].y = B * std::sin(x[i].x) + ycoef * std::cos(x[i].z);
      out[i].z = C * std::sin(x[i].y) + B * std::cos(x[i].x);
    }
  }

  std::optional<std::pair<double, double>> time_span() const override {
    return std::make_pair(forcing_.t_min(), forcing_.t_max());
  }

 private:
  AbcParams p_;
  ForcingSignal forcing_;
  bool printed_variant_;
};

class ParallelShear final : public VelocityField {
 public:
  ParallelShear(ShearProfiles profiles, Box domain)
      : VelocityField("parallel-shear", domain, std::nullopt), prof_(std::move(profiles)) {}

  Vec3 eval(const Vec3& x, double t) const override {
    return {prof_.u(x.z, t), prof_.v(x.z, t), prof_.w(t)};
  }

 private:
  ShearProfiles prof_;
};

class AnalyticField final : public VelocityField {
 public:
  AnalyticField(std::string label, std::function<Vec3(const Vec3&, double)> f, Box domain,
                std::optional<Vec3> period)
      : VelocityField(std::move(label), domain, period), f_(std::move(f)) {}

  Vec3 eval(const Vec3& x, double t) const override { return f_(x, t); }

 private:
  std::function<Vec3(const Vec3&, double)> f_;
};

}  // namespace

FieldPtr make_steady_abc(const AbcParams& p) { return std::make_shared<SteadyAbc>(p); }

FieldPtr make_periodic_abc(const AbcParams& p, double amplitude) {
  return std::make_shared<PeriodicAbc>(p, amplitude);
}

FieldPtr make_chaotic_abc(const AbcParams& p, ForcingSignal forcing, bool printed_variant) {
  return std::make_shared<ChaoticAbc>(p, std::move(forcing), printed_variant);
}

FieldPtr make_parallel_shear(ShearProfiles profiles, Box domain) {
  if (!profiles.u || !profiles.v || !profiles.w)
    throw std::invalid_argument("parallel shear: u, v, w profiles required");
  return std::make_shared<ParallelShear>(std::move(profiles), domain);
}

FieldPtr make_zero_field(Box domain) {
  return std::make_shared<AnalyticField>(
      "zero", [](const Vec3&, double) { return Vec3{}; }, domain, std::nullopt);
}

FieldPtr make_analytic_field(std::string label, std::function<Vec3(const Vec3&, double)> f,
                             Box domain, std::optional<Vec3> period) {
  return std::make_shared<AnalyticField>(std::move(label), std::move(f), domain, period);
}

double divergence(const VelocityField& field, const Vec3& x, double t, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("divergence: h must be positive");
  double d = 0.0;
  for (int i = 0; i < 3; ++i) {
    Vec3 xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    d += (field.eval(xp, t)[i] - field.eval(xm, t)[i]) / (2.0 * h);
  }
  return d;
}

}  // namespace lcs
