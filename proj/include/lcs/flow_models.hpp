#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "lcs/forcing.hpp"
#include "lcs/geometry.hpp"

namespace lcs {

// Time-dependent 3D velocity model. Evaluation is deterministic and immutable
// after construction; instances are safe to share across workers.
class VelocityField {
 public:
  virtual ~VelocityField() = default;

  // Velocity at (x, t). Throws std::out_of_range if t is outside the declared
  // time span (tabulated forcing only).
  virtual Vec3 eval(const Vec3& x, double t) const = 0;

  // Lockstep evaluation of a small cluster of points at the same time.
  // Overridden by the built-in fields to keep grid sweeps out of per-call
  // dispatch overhead.
  virtual void eval_batch(const Vec3* x, int n, double t, Vec3* out) const {
    for (int i = 0; i < n; ++i) out[i] = eval(x[i], t);
  }

  Vec3 operator()(const Vec3& x, double t) const { return eval(x, t); }

  const Box& domain() const { return domain_; }
  const std::optional<Vec3>& spatial_period() const { return period_; }
  const std::string& label() const { return label_; }

  // Time span over which the field may be evaluated; unbounded if empty.
  virtual std::optional<std::pair<double, double>> time_span() const { return std::nullopt; }

 protected:
  VelocityField(std::string label, Box domain, std::optional<Vec3> period)
      : label_(std::move(label)), domain_(domain), period_(period) {}

  std::string label_;
  Box domain_;
  std::optional<Vec3> period_;
};

using FieldPtr = std::shared_ptr<const VelocityField>;

struct AbcParams {
  double A = std::sqrt(3.0);
  double B = std::sqrt(2.0);
  double C = 1.0;
};

FieldPtr make_steady_abc(const AbcParams& p = {});

// A -> A + 0.1 sin t in the x and y equations.
FieldPtr make_periodic_abc(const AbcParams& p = {}, double amplitude = 0.1);

// A -> A + F(t) with tabulated chaotic forcing. The printed variant multiplies
// the y-equation coefficient by an extra A; the corrected form is the default.
FieldPtr make_chaotic_abc(const AbcParams& p, ForcingSignal forcing,
                          bool printed_variant = false);

// Parallel shear flow: xdot = u(z,t), ydot = v(z,t), zdot = w(t).
// The derivative profiles uz, vz are optional; when absent they are obtained
// by central differences (oracle quadrature only).
struct ShearProfiles {
  std::function<double(double, double)> u;   // u(z, t)
  std::function<double(double, double)> v;   // v(z, t)
  std::function<double(double)> w;           // w(t)
  std::function<double(double, double)> uz;  // du/dz, optional
  std::function<double(double, double)> vz;  // dv/dz, optional
};

FieldPtr make_parallel_shear(ShearProfiles profiles, Box domain = {});

FieldPtr make_zero_field(Box domain = {});

// Generic analytic field from a plain function (test fields).
FieldPtr make_analytic_field(std::string label, std::function<Vec3(const Vec3&, double)> f,
                             Box domain = {}, std::optional<Vec3> period = std::nullopt);

// Central-difference divergence estimate, O(h^2).
double divergence(const VelocityField& field, const Vec3& x, double t, double h);

}  // namespace lcs
