#pragma once

#include "lcs/flow_models.hpp"
#include "lcs/geometry.hpp"
#include "lcs/strain_fields.hpp"

namespace lcs {

// Analytic Cauchy-Green tensor of a parallel shear flow:
//   C11 = C22 = 1, C12 = 0, C13 = a, C23 = b, C33 = a^2 + b^2 + 1
struct AnalyticCG {
  double a = 0.0, b = 0.0;
  Mat3 C;
};

// z(tau) integrated from zdot = w(tau); a = int u_z(z(tau), tau) dtau and
// b = int v_z(z(tau), tau) dtau by composite Simpson quadrature.
AnalyticCG parallel_shear_cg(const ShearProfiles& profiles, double z0, double t0, double T,
                             double dt);

struct SphereExtremum {
  Vec3 direction;
  double value = 0.0;
};

// Maximizer of the tangential shear over a Fibonacci-sphere sample of unit
// vectors plus local refinement around the best sample.
SphereExtremum brute_max_shear(const Mat3& C, int samples);

// Maximizer of the normal repulsion over the same sample scheme.
SphereExtremum brute_max_repulsion(const Mat3& C, int samples);

// Left-hand side of the angle identity evaluated with the C entries, minus
// sqrt(lambda1 lambda3). Zero (to rounding) when v = n_pm x xi2.
double angle_lemma_residual(const Mat3& C, const EigenFrame& frame, const Vec3& v);

}  // namespace lcs
