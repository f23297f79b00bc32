#pragma once

#include <vector>

#include "lcs/flow_models.hpp"
#include "lcs/geometry.hpp"

namespace lcs {

struct IntegratorConfig {
  double dt = 0.01;      // fixed RK4 step
  double grad_h = 1e-4;  // auxiliary-grid half spacing for the flow gradient
};

struct FlowMapSample {
  Vec3 x0;
  double t0 = 0.0, t1 = 0.0;
  Vec3 F_val;   // final position
  Mat3 gradF;   // flow-map gradient
  Mat3 C;       // Cauchy-Green tensor, symmetrized
};

// Classical RK4 with fixed step; the last partial step is shortened to land
// exactly on t1. Backward advection (t1 < t0) is supported. Positions are
// never wrapped; periodicity lives in the velocity evaluator.
Vec3 advect_point(const VelocityField& field, const Vec3& x0, double t0, double t1,
                  const IntegratorConfig& cfg = {});

// Advances several points in lockstep over the same time span (one field
// eval_batch call per RK4 stage).
void advect_points(const VelocityField& field, std::vector<Vec3>& pts, double t0, double t1,
                   const IntegratorConfig& cfg = {});

// Central differences over six auxiliary points x0 +- grad_h e_i.
Mat3 flow_gradient(const VelocityField& field, const Vec3& x0, double t0, double t1,
                   const IntegratorConfig& cfg = {});

// gradF^T gradF, symmetrized to kill rounding asymmetry.
Mat3 cauchy_green(const Mat3& gradF);

// Flow map, gradient and Cauchy-Green tensor in one pass (7 lockstep
// trajectories).
FlowMapSample flow_map_sample(const VelocityField& field, const Vec3& x0, double t0, double t1,
                              const IntegratorConfig& cfg = {});

}  // namespace lcs
