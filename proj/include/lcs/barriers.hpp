#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lcs/integrator.hpp"
#include "lcs/reduced_lines.hpp"
#include "lcs/strain_fields.hpp"

namespace lcs {

struct PlaneFamily {
  std::vector<double> s1;  // strictly increasing plane heights (z-axis)
};

PlaneFamily uniform_planes(double lo, double hi, int count);

struct PlaneLines {
  double s1 = 0.0;
  std::vector<ReducedLine> lines;
  bool ok = false;
  std::string error;
};

struct SweepConfig {
  int nx = 100, ny = 100;    // tensor grid G0
  int seeds_x = 20, seeds_y = 20;  // seed lattice G1
  LineConfig line;
  IntegratorConfig integ;
  PlaneConfig plane;
  int workers = 1;
};

// H5/SH5: per-plane grid + line pipeline; per-plane failures are recorded and
// the sweep continues.
std::vector<PlaneLines> sweep_planes(const VelocityField& field, const PlaneFamily& family,
                                     LineKind kind, const SweepConfig& cfg, double t0, double T);

// Ordered chain of matched closed curves across consecutive planes.
using CurveChain = std::vector<ReducedLine>;

// SH5 matching: starting from each closed line on the lowest plane, greedily
// append the closest (centroid distance, Hausdorff tiebreak) closed line on
// each successive plane; a chain breaks when the best candidate jumps farther
// than jump_factor times the current curve's mean radius.
std::vector<CurveChain> match_closed_curves(const std::vector<std::vector<ReducedLine>>& per_plane,
                                            double jump_factor = 0.2, bool require_closed = true);

struct TorusEmbedding {
  std::vector<double> z;       // strictly increasing
  std::vector<double> x0, y0;  // center curve samples
  double R1 = 3.0, R2 = 1.0;
};

struct BarrierSurface {
  LineKind kind = LineKind::ShearPlus;
  double t0 = 0.0, T = 0.0;
  bool closed = false;  // tube (closed) vs strip (open)
  int curve_count = 0, ring_size = 0;  // vertices = curve_count * ring_size
  std::vector<double> s1_values;
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;
  bool embedded = false;
  // Per-vertex strain data, filled by sample_strain_data.
  std::vector<double> lambda1, lambda2, lambda3, detF, helicity;

  size_t vertex_index(int curve, int k) const {
    return static_cast<size_t>(curve) * static_cast<size_t>(ring_size) + static_cast<size_t>(k);
  }
};

// Resamples each chain curve to M arclength-uniform vertices, aligns seams by
// the cyclic shift (closed) or endpoint orientation (open) minimizing summed
// squared vertex distance to the previous curve, and stitches adjacent curves
// with triangles.
BarrierSurface build_surface(const CurveChain& chain, int resample_count);

// Bilinear lambda/detF/helicity samples at surface vertices from per-plane
// grids (grids[i] pairs with chain curve i). Vertices with masked cells keep
// NaN.
void sample_strain_data(BarrierSurface& surface, const std::vector<const DeformationGrid*>& grids);

// Toroidal coordinate change around an advected vortex-center curve.
// Throws if the center curve does not cover the surface z-range.
BarrierSurface torus_embed(const BarrierSurface& surface, const TorusEmbedding& emb);
Vec3 torus_embed_point(const Vec3& p, const TorusEmbedding& emb);
Vec3 torus_embed_inverse(const Vec3& q, double z_original, const TorusEmbedding& emb);

// Center curve by advecting the vortical center point across z via the flow.
TorusEmbedding center_curve_from_advection(const VelocityField& field, const Vec3& center,
                                           double z_lo, double z_hi, int samples, double t0,
                                           const IntegratorConfig& cfg, double R1 = 3.0,
                                           double R2 = 1.0);

BarrierSurface advect_surface(const VelocityField& field, const BarrierSurface& surface,
                              double t0, double t1, const IntegratorConfig& cfg = {},
                              int workers = 1);

double mesh_area(const BarrierSurface& surface);

// Interior-edge manifoldness: every interior edge shared by exactly two faces.
bool mesh_is_manifold(const BarrierSurface& surface);

enum class AreaKind { Repelling, Attracting, ShearIncompressible, ShearGeneral };

// Appendix-style predicted advected area from the initial mesh and per-vertex
// strain data (lambda2^(1/4) for the incompressible shear case; |detF|/sqrt(l3)
// and |detF|/sqrt(l1) for repelling/attracting).
double predicted_area(const BarrierSurface& surface, AreaKind kind);

struct TracerClassResult {
  std::string name;
  std::vector<double> max_deviation;  // per seed
};

struct TracerExperiment {
  double tube_radius = 0.0;  // declared confinement bound
  std::vector<TracerClassResult> classes;
};

struct TracerConfig {
  std::vector<double> offsets{-0.2, 0.0, 0.2};  // relative radial offsets: <0 in, 0 on, >0 out
  int seeds_per_class = 4;
  int checkpoints = 60;
  double tube_radius_factor = 1.5;  // times max distance from barrier centroid at t0
  int workers = 1;
};

// Seeds placed inside / on / outside a closed barrier curve at the stated
// radial offsets; all seeds and the barrier polyline are advected together,
// recording each seed's maximum distance from the advected barrier tube.
TracerExperiment tracer_experiment(const VelocityField& field, const ReducedLine& barrier,
                                   const TracerConfig& tcfg, double t0, double t1,
                                   const IntegratorConfig& cfg = {});

struct PerturbedStrainlineResult {
  BarrierSurface on_barrier, offset_plus, offset_minus;
  double drift_on = 0.0, drift_plus = 0.0, drift_minus = 0.0;  // mean z-drift
};

// Advects an open reduced strainline and its +-delta in-plane normal offsets
// as material curves swept into surfaces; reports mean z-drift of each.
PerturbedStrainlineResult perturbed_strainline_experiment(const VelocityField& field,
                                                          const ReducedLine& strainline,
                                                          double delta, double t0, double t1,
                                                          int time_samples = 20,
                                                          const IntegratorConfig& cfg = {},
                                                          int workers = 1);

}  // namespace lcs
