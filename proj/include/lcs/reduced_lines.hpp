#pragma once

#include <string>
#include <vector>

#include "lcs/strain_fields.hpp"

namespace lcs {

enum class LineKind : int { Strain = 0, Stretch = 1, ShearPlus = 2, ShearMinus = 3 };

std::string to_string(LineKind k);

enum class Termination : int {
  HelicityExceeded = 0,
  LeftDomain = 1,
  MaxLength = 2,
  Closed = 3,
  DegenerateSeed = 4,
};

struct LineConfig {
  double step = 0.0;           // arclength step; 0 -> 1e-3 * domain width
  double eps0 = 1e-2;          // helicity threshold
  double max_arclength = 0.0;  // 0 -> 4 * domain width
  double window = 0.0;         // trailing |H| average window; 0 -> 20 * step
  double closure_tol = 0.0;    // 0 -> 2 * step
  double d0 = 0.0;             // Hausdorff dedup threshold; 0 -> 10 * step
  double min_winding = 0.9 * 2.0 * M_PI;
  bool hausdorff_max_form = false;  // false: printed sum of directed distances

  // Resolved values for a grid whose in-plane width is `width`.
  LineConfig resolved(double width) const;
};

struct ReducedLine {
  LineKind kind = LineKind::Strain;
  double s1 = 0.0;
  std::vector<Vec3> vertices;
  std::vector<double> helicity;  // of the relevant field, per vertex
  bool closed = false;
  Termination termination = Termination::DegenerateSeed;

  bool empty() const { return vertices.empty(); }
  double arclength() const;
  Vec3 centroid() const;
};

// Interpolated in-plane tangent: n_Pi x xi3 (strain), n_Pi x xi1 (stretch),
// n_Pi x n_pm (shear), from bilinearly interpolated, sign-aligned grid values.
// Throws std::domain_error on a masked or degenerate neighborhood.
Vec3 reduced_vector(LineKind kind, const Vec3& point, const DeformationGrid& grid);

// H2/SH2: seeds of a coarser lattice where |H| < eps0 for the kind's field.
std::vector<Vec3> seed_filter(const DeformationGrid& grid, int seeds_x, int seeds_y, double eps0,
                              LineKind kind);

// H3/SH3 with direction matching: integrates both directions from the seed,
// resolving the sign ambiguity per step by maximal dot product against the
// previous direction; terminates on trailing-window helicity average, domain
// exit, max arclength, or closure.
ReducedLine integrate_line(const DeformationGrid& grid, const Vec3& seed, LineKind kind,
                           const LineConfig& cfg);

// The printed formula: SUM of the two directed max-min distances
// (max_form switches to the standard max).
double hausdorff_distance(const ReducedLine& a, const ReducedLine& b, bool max_form = false);

// H4: greedy pass in descending line length; keep a line only if its distance
// to every kept line exceeds d0.
std::vector<ReducedLine> dedup_lines(std::vector<ReducedLine> lines, double d0,
                                     bool max_form = false);

// SH4: closed if a later vertex returns within closure_tol of an earlier one
// with cumulative turning >= min_winding; trims to one period and snaps the
// endpoint to the start.
bool detect_closed(ReducedLine& line, const LineConfig& cfg);

// Full per-plane pipeline: seed, integrate, dedup.
std::vector<ReducedLine> extract_lines(const DeformationGrid& grid, LineKind kind,
                                       int seeds_x, int seeds_y, const LineConfig& cfg,
                                       int workers = 1);

void save_lines_csv(const std::vector<ReducedLine>& lines, const std::string& path);
std::vector<ReducedLine> load_lines_csv(const std::string& path);

}  // namespace lcs
