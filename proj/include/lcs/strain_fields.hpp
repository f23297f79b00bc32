#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "lcs/flow_models.hpp"
#include "lcs/geometry.hpp"
#include "lcs/integrator.hpp"

namespace lcs {

// Eigen-frame of the Cauchy-Green tensor, ascending eigenvalues.
struct EigenFrame {
  double lambda1 = 0.0, lambda2 = 0.0, lambda3 = 0.0;
  Vec3 xi1, xi2, xi3;
  bool in_U = false;  // eigenvalues pairwise distinct beyond the gap tolerance
};

struct ShearNormals {
  Vec3 n_plus, n_minus;
};

constexpr double kDefaultGapTol = 1e-6;

// Cyclic-Jacobi eigensolver for symmetric 3x3 with canonical eigenvector
// signs (largest-magnitude component positive). Throws on non-finite input
// or non-positive lambda1.
EigenFrame eigen_frame(const Mat3& C, double gap_tol = kDefaultGapTol);

// n_pm = alpha xi1 +- beta xi3 with alpha^2 = sqrt(l1)/(sqrt(l1)+sqrt(l3)),
// beta^2 = sqrt(l3)/(sqrt(l1)+sqrt(l3)). Throws if the frame is degenerate.
ShearNormals shear_normals(const EigenFrame& frame);

// rho = 1/sqrt(<n0, C^-1 n0>)
double normal_repulsion(const Mat3& C, const Vec3& n0);

// sigma = sqrt(<n0, C n0> - rho^2), radicand clamped at zero within rounding.
double tangential_shear(const Mat3& C, const Vec3& n0);

// Per-point record on a reference-plane lattice.
struct GridPoint {
  EigenFrame frame;
  Vec3 n_plus, n_minus;
  double detF = 0.0;
  bool eigen_ok = false;
  bool usable() const { return eigen_ok && frame.in_U; }
};

enum class DirField : int { Xi1 = 0, Xi3 = 1, NPlus = 2, NMinus = 3 };
enum class FrobeniusTriple : int { StrainZ3 = 0, StretchZ1 = 1, ShearPlus = 2, ShearMinus = 3 };

// Reference plane z = s1 sampled on an nx x ny lattice, plus two auxiliary
// layers at z = s1 +- hz for out-of-plane derivatives. Layer 1 is the main
// plane. Helicity fields live on the main layer; points without enough
// usable neighbors are masked, never silently filled.
struct DeformationGrid {
  double s1 = 0.0;
  double t0 = 0.0, T = 0.0;
  int nx = 0, ny = 0;
  double x0 = 0.0, y0 = 0.0, dx = 0.0, dy = 0.0;
  double hz = 0.0;

  std::array<std::vector<GridPoint>, 3> layers;

  std::vector<double> H_xi1, H_xi3, H_nplus, H_nminus;
  std::vector<std::uint8_t> H_valid;

  size_t idx(int i, int j) const { return static_cast<size_t>(j) * static_cast<size_t>(nx) + static_cast<size_t>(i); }
  Vec3 pos(int i, int j) const { return {x0 + i * dx, y0 + j * dy, s1}; }
  Vec3 plane_normal() const { return {0.0, 0.0, 1.0}; }
  bool in_plane(const Vec3& p) const {
    return p.x >= x0 && p.x <= x0 + (nx - 1) * dx && p.y >= y0 && p.y <= y0 + (ny - 1) * dy;
  }
  const GridPoint& at(int i, int j) const { return layers[1][idx(i, j)]; }

  double helicity(DirField f, size_t k) const {
    switch (f) {
      case DirField::Xi1: return H_xi1[k];
      case DirField::Xi3: return H_xi3[k];
      case DirField::NPlus: return H_nplus[k];
      default: return H_nminus[k];
    }
  }
  Vec3 direction(DirField f, int layer, size_t k) const {
    const GridPoint& g = layers[static_cast<size_t>(layer)][k];
    switch (f) {
      case DirField::Xi1: return g.frame.xi1;
      case DirField::Xi3: return g.frame.xi3;
      case DirField::NPlus: return g.n_plus;
      default: return g.n_minus;
    }
  }
};

struct PlaneConfig {
  double gap_tol = kDefaultGapTol;
  double hz = 0.0;  // 0 -> use in-plane spacing
  int workers = 1;
  // lattice bounds; zeros -> field domain box
  double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
};

// H1/SH1: flow map, Cauchy-Green, eigen-frame and shear normals per lattice
// point on the main plane and both auxiliary layers, then helicity fields.
DeformationGrid sample_plane(const VelocityField& field, double s1, int nx, int ny, double t0,
                             double T, const IntegratorConfig& icfg = {},
                             const PlaneConfig& pcfg = {});

// H_v = <curl v, v> per unmasked main-layer point; central differences with
// one-sided stencils at lattice boundaries; neighbors are sign-aligned to the
// center vector before differencing. Returns one value per lattice point with
// a validity mask.
void helicity_grid(const DeformationGrid& grid, DirField which, std::vector<double>& H,
                   std::vector<std::uint8_t>& valid);

// F_{X,Y,Z} = <(grad X) Y - (grad Y) X, Z> with the same stencil and
// sign-alignment rule per differenced field.
void frobenius_grid(const DeformationGrid& grid, FrobeniusTriple triple, std::vector<double>& F,
                    std::vector<std::uint8_t>& valid);

// Fills grid.H_* for all four direction fields.
void fill_helicity_fields(DeformationGrid& grid);

}  // namespace lcs
