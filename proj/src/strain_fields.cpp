#include "lcs/strain_fields.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lcs/parallel.hpp"

namespace lcs {

namespace {

void jacobi_rotate(Mat3& A, Mat3& V, int p, int q) {
  if (A(p, q) == 0.0) return;
  const double theta = (A(q, q) - A(p, p)) / (2.0 * A(p, q));
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const double app = A(p, p), aqq = A(q, q), apq = A(p, q);
  A(p, p) = c * c * app - 2.0 * s * c * apq + s * s * aqq;
  A(q, q) = s * s * app + 2.0 * s * c * apq + c * c * aqq;
  A(p, q) = A(q, p) = 0.0;
  for (int k = 0; k < 3; ++k) {
    if (k == p || k == q) continue;
    const double akp = A(k, p), akq = A(k, q);
    A(k, p) = A(p, k) = c * akp - s * akq;
    A(k, q) = A(q, k) = s * akp + c * akq;
  }
  for (int k = 0; k < 3; ++k) {
    const double vkp = V(k, p), vkq = V(k, q);
    V(k, p) = c * vkp - s * vkq;
    V(k, q) = s * vkp + c * vkq;
  }
}

Vec3 canonical_sign(const Vec3& v) {
  double best = std::fabs(v.x);
  double comp = v.x;
  if (std::fabs(v.y) > best) { best = std::fabs(v.y); comp = v.y; }
  if (std::fabs(v.z) > best) { comp = v.z; }
  return comp < 0.0 ? -v : v;
}

Vec3 align_to(const Vec3& v, const Vec3& ref) { return dot(v, ref) < 0.0 ? -v : v; }

}  // namespace

EigenFrame eigen_frame(const Mat3& C, double gap_tol) {
  for (double e : C.m)
    if (!std::isfinite(e)) throw std::invalid_argument("eigen_frame: non-finite entry");

  Mat3 A = symmetrize(C);
  Mat3 V = Mat3::identity();
  const double scale = std::max({std::fabs(A(0, 0)), std::fabs(A(1, 1)), std::fabs(A(2, 2)), 1e-300});
  for (int sweep = 0; sweep < 50; ++sweep) {
    const double off = std::fabs(A(0, 1)) + std::fabs(A(0, 2)) + std::fabs(A(1, 2));
    if (off < 1e-15 * scale) break;
    jacobi_rotate(A, V, 0, 1);
    jacobi_rotate(A, V, 0, 2);
    jacobi_rotate(A, V, 1, 2);
  }

  std::array<int, 3> order{0, 1, 2};
  std::array<double, 3> lam{A(0, 0), A(1, 1), A(2, 2)};
  std::sort(order.begin(), order.end(), [&lam](int a, int b) { return lam[static_cast<size_t>(a)] < lam[static_cast<size_t>(b)]; });

  EigenFrame f;
  f.lambda1 = lam[static_cast<size_t>(order[0])];
  f.lambda2 = lam[static_cast<size_t>(order[1])];
  f.lambda3 = lam[static_cast<size_t>(order[2])];
  if (!(f.lambda1 > 0.0))
    throw std::domain_error("eigen_frame: non-positive eigenvalue (flow map not invertible)");

  Vec3 v1 = V.col(order[0]), v2 = V.col(order[1]), v3 = V.col(order[2]);
  // Re-orthonormalize against accumulated rotation roundoff.
  v1 = normalized(v1);
  v2 = normalized(v2 - dot(v2, v1) * v1);
  v3 = normalized(v3 - dot(v3, v1) * v1 - dot(v3, v2) * v2);
  f.xi1 = canonical_sign(v1);
  f.xi2 = canonical_sign(v2);
  f.xi3 = canonical_sign(v3);

  f.in_U = (f.lambda2 - f.lambda1 > gap_tol * f.lambda3) &&
           (f.lambda3 - f.lambda2 > gap_tol * f.lambda3);
  return f;
}

ShearNormals shear_normals(const EigenFrame& frame) {
  if (!frame.in_U) throw std::domain_error("shear_normals: degenerate eigen-frame");
  const double s1 = std::sqrt(frame.lambda1), s3 = std::sqrt(frame.lambda3);
  const double alpha = std::sqrt(s1 / (s1 + s3));
  const double beta = std::sqrt(s3 / (s1 + s3));
  ShearNormals n;
  n.n_plus = alpha * frame.xi1 + beta * frame.xi3;
  n.n_minus = alpha * frame.xi1 - beta * frame.xi3;
  return n;
}

double normal_repulsion(const Mat3& C, const Vec3& n0) {
  const double d = det(C);
  if (!(std::fabs(d) > 1e-300)) throw std::domain_error("normal_repulsion: singular tensor");
  const double q = dot(n0, inverse(C) * n0);
  if (!(q > 0.0)) throw std::domain_error("normal_repulsion: tensor not positive definite");
  return 1.0 / std::sqrt(q);
}

double tangential_shear(const Mat3& C, const Vec3& n0) {
  const double rho = normal_repulsion(C, n0);
  const double rad = dot(n0, C * n0) - rho * rho;
  return std::sqrt(std::max(rad, 0.0));
}

DeformationGrid sample_plane(const VelocityField& field, double s1, int nx, int ny, double t0,
                             double T, const IntegratorConfig& icfg, const PlaneConfig& pcfg) {
  if (nx < 8 || ny < 8) throw std::invalid_argument("sample_plane: nx, ny must be >= 8");
  const Box& box = field.domain();
  if (s1 < box.lo.z || s1 > box.hi.z)
    throw std::invalid_argument("sample_plane: plane outside domain box");

  DeformationGrid g;
  g.s1 = s1;
  g.t0 = t0;
  g.T = T;
  g.nx = nx;
  g.ny = ny;
  const double xa = (pcfg.x_max > pcfg.x_min) ? pcfg.x_min : box.lo.x;
  const double xb = (pcfg.x_max > pcfg.x_min) ? pcfg.x_max : box.hi.x;
  const double ya = (pcfg.y_max > pcfg.y_min) ? pcfg.y_min : box.lo.y;
  const double yb = (pcfg.y_max > pcfg.y_min) ? pcfg.y_max : box.hi.y;
  g.x0 = xa;
  g.y0 = ya;
  g.dx = (xb - xa) / (nx - 1);
  g.dy = (yb - ya) / (ny - 1);
  g.hz = pcfg.hz > 0.0 ? pcfg.hz : g.dx;

  const size_t npts = static_cast<size_t>(nx) * static_cast<size_t>(ny);
  for (auto& layer : g.layers) layer.assign(npts, GridPoint{});
  const double layer_z[3] = {s1 - g.hz, s1, s1 + g.hz};

  // Sign continuity sweep. Eigenvector signs are arbitrary per point, and
  // flipping xi1 or xi3 alone exchanges n_plus and n_minus, so independent
  // per-point sign choices mix the two shear families between neighbors.
  // Align each usable main-layer point to its left (else lower) usable
  // neighbor in row-major order, align the off-plane layers to the main
  // layer, and rebuild the shear normals from the flipped eigenvectors.
  // The pass is sequential and order-fixed, so worker count cannot affect it.
  auto align_frames = [](DeformationGrid& g) {
    auto flip = [](GridPoint& p, const GridPoint& ref) {
      if (dot(p.frame.xi1, ref.frame.xi1) < 0.0) p.frame.xi1 = -1.0 * p.frame.xi1;
      if (dot(p.frame.xi2, ref.frame.xi2) < 0.0) p.frame.xi2 = -1.0 * p.frame.xi2;
      if (dot(p.frame.xi3, ref.frame.xi3) < 0.0) p.frame.xi3 = -1.0 * p.frame.xi3;
      if (p.frame.in_U) {
        const ShearNormals n = shear_normals(p.frame);
        p.n_plus = n.n_plus;
        p.n_minus = n.n_minus;
      }
    };
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 0; i < g.nx; ++i) {
        GridPoint& p = g.layers[1][g.idx(i, j)];
        if (!p.usable()) continue;
        const GridPoint* ref = nullptr;
        if (i > 0 && g.layers[1][g.idx(i - 1, j)].usable()) ref = &g.layers[1][g.idx(i - 1, j)];
        else if (j > 0 && g.layers[1][g.idx(i, j - 1)].usable()) ref = &g.layers[1][g.idx(i, j - 1)];
        if (ref) flip(p, *ref);
      }
    }
    for (size_t layer : {size_t{0}, size_t{2}}) {
      for (size_t k = 0; k < g.layers[1].size(); ++k) {
        GridPoint& p = g.layers[layer][k];
        if (!p.usable() || !g.layers[1][k].usable()) continue;
        flip(p, g.layers[1][k]);
      }
    }
  };

  parallel_for(3 * npts, pcfg.workers, [&](size_t n) {
    const size_t layer = n / npts;
    const size_t k = n % npts;
    const int i = static_cast<int>(k % static_cast<size_t>(nx));
    const int j = static_cast<int>(k / static_cast<size_t>(nx));
    const Vec3 x0{g.x0 + i * g.dx, g.y0 + j * g.dy, layer_z[layer]};
    GridPoint& pt = g.layers[layer][k];
    try {
      const FlowMapSample s = flow_map_sample(field, x0, t0, t0 + T, icfg);
      pt.detF = det(s.gradF);
      pt.frame = eigen_frame(s.C, pcfg.gap_tol);
      pt.eigen_ok = true;
      if (pt.frame.in_U) {
        const ShearNormals n = shear_normals(pt.frame);
        pt.n_plus = n.n_plus;
        pt.n_minus = n.n_minus;
      }
    } catch (const std::exception&) {
      pt.eigen_ok = false;  // masked, never silently filled
    }
  });

  align_frames(g);
  fill_helicity_fields(g);
  return g;
}

namespace {

// Fetches a direction field value with usability flag. Shear fields resolve
// the branch against the reference vector: a residual seam in the sign sweep
// exchanges n_plus and n_minus, so the neighbor value entering a finite
// difference is whichever branch continues the center field.
struct FieldGetter {
  const DeformationGrid& grid;
  DirField which;
  bool get(int layer, int i, int j, const Vec3& ref, Vec3& out) const {
    const size_t k = grid.idx(i, j);
    const GridPoint& p = grid.layers[static_cast<size_t>(layer)][k];
    if (!p.usable()) return false;
    if (which == DirField::NPlus || which == DirField::NMinus) {
      out = std::fabs(dot(p.n_plus, ref)) >= std::fabs(dot(p.n_minus, ref)) ? p.n_plus
                                                                            : p.n_minus;
    } else {
      out = grid.direction(which, layer, k);
    }
    return true;
  }
};

// Jacobian of a unit direction field at main-layer point (i,j). Central
// differences where both neighbors are usable, one-sided at boundaries,
// neighbors sign-aligned to the center vector. Returns false if any partial
// cannot be formed.
template <typename Getter>
bool field_jacobian(const DeformationGrid& g, const Getter& get, int i, int j, const Vec3& center,
                    Mat3& J) {
  const double steps[3] = {g.dx, g.dy, g.hz};
  for (int axis = 0; axis < 3; ++axis) {
    Vec3 fwd, bwd;
    bool has_f = false, has_b = false;
    if (axis == 0) {
      has_f = (i + 1 < g.nx) && get(1, i + 1, j, center, fwd);
      has_b = (i - 1 >= 0) && get(1, i - 1, j, center, bwd);
    } else if (axis == 1) {
      has_f = (j + 1 < g.ny) && get(1, i, j + 1, center, fwd);
      has_b = (j - 1 >= 0) && get(1, i, j - 1, center, bwd);
    } else {
      has_f = get(2, i, j, center, fwd);
      has_b = get(0, i, j, center, bwd);
    }
    Vec3 deriv;
    if (has_f && has_b) {
      deriv = (align_to(fwd, center) - align_to(bwd, center)) / (2.0 * steps[axis]);
    } else if (has_f) {
      deriv = (align_to(fwd, center) - center) / steps[axis];
    } else if (has_b) {
      deriv = (center - align_to(bwd, center)) / steps[axis];
    } else {
      return false;
    }
    J.set_col(axis, deriv);
  }
  return true;
}

Vec3 curl_from_jacobian(const Mat3& J) {
  // J(c, axis) = d v_c / d x_axis
  return {J(2, 1) - J(1, 2), J(0, 2) - J(2, 0), J(1, 0) - J(0, 1)};
}

}  // namespace

void helicity_grid(const DeformationGrid& grid, DirField which, std::vector<double>& H,
                   std::vector<std::uint8_t>& valid) {
  const size_t npts = static_cast<size_t>(grid.nx) * static_cast<size_t>(grid.ny);
  H.assign(npts, 0.0);
  valid.assign(npts, 0);
  const FieldGetter getter{grid, which};
  auto get = [&getter](int layer, int i, int j, const Vec3& ref, Vec3& out) {
    return getter.get(layer, i, j, ref, out);
  };
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const size_t k = grid.idx(i, j);
      if (!grid.layers[1][k].usable()) continue;
      const Vec3 center = grid.direction(which, 1, k);
      Mat3 J;
      if (!field_jacobian(grid, get, i, j, center, J)) continue;
      H[k] = dot(curl_from_jacobian(J), center);
      valid[k] = 1;
    }
  }
}

void frobenius_grid(const DeformationGrid& grid, FrobeniusTriple triple, std::vector<double>& F,
                    std::vector<std::uint8_t>& valid) {
  const size_t npts = static_cast<size_t>(grid.nx) * static_cast<size_t>(grid.ny);
  F.assign(npts, 0.0);
  valid.assign(npts, 0);

  // X, Y, Z getters per triple; the shear triples use Y = n_pm x xi2.
  auto getX = [&grid, triple](int layer, int i, int j, const Vec3&, Vec3& out) {
    const size_t k = grid.idx(i, j);
    const GridPoint& p = grid.layers[static_cast<size_t>(layer)][k];
    if (!p.usable()) return false;
    switch (triple) {
      case FrobeniusTriple::StrainZ3: out = p.frame.xi1; break;
      case FrobeniusTriple::StretchZ1:
      case FrobeniusTriple::ShearPlus:
      case FrobeniusTriple::ShearMinus: out = p.frame.xi2; break;
    }
    return true;
  };
  auto getY = [&grid, triple](int layer, int i, int j, const Vec3& ref, Vec3& out) {
    const size_t k = grid.idx(i, j);
    const GridPoint& p = grid.layers[static_cast<size_t>(layer)][k];
    if (!p.usable()) return false;
    switch (triple) {
      case FrobeniusTriple::StrainZ3: out = p.frame.xi2; break;
      case FrobeniusTriple::StretchZ1: out = p.frame.xi3; break;
      case FrobeniusTriple::ShearPlus:
      case FrobeniusTriple::ShearMinus: {
        const Vec3 a = cross(p.n_plus, p.frame.xi2);
        const Vec3 b = cross(p.n_minus, p.frame.xi2);
        const Vec3 own = triple == FrobeniusTriple::ShearPlus ? a : b;
        if (norm(ref) == 0.0) out = own;
        else out = std::fabs(dot(a, ref)) >= std::fabs(dot(b, ref)) ? a : b;
        break;
      }
    }
    return true;
  };
  auto getZ = [&grid, triple](int i, int j, Vec3& out) {
    const size_t k = grid.idx(i, j);
    const GridPoint& p = grid.layers[1][k];
    if (!p.usable()) return false;
    switch (triple) {
      case FrobeniusTriple::StrainZ3: out = p.frame.xi3; break;
      case FrobeniusTriple::StretchZ1: out = p.frame.xi1; break;
      case FrobeniusTriple::ShearPlus: out = p.n_plus; break;
      case FrobeniusTriple::ShearMinus: out = p.n_minus; break;
    }
    return true;
  };

  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const size_t k = grid.idx(i, j);
      Vec3 X, Y, Z;
      const Vec3 zero{};
      if (!getX(1, i, j, zero, X) || !getY(1, i, j, zero, Y) || !getZ(i, j, Z)) continue;
      Mat3 JX, JY;
      if (!field_jacobian(grid, getX, i, j, X, JX)) continue;
      if (!field_jacobian(grid, getY, i, j, Y, JY)) continue;
      F[k] = dot(JX * Y - JY * X, Z);
      valid[k] = 1;
    }
  }
}

void fill_helicity_fields(DeformationGrid& grid) {
  std::vector<std::uint8_t> v1, v3, vp, vm;
  helicity_grid(grid, DirField::Xi1, grid.H_xi1, v1);
  helicity_grid(grid, DirField::Xi3, grid.H_xi3, v3);
  helicity_grid(grid, DirField::NPlus, grid.H_nplus, vp);
  helicity_grid(grid, DirField::NMinus, grid.H_nminus, vm);
  const size_t npts = static_cast<size_t>(grid.nx) * static_cast<size_t>(grid.ny);
  grid.H_valid.assign(npts, 0);
  for (size_t k = 0; k < npts; ++k)
    grid.H_valid[k] = static_cast<std::uint8_t>(v1[k] && v3[k] && vp[k] && vm[k]);
}

}  // namespace lcs
