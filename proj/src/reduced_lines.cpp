#include "lcs/reduced_lines.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "lcs/parallel.hpp"

namespace lcs {

std::string to_string(LineKind k) {
  switch (k) {
    case LineKind::Strain: return "strain";
    case LineKind::Stretch: return "stretch";
    case LineKind::ShearPlus: return "shear+";
    default: return "shear-";
  }
}

LineConfig LineConfig::resolved(double width) const {
  LineConfig c = *this;
  if (c.step <= 0.0) c.step = 1e-3 * width;
  if (c.max_arclength <= 0.0) c.max_arclength = 4.0 * width;
  if (c.window <= 0.0) c.window = 20.0 * c.step;
  if (c.closure_tol <= 0.0) c.closure_tol = 2.0 * c.step;
  if (c.d0 <= 0.0) c.d0 = 10.0 * c.step;
  return c;
}

double ReducedLine::arclength() const {
  double s = 0.0;
  for (size_t i = 1; i < vertices.size(); ++i) s += norm(vertices[i] - vertices[i - 1]);
  return s;
}

Vec3 ReducedLine::centroid() const {
  Vec3 c;
  if (vertices.empty()) return c;
  for (const Vec3& v : vertices) c += v;
  return c / static_cast<double>(vertices.size());
}

namespace {

Vec3 align_to(const Vec3& v, const Vec3& ref) { return dot(v, ref) < 0.0 ? -v : v; }

struct Cell {
  int i, j;
  double fx, fy;
};

bool locate(const DeformationGrid& g, const Vec3& p, Cell& c) {
  const double u = (p.x - g.x0) / g.dx;
  const double v = (p.y - g.y0) / g.dy;
  if (u < 0.0 || v < 0.0 || u > g.nx - 1 || v > g.ny - 1) return false;
  c.i = std::min(static_cast<int>(u), g.nx - 2);
  c.j = std::min(static_cast<int>(v), g.ny - 2);
  c.fx = u - c.i;
  c.fy = v - c.j;
  return true;
}

// Bilinear blend of a direction field; corner vectors are sign-aligned to the
// 00 corner before blending. Shear corners additionally resolve the branch:
// across a residual seam of the grid sign sweep the stored n_plus and n_minus
// labels exchange, so each corner contributes whichever branch continues the
// reference vector. Throws on masked corners.
Vec3 interp_direction(const DeformationGrid& g, DirField f, const Cell& c) {
  const size_t k00 = g.idx(c.i, c.j), k10 = g.idx(c.i + 1, c.j);
  const size_t k01 = g.idx(c.i, c.j + 1), k11 = g.idx(c.i + 1, c.j + 1);
  for (size_t k : {k00, k10, k01, k11})
    if (!g.layers[1][k].usable()) throw std::domain_error("reduced_vector: masked neighborhood");
  const bool shear = f == DirField::NPlus || f == DirField::NMinus;
  const Vec3 ref = g.direction(f, 1, k00);
  auto corner = [&g, f, shear, &ref](size_t k) {
    if (shear) {
      const GridPoint& p = g.layers[1][k];
      const Vec3& v =
          std::fabs(dot(p.n_plus, ref)) >= std::fabs(dot(p.n_minus, ref)) ? p.n_plus : p.n_minus;
      return align_to(v, ref);
    }
    return align_to(g.direction(f, 1, k), ref);
  };
  const Vec3 v00 = ref;
  const Vec3 v10 = corner(k10);
  const Vec3 v01 = corner(k01);
  const Vec3 v11 = corner(k11);
  return (1 - c.fx) * (1 - c.fy) * v00 + c.fx * (1 - c.fy) * v10 + (1 - c.fx) * c.fy * v01 +
         c.fx * c.fy * v11;
}

double interp_helicity(const DeformationGrid& g, DirField f, const Cell& c) {
  const size_t k00 = g.idx(c.i, c.j), k10 = g.idx(c.i + 1, c.j);
  const size_t k01 = g.idx(c.i, c.j + 1), k11 = g.idx(c.i + 1, c.j + 1);
  for (size_t k : {k00, k10, k01, k11})
    if (!g.H_valid[k]) throw std::domain_error("helicity: masked neighborhood");
  return (1 - c.fx) * (1 - c.fy) * g.helicity(f, k00) + c.fx * (1 - c.fy) * g.helicity(f, k10) +
         (1 - c.fx) * c.fy * g.helicity(f, k01) + c.fx * c.fy * g.helicity(f, k11);
}

DirField base_field(LineKind kind) {
  switch (kind) {
    case LineKind::Strain: return DirField::Xi3;
    case LineKind::Stretch: return DirField::Xi1;
    case LineKind::ShearPlus: return DirField::NPlus;
    default: return DirField::NMinus;
  }
}

struct Candidate {
  Vec3 u;    // unit in-plane tangent
  double H;  // helicity of the field the candidate came from
};

// All sign-resolved tangent candidates at a point: two for strain/stretch,
// four for shear (the sign ambiguity of xi1 and xi3 entering n_pm yields
// exactly +-n_plus and +-n_minus).
std::vector<Candidate> tangent_candidates(const DeformationGrid& g, LineKind kind,
                                          const Vec3& p) {
  Cell c;
  if (!locate(g, p, c)) throw std::domain_error("reduced_vector: point outside grid");
  const Vec3 n_pi = g.plane_normal();
  std::vector<Candidate> out;
  auto add_pair = [&out, &n_pi](const Vec3& v, double H) {
    const Vec3 u = cross(n_pi, v);
    const double m = norm(u);
    if (m < 1e-12) return;
    out.push_back({u / m, H});
    out.push_back({(u / m) * -1.0, H});
  };
  if (kind == LineKind::Strain || kind == LineKind::Stretch) {
    const DirField f = base_field(kind);
    add_pair(interp_direction(g, f, c), interp_helicity(g, f, c));
  } else {
    add_pair(interp_direction(g, DirField::NPlus, c), interp_helicity(g, DirField::NPlus, c));
    add_pair(interp_direction(g, DirField::NMinus, c), interp_helicity(g, DirField::NMinus, c));
  }
  if (out.empty()) throw std::domain_error("reduced_vector: degenerate point");
  return out;
}

// Candidate with maximal dot product against the previous direction.
// Equal dot products (measure zero) resolve to the lowest candidate index.
Candidate match_direction(const std::vector<Candidate>& cands, const Vec3& prev) {
  const Candidate* best = &cands[0];
  double best_dot = dot(cands[0].u, prev);
  for (size_t i = 1; i < cands.size(); ++i) {
    const double d = dot(cands[i].u, prev);
    if (d > best_dot) {
      best_dot = d;
      best = &cands[i];
    }
  }
  return *best;
}

}  // namespace

Vec3 reduced_vector(LineKind kind, const Vec3& point, const DeformationGrid& grid) {
  Cell c;
  if (!locate(grid, point, c)) throw std::domain_error("reduced_vector: point outside grid");
  const DirField f = base_field(kind);
  const Vec3 v = interp_direction(grid, f, c);
  const Vec3 u = cross(grid.plane_normal(), v);
  if (norm(u) < 1e-12) throw std::domain_error("reduced_vector: degenerate point");
  return u;
}

std::vector<Vec3> seed_filter(const DeformationGrid& grid, int seeds_x, int seeds_y, double eps0,
                              LineKind kind) {
  std::vector<Vec3> seeds;
  const DirField f = base_field(kind);
  const double w = (grid.nx - 1) * grid.dx;
  const double h = (grid.ny - 1) * grid.dy;
  for (int j = 0; j < seeds_y; ++j) {
    for (int i = 0; i < seeds_x; ++i) {
      const Vec3 p{grid.x0 + (seeds_x == 1 ? 0.5 * w : i * w / (seeds_x - 1)),
                   grid.y0 + (seeds_y == 1 ? 0.5 * h : j * h / (seeds_y - 1)), grid.s1};
      Cell c;
      if (!locate(grid, p, c)) continue;
      try {
        if (std::fabs(interp_helicity(grid, f, c)) < eps0) seeds.push_back(p);
      } catch (const std::domain_error&) {
        // masked seed cell
      }
    }
  }
  return seeds;
}

namespace {

struct Branch {
  std::vector<Vec3> vertices;
  std::vector<double> helicity;
  Termination termination = Termination::MaxLength;
  bool closed_at_seed = false;
};

Branch integrate_branch(const DeformationGrid& g, const Vec3& seed, const Vec3& dir0,
                        double seed_H, LineKind kind, const LineConfig& c) {
  Branch b;
  b.vertices.push_back(seed);
  b.helicity.push_back(seed_H);

  Vec3 p = seed;
  Vec3 dir = dir0;
  const double h = c.step;
  double arclen = 0.0;
  double turning = 0.0;
  std::deque<double> window;  // |H| per step, each weighted by one step
  double window_sum = std::fabs(seed_H);
  window.push_back(window_sum);
  const size_t window_steps = std::max<size_t>(1, static_cast<size_t>(std::lround(c.window / h)));

  auto oriented = [&g, kind](const Vec3& q, const Vec3& ref) {
    return match_direction(tangent_candidates(g, kind, q), ref);
  };

  while (arclen < c.max_arclength) {
    Candidate k1, k2, k3, k4;
    try {
      k1 = oriented(p, dir);
      k2 = oriented(p + 0.5 * h * k1.u, k1.u);
      k3 = oriented(p + 0.5 * h * k2.u, k2.u);
      k4 = oriented(p + h * k3.u, k3.u);
    } catch (const std::domain_error&) {
      b.termination =
          b.vertices.size() == 1 ? Termination::DegenerateSeed : Termination::LeftDomain;
      break;
    }
    const Vec3 step = (h / 6.0) * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u);
    const Vec3 pn = p + step;
    if (!g.in_plane(pn)) {
      b.termination = Termination::LeftDomain;
      break;
    }

    Candidate at_new;
    try {
      at_new = oriented(pn, normalized(step));
    } catch (const std::domain_error&) {
      b.termination = Termination::LeftDomain;
      break;
    }

    const Vec3 new_dir = normalized(step);
    turning += std::atan2(cross(dir, new_dir).z, dot(dir, new_dir));
    p = pn;
    dir = new_dir;
    arclen += norm(step);
    b.vertices.push_back(p);
    b.helicity.push_back(at_new.H);

    window.push_back(std::fabs(at_new.H));
    window_sum += window.back();
    while (window.size() > window_steps) {
      window_sum -= window.front();
      window.pop_front();
    }
    if (window_sum / static_cast<double>(window.size()) > c.eps0) {
      b.termination = Termination::HelicityExceeded;
      break;
    }
    if (std::fabs(turning) >= c.min_winding && norm(p - seed) <= c.closure_tol) {
      b.termination = Termination::Closed;
      b.closed_at_seed = true;
      break;
    }
  }
  return b;
}

}  // namespace

ReducedLine integrate_line(const DeformationGrid& grid, const Vec3& seed, LineKind kind,
                           const LineConfig& cfg) {
  const double width = std::max((grid.nx - 1) * grid.dx, (grid.ny - 1) * grid.dy);
  const LineConfig c = cfg.resolved(width);

  ReducedLine line;
  line.kind = kind;
  line.s1 = grid.s1;

  std::vector<Candidate> cands;
  try {
    cands = tangent_candidates(grid, kind, seed);
  } catch (const std::domain_error&) {
    line.termination = Termination::DegenerateSeed;
    return line;
  }
  const Candidate c0 = cands[0];

  const Branch fwd = integrate_branch(grid, seed, c0.u, c0.H, kind, c);
  if (fwd.closed_at_seed) {
    line.vertices = fwd.vertices;
    line.helicity = fwd.helicity;
    line.vertices.push_back(line.vertices.front());  // snap closed
    line.helicity.push_back(line.helicity.front());
    line.closed = true;
    line.termination = Termination::Closed;
    return line;
  }

  const Branch bwd = integrate_branch(grid, seed, -1.0 * c0.u, c0.H, kind, c);
  line.vertices.reserve(fwd.vertices.size() + bwd.vertices.size());
  for (size_t i = bwd.vertices.size(); i-- > 1;) {
    line.vertices.push_back(bwd.vertices[i]);
    line.helicity.push_back(bwd.helicity[i]);
  }
  line.vertices.insert(line.vertices.end(), fwd.vertices.begin(), fwd.vertices.end());
  line.helicity.insert(line.helicity.end(), fwd.helicity.begin(), fwd.helicity.end());
  line.termination = fwd.termination;
  if (line.vertices.size() == 1 && fwd.termination == Termination::DegenerateSeed) {
    line.vertices.clear();
    line.helicity.clear();
    return line;
  }

  detect_closed(line, c);
  return line;
}

namespace {

// Spatial hash over polyline vertices for near-linear min-distance queries.
class PointGrid {
 public:
  PointGrid(const std::vector<Vec3>& pts, double cell) : pts_(pts), cell_(cell) {
    for (size_t i = 0; i < pts.size(); ++i) {
      const Vec3& p = pts[i];
      lo_[0] = std::min(lo_[0], coord(p.x)); hi_[0] = std::max(hi_[0], coord(p.x));
      lo_[1] = std::min(lo_[1], coord(p.y)); hi_[1] = std::max(hi_[1], coord(p.y));
      lo_[2] = std::min(lo_[2], coord(p.z)); hi_[2] = std::max(hi_[2], coord(p.z));
      cells_[key(p)].push_back(static_cast<int>(i));
    }
  }

  // Exact min distance; once the result is provably above `cutoff` the ring
  // expansion stops and any value > cutoff may be returned.
  double min_dist(const Vec3& q, double cutoff = std::numeric_limits<double>::infinity()) const {
    const long qc[3] = {coord(q.x), coord(q.y), coord(q.z)};
    long rmax = 0;
    for (int a = 0; a < 3; ++a)
      rmax = std::max({rmax, std::labs(qc[a] - lo_[a]), std::labs(qc[a] - hi_[a])});
    double best = std::numeric_limits<double>::infinity();
    for (long r = 0; r <= rmax; ++r) {
      const double ring_floor = (static_cast<double>(r) - 1.0) * cell_;
      if (best < ring_floor) break;
      if (ring_floor > cutoff && best > cutoff) return best;
      scan_ring(qc[0], qc[1], qc[2], r, q, best);
    }
    return best;
  }

 private:
  long coord(double v) const { return static_cast<long>(std::floor(v / cell_)); }
  long long key(const Vec3& p) const {
    const long long x = coord(p.x) + (1LL << 20), y = coord(p.y) + (1LL << 20),
                    z = coord(p.z) + (1LL << 20);
    return (x << 42) ^ (y << 21) ^ z;
  }
  long long key3(long x, long y, long z) const {
    return ((x + (1LL << 20)) << 42) ^ ((y + (1LL << 20)) << 21) ^ (z + (1LL << 20));
  }

  void visit_cell(long x, long y, long z, const Vec3& q, double& best) const {
    const auto it = cells_.find(key3(x, y, z));
    if (it == cells_.end()) return;
    for (int i : it->second) best = std::min(best, norm(pts_[static_cast<size_t>(i)] - q));
  }

  // Chebyshev shell of radius r around the query cell, O(r^2) cells.
  void scan_ring(long qx, long qy, long qz, long r, const Vec3& q, double& best) const {
    if (r == 0) {
      visit_cell(qx, qy, qz, q, best);
      return;
    }
    for (long dx = -r; dx <= r; ++dx) {
      for (long dy = -r; dy <= r; ++dy) {
        if (std::labs(dx) == r || std::labs(dy) == r) {
          for (long dz = -r; dz <= r; ++dz) visit_cell(qx + dx, qy + dy, qz + dz, q, best);
        } else {
          visit_cell(qx + dx, qy + dy, qz - r, q, best);
          visit_cell(qx + dx, qy + dy, qz + r, q, best);
        }
      }
    }
  }

  const std::vector<Vec3>& pts_;
  double cell_;
  std::unordered_map<long long, std::vector<int>> cells_;
  long lo_[3] = {1L << 30, 1L << 30, 1L << 30};
  long hi_[3] = {-(1L << 30), -(1L << 30), -(1L << 30)};
};

double directed_max_min(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  if (a.size() * b.size() <= 250000) {
    double dmax = 0.0;
    for (const Vec3& p : a) {
      double dmin = std::numeric_limits<double>::infinity();
      for (const Vec3& q : b) dmin = std::min(dmin, norm(p - q));
      dmax = std::max(dmax, dmin);
    }
    return dmax;
  }
  // Cell size on the order of typical separation keeps ring searches short.
  double ext = 0.0;
  for (const Vec3& q : b) ext = std::max({ext, std::fabs(q.x), std::fabs(q.y), std::fabs(q.z)});
  const PointGrid pg(b, std::max(ext / 128.0, 1e-9));
  double dmax = 0.0;
  for (const Vec3& p : a) dmax = std::max(dmax, pg.min_dist(p));
  return dmax;
}

}  // namespace

double hausdorff_distance(const ReducedLine& a, const ReducedLine& b, bool max_form) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("hausdorff_distance: empty line");
  const double dab = directed_max_min(a.vertices, b.vertices);
  const double dba = directed_max_min(b.vertices, a.vertices);
  return max_form ? std::max(dab, dba) : dab + dba;
}

std::vector<ReducedLine> dedup_lines(std::vector<ReducedLine> lines, double d0, bool max_form) {
  std::erase_if(lines, [](const ReducedLine& l) { return l.empty(); });
  std::sort(lines.begin(), lines.end(), [](const ReducedLine& a, const ReducedLine& b) {
    const double la = a.arclength(), lb = b.arclength();
    if (la != lb) return la > lb;
    const Vec3 ca = a.vertices.front(), cb = b.vertices.front();  // position tiebreak
    if (ca.x != cb.x) return ca.x < cb.x;
    if (ca.y != cb.y) return ca.y < cb.y;
    return ca.z < cb.z;
  });
  // Cell size tied to the vertex spacing keeps per-cell occupancy small.
  auto cell_for = [](const std::vector<Vec3>& pts) {
    double len = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) len += norm(pts[i + 1] - pts[i]);
    const double mean = pts.size() > 1 ? len / static_cast<double>(pts.size() - 1) : 1.0;
    return std::max(8.0 * mean, 1e-9);
  };
  // Directed max-min that gives up (returning the running max) once the
  // caller's threshold question is already answered.
  auto directed_cutoff = [](const std::vector<Vec3>& a, const PointGrid& pg, double cutoff) {
    double dmax = 0.0;
    for (const Vec3& p : a) {
      dmax = std::max(dmax, pg.min_dist(p, cutoff));
      if (dmax > cutoff) return dmax;
    }
    return dmax;
  };

  std::vector<ReducedLine> kept;
  kept.reserve(lines.size());  // no reallocation: grids reference kept vertices
  std::vector<PointGrid> grids;
  grids.reserve(lines.size());
  for (auto& line : lines) {
    bool ok = true;
    for (size_t k = 0; k < kept.size(); ++k) {
      const double dab = directed_cutoff(line.vertices, grids[k], d0);
      if (dab > d0) continue;
      const PointGrid la(line.vertices, cell_for(line.vertices));
      const double dba =
          directed_cutoff(kept[k].vertices, la, max_form ? d0 : d0 - dab);
      const double dist = max_form ? std::max(dab, dba) : dab + dba;
      if (dist <= d0) {
        ok = false;
        break;
      }
    }
    if (ok) {
      kept.push_back(std::move(line));
      grids.emplace_back(kept.back().vertices, cell_for(kept.back().vertices));
    }
  }
  return kept;
}

bool detect_closed(ReducedLine& line, const LineConfig& cfg) {
  const size_t n = line.vertices.size();
  if (n < 10) return false;
  const LineConfig c = cfg.step > 0.0 ? cfg : cfg.resolved(1.0);

  // Cumulative signed turning at each vertex.
  std::vector<double> turn(n, 0.0);
  for (size_t k = 1; k + 1 < n; ++k) {
    const Vec3 d0 = line.vertices[k] - line.vertices[k - 1];
    const Vec3 d1 = line.vertices[k + 1] - line.vertices[k];
    turn[k + 1] = turn[k] + std::atan2(cross(d0, d1).z, dot(d0, d1));
  }

  // Spatial hash so the first-return scan stays near linear.
  const double cell = std::max(c.closure_tol, 1e-12);
  std::unordered_map<long long, std::vector<size_t>> buckets;
  auto key = [cell](const Vec3& p) {
    const long long x = static_cast<long long>(std::floor(p.x / cell)) + (1LL << 20);
    const long long y = static_cast<long long>(std::floor(p.y / cell)) + (1LL << 20);
    return (x << 21) ^ y;
  };
  auto cell_of = [cell](double v) { return static_cast<long long>(std::floor(v / cell)); };

  for (size_t j = 0; j < n; ++j) {
    if (j >= 10) {
      const long long cx = cell_of(line.vertices[j].x), cy = cell_of(line.vertices[j].y);
      for (long long dx = -1; dx <= 1; ++dx) {
        for (long long dy = -1; dy <= 1; ++dy) {
          const long long k = ((cx + dx + (1LL << 20)) << 21) ^ (cy + dy + (1LL << 20));
          const auto it = buckets.find(k);
          if (it == buckets.end()) continue;
          for (size_t i : it->second) {
            if (i + 10 > j) continue;
            if (std::fabs(turn[j] - turn[i]) < c.min_winding) continue;
            if (norm(line.vertices[j] - line.vertices[i]) > c.closure_tol) continue;
            // Trim to one period, snap the endpoint to the start.
            std::vector<Vec3> v(line.vertices.begin() + static_cast<long>(i),
                                line.vertices.begin() + static_cast<long>(j) + 1);
            std::vector<double> h(line.helicity.begin() + static_cast<long>(i),
                                  line.helicity.begin() + static_cast<long>(j) + 1);
            v.back() = v.front();
            line.vertices = std::move(v);
            line.helicity = std::move(h);
            line.closed = true;
            line.termination = Termination::Closed;
            return true;
          }
        }
      }
    }
    buckets[key(line.vertices[j])].push_back(j);
  }
  return false;
}

std::vector<ReducedLine> extract_lines(const DeformationGrid& grid, LineKind kind, int seeds_x,
                                       int seeds_y, const LineConfig& cfg, int workers) {
  const double width = std::max((grid.nx - 1) * grid.dx, (grid.ny - 1) * grid.dy);
  const LineConfig c = cfg.resolved(width);
  const std::vector<Vec3> seeds = seed_filter(grid, seeds_x, seeds_y, c.eps0, kind);
  std::vector<ReducedLine> lines(seeds.size());
  parallel_for(seeds.size(), workers,
               [&](size_t i) { lines[i] = integrate_line(grid, seeds[i], kind, c); });
  return dedup_lines(std::move(lines), c.d0, c.hausdorff_max_form);
}

void save_lines_csv(const std::vector<ReducedLine>& lines, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("lines: cannot open " + path);
  out << "s1,kind,line_index,vertex_index,x,y,z,helicity,closed\n";
  out.precision(17);
  for (size_t li = 0; li < lines.size(); ++li) {
    const ReducedLine& l = lines[li];
    for (size_t i = 0; i < l.vertices.size(); ++i) {
      out << l.s1 << "," << to_string(l.kind) << "," << li << "," << i << ","
          << l.vertices[i].x << "," << l.vertices[i].y << "," << l.vertices[i].z << ","
          << l.helicity[i] << "," << (l.closed ? 1 : 0) << "\n";
    }
  }
}

std::vector<ReducedLine> load_lines_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("lines: cannot open " + path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<ReducedLine> lines;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string tok;
    std::vector<std::string> f;
    while (std::getline(ss, tok, ',')) f.push_back(tok);
    if (f.size() != 9) throw std::runtime_error("lines: malformed row in " + path);
    const size_t li = std::stoul(f[2]);
    if (lines.size() <= li) lines.resize(li + 1);
    ReducedLine& l = lines[li];
    l.s1 = std::stod(f[0]);
    if (f[1] == "strain") l.kind = LineKind::Strain;
    else if (f[1] == "stretch") l.kind = LineKind::Stretch;
    else if (f[1] == "shear+") l.kind = LineKind::ShearPlus;
    else l.kind = LineKind::ShearMinus;
    l.vertices.push_back({std::stod(f[4]), std::stod(f[5]), std::stod(f[6])});
    l.helicity.push_back(std::stod(f[7]));
    l.closed = f[8] == "1";
    l.termination = l.closed ? Termination::Closed : Termination::HelicityExceeded;
  }
  return lines;
}

}  // namespace lcs
