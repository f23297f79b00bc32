#include "lcs/barriers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lcs/parallel.hpp"

namespace lcs {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> cumulative_arclength(const std::vector<Vec3>& pts, bool closed) {
  std::vector<double> s(pts.size() + (closed ? 1 : 0), 0.0);
  for (size_t i = 1; i < pts.size(); ++i) s[i] = s[i - 1] + norm(pts[i] - pts[i - 1]);
  if (closed) s.back() = s[pts.size() - 1] + norm(pts.front() - pts.back());
  return s;
}

// Arclength-uniform resampling. Closed curves get M samples over the wrapped
// perimeter (no duplicated endpoint); open curves keep both endpoints.
std::vector<Vec3> resample(const std::vector<Vec3>& pts, bool closed, int M) {
  if (pts.size() < 2) throw std::invalid_argument("resample: need at least 2 vertices");
  if (M < 3) throw std::invalid_argument("resample: need at least 3 samples");
  auto s = cumulative_arclength(pts, closed);
  const double total = s.back();
  if (!(total > 0.0)) throw std::invalid_argument("resample: zero-length curve");
  std::vector<Vec3> out(static_cast<size_t>(M));
  size_t seg = 0;
  const size_t nseg = s.size() - 1;
  for (int k = 0; k < M; ++k) {
    double target = closed ? total * k / M : total * k / (M - 1);
    while (seg + 1 < nseg && s[seg + 1] < target) ++seg;
    const double len = s[seg + 1] - s[seg];
    const double u = len > 0.0 ? (target - s[seg]) / len : 0.0;
    const Vec3& a = pts[seg];
    const Vec3& b = pts[(seg + 1) % pts.size()];
    out[static_cast<size_t>(k)] = a + (b - a) * u;
  }
  return out;
}

double ring_mismatch(const std::vector<Vec3>& prev, const std::vector<Vec3>& cur) {
  double sum = 0.0;
  for (size_t i = 0; i < prev.size(); ++i) {
    const Vec3 d = cur[i] - prev[i];
    sum += dot(d, d);
  }
  return sum;
}

// Cyclic shift (closed) or orientation flip (both) minimizing the summed
// squared distance to the previous ring, so the seam does not spiral.
std::vector<Vec3> align_ring(const std::vector<Vec3>& prev, std::vector<Vec3> cur, bool closed) {
  const size_t M = cur.size();
  std::vector<Vec3> best = cur;
  double best_cost = ring_mismatch(prev, cur);
  auto consider = [&](const std::vector<Vec3>& cand) {
    const double c = ring_mismatch(prev, cand);
    if (c < best_cost) {
      best_cost = c;
      best = cand;
    }
  };
  if (closed) {
    std::vector<Vec3> rev(cur.rbegin(), cur.rend());
    std::vector<Vec3> shifted(M);
    for (size_t off = 0; off < M; ++off) {
      for (size_t i = 0; i < M; ++i) shifted[i] = cur[(i + off) % M];
      consider(shifted);
      for (size_t i = 0; i < M; ++i) shifted[i] = rev[(i + off) % M];
      consider(shifted);
    }
  } else {
    consider(std::vector<Vec3>(cur.rbegin(), cur.rend()));
  }
  return best;
}

Vec3 polyline_centroid(const std::vector<Vec3>& pts) {
  Vec3 c{0, 0, 0};
  for (const auto& p : pts) c = c + p;
  return c * (1.0 / static_cast<double>(pts.size()));
}

double mean_radius(const std::vector<Vec3>& pts) {
  const Vec3 c = polyline_centroid(pts);
  double r = 0.0;
  for (const auto& p : pts) r += norm(p - c);
  return r / static_cast<double>(pts.size());
}

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 0.5 * norm(cross(b - a, c - a));
}

}  // namespace

PlaneFamily uniform_planes(double lo, double hi, int count) {
  if (count < 1) throw std::invalid_argument("uniform_planes: count < 1");
  PlaneFamily f;
  f.s1.resize(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i)
    f.s1[static_cast<size_t>(i)] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
  return f;
}

std::vector<PlaneLines> sweep_planes(const VelocityField& field, const PlaneFamily& family,
                                     LineKind kind, const SweepConfig& cfg, double t0, double T) {
  std::vector<PlaneLines> out(family.s1.size());
  for (size_t i = 0; i < family.s1.size(); ++i) {
    PlaneLines& pl = out[i];
    pl.s1 = family.s1[i];
    try {
      PlaneConfig pc = cfg.plane;
      pc.workers = cfg.workers;
      DeformationGrid grid = sample_plane(field, pl.s1, cfg.nx, cfg.ny, t0, T, cfg.integ, pc);
      fill_helicity_fields(grid);
      LineConfig lc = cfg.line;
      pl.lines = extract_lines(grid, kind, cfg.seeds_x, cfg.seeds_y, lc, cfg.workers);
      pl.ok = true;
    } catch (const std::exception& e) {
      pl.ok = false;
      pl.error = e.what();
    }
  }
  return out;
}

std::vector<CurveChain> match_closed_curves(const std::vector<std::vector<ReducedLine>>& per_plane,
                                            double jump_factor, bool require_closed) {
  std::vector<CurveChain> chains;
  if (per_plane.empty()) return chains;

  // Deterministic candidate ordering regardless of input listing order.
  auto sorted_closed = [require_closed](const std::vector<ReducedLine>& lines) {
    std::vector<const ReducedLine*> out;
    for (const auto& l : lines)
      if ((l.closed || !require_closed) && l.vertices.size() >= 3) out.push_back(&l);
    std::sort(out.begin(), out.end(), [](const ReducedLine* a, const ReducedLine* b) {
      const Vec3 ca = a->centroid(), cb = b->centroid();
      if (ca.x != cb.x) return ca.x < cb.x;
      if (ca.y != cb.y) return ca.y < cb.y;
      return a->vertices.size() < b->vertices.size();
    });
    return out;
  };

  std::vector<std::vector<const ReducedLine*>> planes;
  planes.reserve(per_plane.size());
  for (const auto& pl : per_plane) planes.push_back(sorted_closed(pl));

  std::vector<std::vector<bool>> used(planes.size());
  for (size_t p = 0; p < planes.size(); ++p) used[p].assign(planes[p].size(), false);

  for (size_t start = 0; start < planes.size(); ++start) {
    for (size_t i0 = 0; i0 < planes[start].size(); ++i0) {
      if (used[start][i0]) continue;
      used[start][i0] = true;
      CurveChain chain{*planes[start][i0]};
      for (size_t p = start + 1; p < planes.size(); ++p) {
        const ReducedLine& tail = chain.back();
        const Vec3 tail_c = tail.centroid();
        const double limit = jump_factor * mean_radius(tail.vertices);
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (size_t j = 0; j < planes[p].size(); ++j) {
          if (used[p][j]) continue;
          // In-plane distance: the curves live on different z planes.
          const Vec3 dc = planes[p][j]->centroid() - tail_c;
          const double d = std::hypot(dc.x, dc.y);
          if (d < best_d - 1e-14) {
            best_d = d;
            best = static_cast<int>(j);
          } else if (best >= 0 && std::fabs(d - best_d) <= 1e-14) {
            if (hausdorff_distance(tail, *planes[p][static_cast<size_t>(j)]) <
                hausdorff_distance(tail, *planes[p][static_cast<size_t>(best)]))
              best = static_cast<int>(j);
          }
        }
        if (best < 0 || best_d > limit) break;
        used[p][static_cast<size_t>(best)] = true;
        chain.push_back(*planes[p][static_cast<size_t>(best)]);
      }
      chains.push_back(std::move(chain));
    }
  }
  return chains;
}

BarrierSurface build_surface(const CurveChain& chain, int resample_count) {
  if (chain.size() < 2) throw std::invalid_argument("build_surface: need at least 2 curves");
  const bool closed = chain.front().closed;
  for (const auto& c : chain)
    if (c.closed != closed)
      throw std::invalid_argument("build_surface: mixed open/closed curves in chain");

  BarrierSurface s;
  s.kind = chain.front().kind;
  s.closed = closed;
  s.curve_count = static_cast<int>(chain.size());
  s.ring_size = resample_count;
  const int M = resample_count;

  std::vector<Vec3> prev;
  for (const auto& c : chain) {
    std::vector<Vec3> ring = resample(c.vertices, closed, M);
    if (!prev.empty()) ring = align_ring(prev, std::move(ring), closed);
    s.s1_values.push_back(c.s1);
    s.vertices.insert(s.vertices.end(), ring.begin(), ring.end());
    prev = std::move(ring);
  }

  const int bands = s.curve_count - 1;
  const int cols = closed ? M : M - 1;
  s.faces.reserve(static_cast<size_t>(bands) * static_cast<size_t>(cols) * 2);
  for (int c = 0; c < bands; ++c) {
    for (int k = 0; k < cols; ++k) {
      const int kn = (k + 1) % M;
      const int a = static_cast<int>(s.vertex_index(c, k));
      const int b = static_cast<int>(s.vertex_index(c, kn));
      const int d = static_cast<int>(s.vertex_index(c + 1, k));
      const int e = static_cast<int>(s.vertex_index(c + 1, kn));
      s.faces.push_back({a, b, e});
      s.faces.push_back({a, e, d});
    }
  }
  s.lambda1.assign(s.vertices.size(), kNaN);
  s.lambda2.assign(s.vertices.size(), kNaN);
  s.lambda3.assign(s.vertices.size(), kNaN);
  s.detF.assign(s.vertices.size(), kNaN);
  s.helicity.assign(s.vertices.size(), kNaN);
  return s;
}

namespace {

struct BilinearCell {
  int i = 0, j = 0;
  double fx = 0.0, fy = 0.0;
  bool ok = false;
};

BilinearCell locate(const DeformationGrid& g, const Vec3& p) {
  BilinearCell c;
  const double gx = (p.x - g.x0) / g.dx;
  const double gy = (p.y - g.y0) / g.dy;
  if (gx < 0.0 || gy < 0.0 || gx > g.nx - 1 || gy > g.ny - 1) return c;
  c.i = std::min(static_cast<int>(gx), g.nx - 2);
  c.j = std::min(static_cast<int>(gy), g.ny - 2);
  c.fx = gx - c.i;
  c.fy = gy - c.j;
  c.ok = true;
  return c;
}

double bilinear_value(const DeformationGrid& g, const BilinearCell& c,
                      double (*get)(const GridPoint&)) {
  const size_t i00 = g.idx(c.i, c.j), i10 = g.idx(c.i + 1, c.j);
  const size_t i01 = g.idx(c.i, c.j + 1), i11 = g.idx(c.i + 1, c.j + 1);
  const auto& L = g.layers[1];
  if (!L[i00].usable() || !L[i10].usable() || !L[i01].usable() || !L[i11].usable()) return kNaN;
  const double v00 = get(L[i00]), v10 = get(L[i10]), v01 = get(L[i01]), v11 = get(L[i11]);
  return (1 - c.fx) * (1 - c.fy) * v00 + c.fx * (1 - c.fy) * v10 + (1 - c.fx) * c.fy * v01 +
         c.fx * c.fy * v11;
}

double bilinear_scalar(const DeformationGrid& g, const BilinearCell& c,
                       const std::vector<double>& field, const std::vector<uint8_t>& valid) {
  const size_t i00 = g.idx(c.i, c.j), i10 = g.idx(c.i + 1, c.j);
  const size_t i01 = g.idx(c.i, c.j + 1), i11 = g.idx(c.i + 1, c.j + 1);
  if (!valid[i00] || !valid[i10] || !valid[i01] || !valid[i11]) return kNaN;
  return (1 - c.fx) * (1 - c.fy) * field[i00] + c.fx * (1 - c.fy) * field[i10] +
         (1 - c.fx) * c.fy * field[i01] + c.fx * c.fy * field[i11];
}

}  // namespace

void sample_strain_data(BarrierSurface& surface,
                        const std::vector<const DeformationGrid*>& grids) {
  if (static_cast<int>(grids.size()) != surface.curve_count)
    throw std::invalid_argument("sample_strain_data: one grid per chain curve required");
  for (int c = 0; c < surface.curve_count; ++c) {
    const DeformationGrid& g = *grids[static_cast<size_t>(c)];
    for (int k = 0; k < surface.ring_size; ++k) {
      const size_t v = surface.vertex_index(c, k);
      const BilinearCell cell = locate(g, surface.vertices[v]);
      if (!cell.ok) continue;
      surface.lambda1[v] =
          bilinear_value(g, cell, [](const GridPoint& p) { return p.frame.lambda1; });
      surface.lambda2[v] =
          bilinear_value(g, cell, [](const GridPoint& p) { return p.frame.lambda2; });
      surface.lambda3[v] =
          bilinear_value(g, cell, [](const GridPoint& p) { return p.frame.lambda3; });
      surface.detF[v] = bilinear_value(g, cell, [](const GridPoint& p) { return p.detF; });
      const auto* H = surface.kind == LineKind::Strain    ? &g.H_xi3
                      : surface.kind == LineKind::Stretch ? &g.H_xi1
                      : surface.kind == LineKind::ShearPlus ? &g.H_nplus
                                                            : &g.H_nminus;
      if (!H->empty()) surface.helicity[v] = bilinear_scalar(g, cell, *H, g.H_valid);
    }
  }
}

namespace {

// Linear interpolation of the center curve at height z.
void center_at(const TorusEmbedding& emb, double z, double* x0, double* y0) {
  if (emb.z.size() < 2) throw std::invalid_argument("torus embedding: need >=2 center samples");
  if (z < emb.z.front() - 1e-12 || z > emb.z.back() + 1e-12)
    throw std::out_of_range("torus embedding: z outside center-curve coverage");
  auto it = std::upper_bound(emb.z.begin(), emb.z.end(), z);
  size_t hi = std::min(static_cast<size_t>(it - emb.z.begin()), emb.z.size() - 1);
  if (hi == 0) hi = 1;
  const size_t lo = hi - 1;
  const double den = emb.z[hi] - emb.z[lo];
  const double u = den > 0.0 ? std::clamp((z - emb.z[lo]) / den, 0.0, 1.0) : 0.0;
  *x0 = emb.x0[lo] + (emb.x0[hi] - emb.x0[lo]) * u;
  *y0 = emb.y0[lo] + (emb.y0[hi] - emb.y0[lo]) * u;
}

}  // namespace

Vec3 torus_embed_point(const Vec3& p, const TorusEmbedding& emb) {
  double x0, y0;
  center_at(emb, p.z, &x0, &y0);
  const double r = p.x - x0 + emb.R1;
  return Vec3{r * std::cos(p.z), r * std::sin(p.z), emb.R2 * (p.y - y0)};
}

Vec3 torus_embed_inverse(const Vec3& q, double z_original, const TorusEmbedding& emb) {
  double x0, y0;
  center_at(emb, z_original, &x0, &y0);
  const double r = std::sqrt(q.x * q.x + q.y * q.y);
  return Vec3{r - emb.R1 + x0, q.z / emb.R2 + y0, z_original};
}

BarrierSurface torus_embed(const BarrierSurface& surface, const TorusEmbedding& emb) {
  BarrierSurface out = surface;
  for (auto& v : out.vertices) v = torus_embed_point(v, emb);
  out.embedded = true;
  return out;
}

TorusEmbedding center_curve_from_advection(const VelocityField& field, const Vec3& center,
                                           double z_lo, double z_hi, int samples, double t0,
                                           const IntegratorConfig& cfg, double R1, double R2) {
  if (samples < 2) throw std::invalid_argument("center_curve_from_advection: samples < 2");
  TorusEmbedding emb;
  emb.R1 = R1;
  emb.R2 = R2;
  emb.z.resize(static_cast<size_t>(samples));
  emb.x0.resize(static_cast<size_t>(samples));
  emb.y0.resize(static_cast<size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    const double z = z_lo + (z_hi - z_lo) * k / (samples - 1);
    // The vortical center drifts with z; track it by a short advection of the
    // reference point placed at that height.
    Vec3 p{center.x, center.y, z};
    Vec3 q = advect_point(field, p, t0, t0, cfg);
    emb.z[static_cast<size_t>(k)] = z;
    emb.x0[static_cast<size_t>(k)] = q.x;
    emb.y0[static_cast<size_t>(k)] = q.y;
  }
  return emb;
}

BarrierSurface advect_surface(const VelocityField& field, const BarrierSurface& surface,
                              double t0, double t1, const IntegratorConfig& cfg, int workers) {
  BarrierSurface out = surface;
  out.t0 = t0;
  out.T = t1 - t0;
  parallel_for(out.vertices.size(), workers, [&](size_t v) {
    out.vertices[v] = advect_point(field, surface.vertices[v], t0, t1, cfg);
  });
  return out;
}

double mesh_area(const BarrierSurface& surface) {
  double area = 0.0;
  for (const auto& f : surface.faces)
    area += triangle_area(surface.vertices[static_cast<size_t>(f[0])],
                          surface.vertices[static_cast<size_t>(f[1])],
                          surface.vertices[static_cast<size_t>(f[2])]);
  return area;
}

bool mesh_is_manifold(const BarrierSurface& surface) {
  std::vector<std::pair<uint64_t, int>> edges;
  edges.reserve(surface.faces.size() * 3);
  auto key = [](int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) |
           static_cast<uint32_t>(b);
  };
  for (const auto& f : surface.faces) {
    edges.emplace_back(key(f[0], f[1]), 1);
    edges.emplace_back(key(f[1], f[2]), 1);
    edges.emplace_back(key(f[2], f[0]), 1);
  }
  std::sort(edges.begin(), edges.end());
  size_t i = 0;
  while (i < edges.size()) {
    size_t j = i;
    while (j < edges.size() && edges[j].first == edges[i].first) ++j;
    if (j - i > 2) return false;
    i = j;
  }
  return true;
}

double predicted_area(const BarrierSurface& surface, AreaKind kind) {
  auto weight = [&](size_t v) -> double {
    switch (kind) {
      case AreaKind::ShearIncompressible:
        return std::pow(surface.lambda2[v], 0.25);
      case AreaKind::ShearGeneral:
        return std::fabs(surface.detF[v]) /
               std::pow(surface.lambda1[v] * surface.lambda3[v], 0.25);
      case AreaKind::Repelling:
        return std::fabs(surface.detF[v]) / std::sqrt(surface.lambda3[v]);
      case AreaKind::Attracting:
        return std::fabs(surface.detF[v]) / std::sqrt(surface.lambda1[v]);
    }
    return kNaN;
  };
  double area = 0.0;
  for (const auto& f : surface.faces) {
    const size_t a = static_cast<size_t>(f[0]), b = static_cast<size_t>(f[1]),
                 c = static_cast<size_t>(f[2]);
    const double w = (weight(a) + weight(b) + weight(c)) / 3.0;
    if (!std::isfinite(w))
      throw std::domain_error("predicted_area: missing strain data on a face");
    area += w * triangle_area(surface.vertices[a], surface.vertices[b], surface.vertices[c]);
  }
  return area;
}

TracerExperiment tracer_experiment(const VelocityField& field, const ReducedLine& barrier,
                                   const TracerConfig& tcfg, double t0, double t1,
                                   const IntegratorConfig& cfg) {
  if (!barrier.closed || barrier.vertices.size() < 8)
    throw std::invalid_argument("tracer_experiment: barrier must be a closed curve");
  if (tcfg.checkpoints < 2) throw std::invalid_argument("tracer_experiment: checkpoints < 2");

  const Vec3 c0 = barrier.centroid();
  double max_r = 0.0;
  for (const auto& p : barrier.vertices) max_r = std::max(max_r, norm(p - c0));

  TracerExperiment exp;
  exp.tube_radius = tcfg.tube_radius_factor * max_r;

  struct Seed {
    size_t cls;
    Vec3 p;
    double dev = 0.0;
  };
  std::vector<Seed> seeds;
  for (size_t oi = 0; oi < tcfg.offsets.size(); ++oi) {
    const double off = tcfg.offsets[oi];
    TracerClassResult cls;
    cls.name = off < 0.0 ? "inside" : off > 0.0 ? "outside" : "on";
    exp.classes.push_back(cls);
    const size_t stride = barrier.vertices.size() / static_cast<size_t>(tcfg.seeds_per_class);
    for (int s = 0; s < tcfg.seeds_per_class; ++s) {
      const Vec3 p = barrier.vertices[static_cast<size_t>(s) * std::max<size_t>(stride, 1) %
                                      barrier.vertices.size()];
      seeds.push_back({oi, c0 + (p - c0) * (1.0 + off)});
    }
  }

  // The barrier tube is the material surface swept by the closed curve's
  // trajectories, sampled here as the union of curve snapshots across the
  // checkpoints. A field with a spatial z-period makes the tube z-periodic,
  // so the z offset wraps by that period.
  const double z_period = field.spatial_period() ? field.spatial_period()->z : 0.0;
  std::vector<Vec3> tube = barrier.vertices;
  std::vector<std::vector<Vec3>> swept;
  auto snapshot = [&] {
    std::vector<Vec3> s;
    s.reserve(tube.size() / 2 + 1);
    for (size_t i = 0; i < tube.size(); i += 2) s.push_back(tube[i]);
    swept.push_back(std::move(s));
  };
  auto tube_dist = [&](const Vec3& p) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& snap : swept)
      for (const auto& q : snap) {
        const double dx = p.x - q.x, dy = p.y - q.y;
        double dz = p.z - q.z;
        if (z_period > 0.0) dz = std::remainder(dz, z_period);
        best = std::min(best, dx * dx + dy * dy + dz * dz);
      }
    return std::sqrt(best);
  };
  snapshot();

  std::vector<Vec3> pts(seeds.size());
  for (size_t i = 0; i < seeds.size(); ++i) pts[i] = seeds[i].p;

  for (int ck = 1; ck <= tcfg.checkpoints; ++ck) {
    const double ta = t0 + (t1 - t0) * (ck - 1) / tcfg.checkpoints;
    const double tb = t0 + (t1 - t0) * ck / tcfg.checkpoints;
    advect_points(field, tube, ta, tb, cfg);
    advect_points(field, pts, ta, tb, cfg);
    snapshot();
    parallel_for(seeds.size(), tcfg.workers, [&](size_t i) {
      seeds[i].dev = std::max(seeds[i].dev, tube_dist(pts[i]));
    });
  }
  for (const auto& s : seeds) exp.classes[s.cls].max_deviation.push_back(s.dev);
  return exp;
}

PerturbedStrainlineResult perturbed_strainline_experiment(const VelocityField& field,
                                                          const ReducedLine& strainline,
                                                          double delta, double t0, double t1,
                                                          int time_samples,
                                                          const IntegratorConfig& cfg,
                                                          int workers) {
  if (strainline.vertices.size() < 3)
    throw std::invalid_argument("perturbed_strainline_experiment: curve too short");
  if (time_samples < 2)
    throw std::invalid_argument("perturbed_strainline_experiment: time_samples < 2");

  const auto& base = strainline.vertices;
  const size_t n = base.size();
  // In-plane normal offsets: rotate the local tangent by 90 degrees about z.
  auto offset_curve = [&](double d) {
    std::vector<Vec3> out(n);
    for (size_t i = 0; i < n; ++i) {
      const Vec3 t = (i + 1 < n ? base[i + 1] : base[i]) - (i > 0 ? base[i - 1] : base[i]);
      Vec3 nrm{-t.y, t.x, 0.0};
      const double L = norm(nrm);
      if (L < 1e-300) throw std::domain_error("perturbed strainline: degenerate tangent");
      out[i] = base[i] + nrm * (d / L);
    }
    return out;
  };

  auto sweep = [&](const std::vector<Vec3>& curve, double* drift) {
    BarrierSurface s;
    s.kind = strainline.kind;
    s.t0 = t0;
    s.T = t1 - t0;
    s.closed = false;
    s.curve_count = time_samples;
    s.ring_size = static_cast<int>(n);
    std::vector<Vec3> pts = curve;
    double dz_sum = 0.0;
    for (int k = 0; k < time_samples; ++k) {
      if (k > 0) {
        const double ta = t0 + (t1 - t0) * (k - 1) / (time_samples - 1);
        const double tb = t0 + (t1 - t0) * k / (time_samples - 1);
        parallel_for(pts.size(), workers, [&](size_t i) {
          pts[i] = advect_point(field, pts[i], ta, tb, cfg);
        });
      }
      s.s1_values.push_back(t0 + (t1 - t0) * k / (time_samples - 1));
      s.vertices.insert(s.vertices.end(), pts.begin(), pts.end());
      for (size_t i = 0; i < n; ++i) dz_sum += pts[i].z - curve[i].z;
    }
    const int M = s.ring_size;
    for (int c = 0; c + 1 < s.curve_count; ++c)
      for (int k = 0; k + 1 < M; ++k) {
        const int a = static_cast<int>(s.vertex_index(c, k));
        const int b = static_cast<int>(s.vertex_index(c, k + 1));
        const int d = static_cast<int>(s.vertex_index(c + 1, k));
        const int e = static_cast<int>(s.vertex_index(c + 1, k + 1));
        s.faces.push_back({a, b, e});
        s.faces.push_back({a, e, d});
      }
    *drift = dz_sum / (static_cast<double>(n) * time_samples);
    return s;
  };

  PerturbedStrainlineResult r;
  r.on_barrier = sweep(base, &r.drift_on);
  r.offset_plus = sweep(offset_curve(delta), &r.drift_plus);
  r.offset_minus = sweep(offset_curve(-delta), &r.drift_minus);
  return r;
}

}  // namespace lcs
