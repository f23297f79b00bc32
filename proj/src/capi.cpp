#include "lcs3d.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lcs/barriers.hpp"
#include "lcs/flow_models.hpp"
#include "lcs/forcing.hpp"
#include "lcs/integrator.hpp"
#include "lcs/io.hpp"
#include "lcs/oracle.hpp"
#include "lcs/reduced_lines.hpp"
#include "lcs/strain_fields.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

struct lcs3d_ctx {
  json cfg;
  std::string err;
  std::string resolved;
};

namespace {

json default_config() {
  json j;
  j["flow"] = {{"model", "steady-abc"},
               {"A", std::sqrt(3.0)},
               {"B", std::sqrt(2.0)},
               {"C", 1.0},
               {"amplitude", 0.1},
               {"forcing_csv", ""},
               {"printed_variant", false}};
  j["time"] = {{"t0", 0.0}, {"T", 40.0}, {"dt", 0.01}, {"grad_h", 1e-4}};
  j["grid"] = {{"nx", 200},  {"ny", 200},  {"hz", 0.0},   {"gap_tol", 1e-6},
               {"x_min", 0.0}, {"x_max", 0.0}, {"y_min", 0.0}, {"y_max", 0.0}};
  j["planes"] = {{"lo", 0.0}, {"hi", 0.0}, {"count", 1}, {"values", json::array()}};
  j["lines"] = {{"kind", "shear"},   {"eps0", 1e-2},      {"seeds_x", 20},
                {"seeds_y", 20},     {"step", 0.0},       {"max_arclength", 0.0},
                {"window", 0.0},     {"closure_tol", 0.0}, {"d0", 0.0},
                {"min_winding", 0.9 * 2.0 * M_PI}};
  j["surfaces"] = {{"resample", 64},
                   {"jump_factor", 0.2},
                   {"torus",
                    {{"enabled", false},
                     {"R1", 3.0},
                     {"R2", 1.0},
                     {"center_x", 0.0},
                     {"center_y", 0.0},
                     {"center_samples", 33}}}};
  j["verify"] = {{"s1", 0.0},
                 {"nx", 80},
                 {"ny", 80},
                 {"tracer_T", 10.0 * M_PI},
                 {"offsets", {-0.2, 0.0, 0.2}},
                 {"seeds_per_class", 4},
                 {"checkpoints", 40},
                 {"tube_radius_factor", 1.5},
                 {"delta", 0.01},
                 {"time_samples", 12}};
  j["forcing"] = {{"delta", 0.15},   {"gamma", 0.3},   {"omega", 1.0},
                  {"transient", 50.0}, {"t_begin", 0.0}, {"t_end", 110.0},
                  {"dt", 0.01},      {"target_amp", 0.1}};
  j["workers"] = 1;
  j["out"] = "out";
  return j;
}

json preset_config(const std::string& name) {
  json j = default_config();
  if (name == "steady-abc") {
    j["flow"]["model"] = "steady-abc";
    j["time"]["T"] = 40.0;
    j["grid"]["nx"] = 1000;
    j["grid"]["ny"] = 1000;
    j["planes"]["values"] = {0.0};
    j["lines"]["kind"] = "shear";
    j["lines"]["eps0"] = 1e-2;
  } else if (name == "periodic-abc") {
    j["flow"]["model"] = "periodic-abc";
    j["time"]["T"] = 4.0;
    j["grid"]["nx"] = 500;
    j["grid"]["ny"] = 500;
    j["planes"] = {{"lo", 0.0}, {"hi", 0.1}, {"count", 21}, {"values", json::array()}};
    j["lines"]["kind"] = "strain";
    j["lines"]["eps0"] = 1e-4;
    j["lines"]["seeds_x"] = 600;
    j["lines"]["seeds_y"] = 10;
  } else if (name == "chaotic-abc") {
    j["flow"]["model"] = "chaotic-abc";
    j["time"]["T"] = 5.0;
    j["grid"]["nx"] = 500;
    j["grid"]["ny"] = 500;
    json vals = json::array();
    for (int k = 0; k < 150; ++k) vals.push_back(2.0 * M_PI * k / 150.0);
    j["planes"]["values"] = vals;
    j["lines"]["kind"] = "strain";
    j["lines"]["eps0"] = 1e-4;
  } else {
    throw std::invalid_argument("unknown preset: " + name);
  }
  return j;
}

int fail(lcs3d_ctx* ctx, int code, const std::string& msg) {
  ctx->err = msg;
  return code;
}

struct Resolved {
  lcs::FieldPtr field;
  lcs::IntegratorConfig integ;
  lcs::PlaneConfig plane;
  lcs::LineConfig line;
  lcs::LineKind kind = lcs::LineKind::Strain;
  std::vector<double> planes;
  double t0 = 0.0, T = 0.0;
  int nx = 0, ny = 0;
  int seeds_x = 0, seeds_y = 0;
  int workers = 1;
  fs::path out;
};

lcs::LineKind parse_kind(const std::string& k) {
  if (k == "strain") return lcs::LineKind::Strain;
  if (k == "stretch") return lcs::LineKind::Stretch;
  if (k == "shear" || k == "shear+") return lcs::LineKind::ShearPlus;
  if (k == "shear-") return lcs::LineKind::ShearMinus;
  throw std::invalid_argument("unknown line kind: " + k);
}

lcs::FieldPtr build_field(const json& cfg) {
  const json& f = cfg.at("flow");
  lcs::AbcParams p{f.at("A").get<double>(), f.at("B").get<double>(), f.at("C").get<double>()};
  const std::string model = f.at("model").get<std::string>();
  if (model == "steady-abc") return lcs::make_steady_abc(p);
  if (model == "periodic-abc") return lcs::make_periodic_abc(p, f.at("amplitude").get<double>());
  if (model == "chaotic-abc") {
    lcs::ForcingSignal sig;
    const std::string path = f.at("forcing_csv").get<std::string>();
    if (!path.empty()) {
      sig = lcs::ForcingSignal::load_csv(path);
    } else {
      const json& fo = cfg.at("forcing");
      lcs::DuffingParams dp;
      dp.delta = fo.at("delta").get<double>();
      dp.gamma = fo.at("gamma").get<double>();
      dp.omega = fo.at("omega").get<double>();
      dp.transient = fo.at("transient").get<double>();
      const double t0 = cfg.at("time").at("t0").get<double>();
      const double T = cfg.at("time").at("T").get<double>();
      const double lo = std::min(t0, t0 + T) - 1.0, hi = std::max(t0, t0 + T) + 1.0;
      sig = lcs::generate_duffing_forcing_scaled(dp, lo, hi, fo.at("dt").get<double>(),
                                                 fo.at("target_amp").get<double>());
    }
    return lcs::make_chaotic_abc(p, std::move(sig), f.at("printed_variant").get<bool>());
  }
  throw std::invalid_argument("unknown flow model: " + model);
}

Resolved resolve(const json& cfg) {
  Resolved r;
  r.field = build_field(cfg);
  const json& t = cfg.at("time");
  r.t0 = t.at("t0").get<double>();
  r.T = t.at("T").get<double>();
  r.integ.dt = t.at("dt").get<double>();
  r.integ.grad_h = t.at("grad_h").get<double>();
  if (!(r.integ.dt > 0.0)) throw std::invalid_argument("time.dt must be positive");

  const json& g = cfg.at("grid");
  r.nx = g.at("nx").get<int>();
  r.ny = g.at("ny").get<int>();
  if (r.nx < 8 || r.ny < 8) throw std::invalid_argument("grid dims must be >= 8");
  r.plane.gap_tol = g.at("gap_tol").get<double>();
  r.plane.hz = g.at("hz").get<double>();
  r.plane.x_min = g.at("x_min").get<double>();
  r.plane.x_max = g.at("x_max").get<double>();
  r.plane.y_min = g.at("y_min").get<double>();
  r.plane.y_max = g.at("y_max").get<double>();

  const json& pl = cfg.at("planes");
  if (pl.at("values").is_array() && !pl.at("values").empty()) {
    for (const auto& v : pl.at("values")) r.planes.push_back(v.get<double>());
  } else {
    const int count = pl.at("count").get<int>();
    if (count < 1) throw std::invalid_argument("planes.count must be >= 1");
    const double lo = pl.at("lo").get<double>(), hi = pl.at("hi").get<double>();
    for (int k = 0; k < count; ++k)
      r.planes.push_back(count == 1 ? lo : lo + (hi - lo) * k / (count - 1));
  }

  const json& l = cfg.at("lines");
  r.kind = parse_kind(l.at("kind").get<std::string>());
  r.line.eps0 = l.at("eps0").get<double>();
  r.line.step = l.at("step").get<double>();
  r.line.max_arclength = l.at("max_arclength").get<double>();
  r.line.window = l.at("window").get<double>();
  r.line.closure_tol = l.at("closure_tol").get<double>();
  r.line.d0 = l.at("d0").get<double>();
  r.line.min_winding = l.at("min_winding").get<double>();
  r.seeds_x = l.at("seeds_x").get<int>();
  r.seeds_y = l.at("seeds_y").get<int>();
  if (r.seeds_x < 1 || r.seeds_y < 1) throw std::invalid_argument("seed dims must be >= 1");

  r.workers = cfg.at("workers").get<int>();
  if (r.workers < 1) throw std::invalid_argument("workers must be >= 1");
  r.plane.workers = r.workers;
  r.out = cfg.at("out").get<std::string>();
  return r;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  f << j.dump(2) << "\n";
}

std::string grid_file(int k) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "grid_plane%03d.lcsgrid", k);
  return buf;
}

std::string lines_file(const std::string& kind, int k) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "lines_%s_plane%03d.csv", kind.c_str(), k);
  return buf;
}

json load_manifest(const fs::path& out) {
  std::ifstream f(out / "manifest.json");
  if (!f) throw std::runtime_error("missing manifest: " + (out / "manifest.json").string());
  json j;
  f >> j;
  return j;
}

// Incompressible parallel shear profile for the area experiment.
lcs::ShearProfiles area_profiles() {
  lcs::ShearProfiles sp;
  sp.u = [](double z, double) { return std::sin(z); };
  sp.v = [](double z, double) { return std::cos(z); };
  sp.w = [](double) { return 0.0; };
  sp.uz = [](double z, double) { return std::cos(z); };
  sp.vz = [](double z, double) { return -std::sin(z); };
  return sp;
}

int run_verify_impl(lcs3d_ctx* ctx, const std::string& experiment);

}  // namespace

extern "C" {

const char* lcs3d_version(void) { return "1.0.0"; }

lcs3d_ctx* lcs3d_ctx_create(void) {
  auto* ctx = new (std::nothrow) lcs3d_ctx;
  if (ctx) ctx->cfg = default_config();
  return ctx;
}

void lcs3d_ctx_destroy(lcs3d_ctx* ctx) { delete ctx; }

int lcs3d_load_preset(lcs3d_ctx* ctx, const char* name) {
  if (!ctx) return LCS3D_CONFIG_ERROR;
  ctx->err.clear();
  try {
    ctx->cfg.merge_patch(preset_config(name ? name : ""));
    return LCS3D_OK;
  } catch (const std::exception& e) {
    return fail(ctx, LCS3D_CONFIG_ERROR, e.what());
  }
}

int lcs3d_load_config_text(lcs3d_ctx* ctx, const char* text) {
  if (!ctx) return LCS3D_CONFIG_ERROR;
  ctx->err.clear();
  try {
    json j = json::parse(text ? text : "");
    // A manifest embeds the config it ran with; accept it directly so a run
    // can be reproduced from its own output.
    if (j.contains("config") && j.contains("command")) j = j.at("config");
    if (j.contains("preset")) {
      ctx->cfg.merge_patch(preset_config(j.at("preset").get<std::string>()));
      j.erase("preset");
    }
    ctx->cfg.merge_patch(j);
    return LCS3D_OK;
  } catch (const std::exception& e) {
    return fail(ctx, LCS3D_CONFIG_ERROR, e.what());
  }
}

int lcs3d_load_config_file(lcs3d_ctx* ctx, const char* path) {
  if (!ctx) return LCS3D_CONFIG_ERROR;
  ctx->err.clear();
  std::ifstream f(path ? path : "");
  if (!f) return fail(ctx, LCS3D_CONFIG_ERROR, std::string("cannot open config: ") + (path ? path : ""));
  std::stringstream ss;
  ss << f.rdbuf();
  return lcs3d_load_config_text(ctx, ss.str().c_str());
}

int lcs3d_set_workers(lcs3d_ctx* ctx, int workers) {
  if (!ctx) return LCS3D_CONFIG_ERROR;
  if (workers < 1) return fail(ctx, LCS3D_CONFIG_ERROR, "workers must be >= 1");
  ctx->cfg["workers"] = workers;
  return LCS3D_OK;
}

int lcs3d_set_kind(lcs3d_ctx* ctx, const char* kind) {
  if (!ctx) return LCS3D_CONFIG_ERROR;
  try {
    parse_kind(kind ? kind : "");
  } catch (const std::exception& e) {
    return fail(ctx, LCS3D_CONFIG_ERROR, e.what());
  }
  ctx->cfg["lines"]["kind"] = kind;
  return LCS3D_OK;
}

int lcs3d_set_out_dir(lcs3d_ctx* ctx, const char* path) {
  if (!ctx || !path || !*path) return LCS3D_CONFIG_ERROR;
  ctx->cfg["out"] = path;
  return LCS3D_OK;
}

const char* lcs3d_error(const lcs3d_ctx* ctx) { return ctx ? ctx->err.c_str() : "null context"; }

const char* lcs3d_resolved_config(lcs3d_ctx* ctx) {
  if (!ctx) return "";
  ctx->resolved = ctx->cfg.dump(2);
  return ctx->resolved.c_str();
}

int lcs3d_run_grid(lcs3d_ctx* ctx) {
  if (!ctx) return LCS3D_CONFIG_ERROR;
  ctx->err.clear();
  Resolved r;
  try {
    r = resolve(ctx->cfg);
    fs::create_directories(r.out);
  } catch (const std::exception& e) {
    return fail(ctx, LCS3D_CONFIG_ERROR, e.what());
  }

  json manifest;
  manifest["command"] = "grid";
  manifest["config"] = ctx->cfg;
  manifest["planes"] = json::array();
  int ok_count = 0;
  for (size_t k = 0; k < r.planes.size(); ++k) {
    json entry;
    entry["s1"] = r.planes[k];
    entry["file"] = grid_file(static_cast<int>(k));
    try {
      lcs::DeformationGrid grid = lcs::sample_plane(*r.field, r.planes[k], r.nx, r.ny, r.t0, r.T,
                                                    r.integ, r.plane);
      lcs::fill_helicity_fields(grid);
      lcs::save_grid(grid, (r.out / grid_file(static_cast<int>(k))).string());
      entry["ok"] = true;
      ++ok_count;
    } catch (const std::exception& e) {
      entry["ok"] = false;
      entry["error"] = e.what();
    }
    manifest["planes"].push_back(entry);
  }
  try {
    write_json(r.out / "manifest.json", manifest);
  } catch (const std::exception& e) {
    return fail(ctx, LCS3D_COMPUTE_ERROR, e.what());
  }
  if (ok_count == 0) return fail(ctx, LCS3D_COMPUTE_ERROR, "all planes failed");
  if (ok_count < static_cast<int>(r.planes.size()))
    return fail(ctx, LCS3D_PARTIAL, "some planes failed; see manifest.json");
  return LCS3D_OK;
}

int lcs3d_run_lines(lcs3d_ctx* ctx) {
  if (!ctx) return LCS3D_CONFIG_ERROR;
  ctx->err.clear();
  Resolved r;
  json manifest;
  try {
    r = resolve(ctx->cfg);
    manifest = load_manifest(r.out);
  } catch (const std::exception& e) {
    return fail(ctx, LCS3D_CONFIG_ERROR, e.what());
  }

  const std::string kind_name = ctx->cfg["lines"]["kind"].get<std::string>();
  json summary;
  summary["command"] = "lines";
  summary["kind"] = kind_name;
  summary["config"] = ctx->cfg;
  summary["planes"] = json::array();
  size_t total = 0;
  try {
    int k = 0;
    for (const auto& entry : manifest.at("planes")) {
      if (!entry.at("ok").get<bool>()) {
        ++k;
        continue;
      }
      const fs::path gpath = r.out / entry.at("file").get<std::string>();
      if (!fs::exists(gpath))
        return fail(ctx, LCS3D_CONFIG_ERROR, "missing grid file: " + gpath.string());
      lcs::DeformationGrid grid = lcs::load_grid(gpath.string());
      auto lines = lcs::extract_lines(grid, r.kind, r.seeds_x, r.seeds_y, r.line, r.workers);
      const std::string lfile = lines_file(kind_name, k);
      lcs::save_lines_csv(lines, (r.out / lfile).string());
      int closed = 0;
      double habs_sum = 0.0;
      size_t hn = 0;
      for (const auto& ln : lines) {
        if (ln.closed) ++closed;
        for (double h : ln.helicity) {
          habs_sum += std::fabs(h);
          ++hn;
        }
      }
      json pe;
      pe["s1"] = entry.at("s1");
      pe["file"] = lfile;
      pe["count"] = lines.size();
      pe["closed"] = closed;
      pe["open"] = static_cast<int>(lines.size()) - closed;
      pe["mean_abs_helicity"] = hn ? habs_sum / static_cast<double>(hn) : 0.0;
      summary["planes"].push_back(pe);
      total += lines.size();
      ++k;
    }
    if (total == 0) summary["warning"] = "no reduced lines survived filtering";
    write_json(r.out / ("lines_" + kind_name + "_summary.json"), summary);
  } catch (const std::exception& e) {
    return fail(ctx, LCS3D_COMPUTE_ERROR, e.what());
  }
  return LCS3D_OK;
}

int lcs3d_run_surfaces(lcs3d_ctx* ctx) {
  if (!ctx) return LCS3D_CONFIG_ERROR;
  ctx->err.clear();
  Resolved r;
  try {
    r = resolve(ctx->cfg);
  } catch (const std::exception& e) {
    return fail(ctx, LCS3D_CONFIG_ERROR, e.what());
  }
  const std::string kind_name = ctx->cfg["lines"]["kind"].get<std::string>();
  json lsum;
  {
    std::ifstream f(r.out / ("lines_" + kind_name + "_summary.json"));
    if (!f)
      return fail(ctx, LCS3D_CONFIG_ERROR,
                  "missing line summary for kind '" + kind_name + "' in " + r.out.string());
    f >> lsum;
  }
  try {
    std::vector<std::vector<lcs::ReducedLine>> per_plane;
    for (const auto& pe : lsum.at("planes")) {
      auto lines = lcs::load_lines_csv((r.out / pe.at("file").get<std::string>()).string());
      per_plane.push_back(std::move(lines));
    }
    const bool shear = r.kind == lcs::LineKind::ShearPlus || r.kind == lcs::LineKind::ShearMinus;
    const double jump = ctx->cfg["surfaces"]["jump_factor"].get<double>();
    const int resample = ctx->cfg["surfaces"]["resample"].get<int>();
    auto chains = lcs::match_closed_curves(per_plane, jump, shear);

    const json& tor = ctx->cfg["surfaces"]["torus"];
    lcs::TorusEmbedding emb;
    const bool embed = tor.at("enabled").get<bool>();
    if (embed) {
      const double margin = 0.05 * (r.planes.back() - r.planes.front() + 1e-9);
      emb = lcs::center_curve_from_advection(
          *r.field, {tor.at("center_x").get<double>(), tor.at("center_y").get<double>(), 0.0},
          r.planes.front() - margin, r.planes.back() + margin,
          tor.at("center_samples").get<int>(), r.t0, r.integ, tor.at("R1").get<double>(),
          tor.at("R2").get<double>());
    }

    json report;
    report["command"] = "surfaces";
    report["kind"] = kind_name;
    report["config"] = ctx->cfg;
    report["surfaces"] = json::array();
    int idx = 0;
    for (const auto& chain : chains) {
      if (chain.size() < 2) continue;
      lcs::BarrierSurface s = lcs::build_surface(chain, resample);
      s.t0 = r.t0;
      s.T = r.T;
      if (embed) s = lcs::torus_embed(s, emb);
      char base[64];
      std::snprintf(base, sizeof(base), "surface_%s_%03d", kind_name.c_str(), idx);
      lcs::save_ply(s, (r.out / (std::string(base) + ".ply")).string());
      lcs::save_vtk(s, (r.out / (std::string(base) + ".vtk")).string());
      json se;
      se["file"] = std::string(base) + ".ply";
      se["curves"] = chain.size();
      se["closed"] = s.closed;
      se["area"] = lcs::mesh_area(s);
      se["manifold"] = lcs::mesh_is_manifold(s);
      report["surfaces"].push_back(se);
      ++idx;
    }
    if (idx == 0) report["warning"] = "no matchable chains across planes";
    write_json(r.out / ("surfaces_" + kind_name + "_report.json"), report);
  } catch (const std::exception& e) {
    return fail(ctx, LCS3D_COMPUTE_ERROR, e.what());
  }
  return LCS3D_OK;
}

int lcs3d_run_verify(lcs3d_ctx* ctx, const char* experiment) {
  if (!ctx) return LCS3D_CONFIG_ERROR;
  ctx->err.clear();
  return run_verify_impl(ctx, experiment ? experiment : "");
}

int lcs3d_run_forcing(lcs3d_ctx* ctx, const char* out_csv) {
  if (!ctx) return LCS3D_CONFIG_ERROR;
  ctx->err.clear();
  if (!out_csv || !*out_csv) return fail(ctx, LCS3D_CONFIG_ERROR, "output path required");
  try {
    const json& fo = ctx->cfg.at("forcing");
    lcs::DuffingParams dp;
    dp.delta = fo.at("delta").get<double>();
    dp.gamma = fo.at("gamma").get<double>();
    dp.omega = fo.at("omega").get<double>();
    dp.transient = fo.at("transient").get<double>();
    auto sig = lcs::generate_duffing_forcing_scaled(
        dp, fo.at("t_begin").get<double>(), fo.at("t_end").get<double>(),
        fo.at("dt").get<double>(), fo.at("target_amp").get<double>());
    sig.save_csv(out_csv);
  } catch (const std::exception& e) {
    return fail(ctx, LCS3D_COMPUTE_ERROR, e.what());
  }
  return LCS3D_OK;
}

}  // extern "C"

namespace {

json verify_oracles() {
  json rep;
  rep["experiment"] = "oracles";
  bool all = true;

  // Analytic vs numerical Cauchy-Green for a parallel shear profile.
  {
    lcs::ShearProfiles sp = area_profiles();
    auto field = lcs::make_parallel_shear(sp);
    lcs::IntegratorConfig ic;
    double max_rel = 0.0, max_l2 = 0.0;
    for (int s = 0; s < 5; ++s) {
      const double z0 = 0.3 + 0.9 * s;
      auto cg = lcs::parallel_shear_cg(sp, z0, 0.0, 2.0, ic.dt);
      auto fm = lcs::flow_map_sample(*field, {1.0, 1.0, z0}, 0.0, 2.0, ic);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          const double denom = std::max(1.0, std::fabs(cg.C(i, j)));
          max_rel = std::max(max_rel, std::fabs(cg.C(i, j) - fm.C(i, j)) / denom);
        }
      auto frame = lcs::eigen_frame(fm.C);
      max_l2 = std::max(max_l2, std::fabs(frame.lambda2 - 1.0));
    }
    const bool ok = max_rel <= 1e-5 && max_l2 <= 1e-6;
    rep["cauchy_green_rel_error"] = max_rel;
    rep["lambda2_error"] = max_l2;
    rep["cauchy_green_pass"] = ok;
    all = all && ok;
  }

  // Sphere extrema against the closed forms.
  {
    lcs::Mat3 C = lcs::Mat3::identity();
    C(0, 0) = 0.25;
    C(1, 1) = 1.3;
    C(2, 2) = 5.5;
    auto frame = lcs::eigen_frame(C);
    auto rho = lcs::brute_max_repulsion(C, 20000);
    auto sig = lcs::brute_max_shear(C, 20000);
    const double rho_err = std::fabs(rho.value - std::sqrt(frame.lambda3));
    const double sig_err =
        std::fabs(sig.value - std::fabs(std::sqrt(frame.lambda3) - std::sqrt(frame.lambda1)));
    const bool ok = rho_err <= 1e-3 && sig_err <= 1e-3;
    rep["repulsion_error"] = rho_err;
    rep["shear_error"] = sig_err;
    rep["extrema_pass"] = ok;
    all = all && ok;
  }
  rep["pass"] = all;
  return rep;
}

json verify_tracers(const Resolved& r, const json& v) {
  const double s1 = v.at("s1").get<double>();
  lcs::DeformationGrid grid = lcs::sample_plane(*r.field, s1, v.at("nx").get<int>(),
                                                v.at("ny").get<int>(), r.t0, r.T, r.integ, r.plane);
  lcs::fill_helicity_fields(grid);
  lcs::LineConfig lc = r.line;
  auto lines = lcs::extract_lines(grid, lcs::LineKind::ShearPlus, r.seeds_x, r.seeds_y, lc,
                                  r.workers);
  const lcs::ReducedLine* outer = nullptr;
  double best = -1.0;
  for (const auto& ln : lines) {
    if (!ln.closed) continue;
    const double a = ln.arclength();
    if (a > best) {
      best = a;
      outer = &ln;
    }
  }
  if (!outer) throw std::runtime_error("tracers: no closed shearline found on plane");

  lcs::TracerConfig tc;
  tc.offsets = v.at("offsets").get<std::vector<double>>();
  tc.seeds_per_class = v.at("seeds_per_class").get<int>();
  tc.checkpoints = v.at("checkpoints").get<int>();
  tc.tube_radius_factor = v.at("tube_radius_factor").get<double>();
  auto exp = lcs::tracer_experiment(*r.field, *outer, tc, r.t0,
                                    r.t0 + v.at("tracer_T").get<double>(), r.integ);

  json rep;
  rep["experiment"] = "tracers";
  rep["tube_radius"] = exp.tube_radius;
  rep["barrier_arclength"] = best;
  bool confined_ok = true, escaped = false;
  for (const auto& cls : exp.classes) {
    json ce;
    ce["class"] = cls.name;
    ce["max_deviation"] = cls.max_deviation;
    double worst = 0.0;
    for (double d : cls.max_deviation) worst = std::max(worst, d);
    ce["worst"] = worst;
    ce["ratio_to_tube"] = worst / exp.tube_radius;
    if (cls.name == "outside") {
      escaped = worst > exp.tube_radius;
    } else {
      confined_ok = confined_ok && worst <= exp.tube_radius;
    }
    rep["classes"].push_back(ce);
  }
  rep["interior_confined"] = confined_ok;
  rep["exterior_escaped"] = escaped;
  rep["pass"] = confined_ok && escaped;
  return rep;
}

json verify_perturbed(const Resolved& r, const json& v) {
  const double s1 = v.at("s1").get<double>();
  lcs::DeformationGrid grid = lcs::sample_plane(*r.field, s1, v.at("nx").get<int>(),
                                                v.at("ny").get<int>(), r.t0, r.T, r.integ, r.plane);
  lcs::fill_helicity_fields(grid);
  auto lines = lcs::extract_lines(grid, lcs::LineKind::Strain, r.seeds_x, r.seeds_y, r.line,
                                  r.workers);
  const lcs::ReducedLine* pick = nullptr;
  double best = -1.0;
  for (const auto& ln : lines) {
    if (ln.closed) continue;
    const double a = ln.arclength();
    if (a > best) {
      best = a;
      pick = &ln;
    }
  }
  if (!pick) throw std::runtime_error("perturbed-strainline: no open strainline found");

  auto res = lcs::perturbed_strainline_experiment(*r.field, *pick, v.at("delta").get<double>(),
                                                  r.t0, r.t0 + r.T,
                                                  v.at("time_samples").get<int>(), r.integ,
                                                  r.workers);
  json rep;
  rep["experiment"] = "perturbed-strainline";
  rep["strainline_arclength"] = best;
  rep["drift_on"] = res.drift_on;
  rep["drift_plus"] = res.drift_plus;
  rep["drift_minus"] = res.drift_minus;
  rep["pass"] = std::fabs(res.drift_on) < std::fabs(res.drift_plus) &&
                std::fabs(res.drift_on) < std::fabs(res.drift_minus);
  return rep;
}

json verify_area(const Resolved& r, const json& v) {
  lcs::ShearProfiles sp = area_profiles();
  auto field = lcs::make_parallel_shear(sp);
  const double T = std::min(r.T, 5.0);

  // Shear-barrier patch: reduced shearlines on two nearby planes, stitched.
  lcs::PlaneConfig pc = r.plane;
  pc.x_min = 1.0;
  pc.x_max = 3.0;
  pc.y_min = 1.0;
  pc.y_max = 3.0;
  std::vector<std::vector<lcs::ReducedLine>> per_plane;
  std::vector<lcs::DeformationGrid> grids;
  for (double s1 : {1.0, 1.1, 1.2}) {
    grids.push_back(lcs::sample_plane(*field, s1, v.at("nx").get<int>(), v.at("ny").get<int>(),
                                      r.t0, T, r.integ, pc));
    lcs::fill_helicity_fields(grids.back());
    lcs::LineConfig lc = r.line;
    lc.eps0 = 1e-2;
    per_plane.push_back(lcs::extract_lines(grids.back(), lcs::LineKind::ShearPlus, 8, 8, lc, 1));
  }
  auto chains = lcs::match_closed_curves(per_plane, 10.0, false);
  if (chains.empty() || chains.front().size() < 2)
    throw std::runtime_error("area: no shearline chain found");
  lcs::BarrierSurface s = lcs::build_surface(chains.front(), 32);
  std::vector<const lcs::DeformationGrid*> gp;
  for (size_t i = 0; i < chains.front().size(); ++i) {
    for (const auto& g : grids)
      if (std::fabs(g.s1 - chains.front()[i].s1) < 1e-12) gp.push_back(&g);
  }
  const double a0 = lcs::mesh_area(s);
  lcs::BarrierSurface adv = lcs::advect_surface(*field, s, r.t0, r.t0 + T, r.integ, r.workers);
  const double a1 = lcs::mesh_area(adv);
  double predicted = a0;
  if (gp.size() == chains.front().size()) {
    lcs::sample_strain_data(s, gp);
    predicted = lcs::predicted_area(s, lcs::AreaKind::ShearIncompressible);
  }

  json rep;
  rep["experiment"] = "area";
  rep["initial_area"] = a0;
  rep["advected_area"] = a1;
  rep["predicted_area"] = predicted;
  rep["conservation_error"] = std::fabs(a1 - a0) / a0;
  rep["pass"] = std::fabs(a1 - a0) / a0 <= 0.01;
  return rep;
}

int run_verify_impl(lcs3d_ctx* ctx, const std::string& experiment) {
  Resolved r;
  try {
    r = resolve(ctx->cfg);
    fs::create_directories(r.out);
  } catch (const std::exception& e) {
    return fail(ctx, LCS3D_CONFIG_ERROR, e.what());
  }
  json rep;
  try {
    const json& v = ctx->cfg.at("verify");
    if (experiment == "oracles")
      rep = verify_oracles();
    else if (experiment == "tracers")
      rep = verify_tracers(r, v);
    else if (experiment == "perturbed-strainline")
      rep = verify_perturbed(r, v);
    else if (experiment == "area")
      rep = verify_area(r, v);
    else
      return fail(ctx, LCS3D_CONFIG_ERROR, "unknown experiment: " + experiment);
    rep["config"] = ctx->cfg;
    write_json(r.out / ("report." + experiment + ".json"), rep);
  } catch (const std::exception& e) {
    return fail(ctx, LCS3D_COMPUTE_ERROR, e.what());
  }
  return rep.value("pass", true) ? LCS3D_OK : LCS3D_PARTIAL;
}

}  // namespace
