#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "lcs3d.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string small_config(const std::string& out_dir) {
  json j;
  j["flow"] = {{"model", "steady-abc"}};
  j["time"] = {{"T", 1.0}, {"dt", 0.05}};
  j["grid"] = {{"nx", 16}, {"ny", 16}};
  j["planes"] = {{"values", {0.0, 0.05}}};
  j["lines"] = {{"kind", "strain"}, {"eps0", 1e6}, {"seeds_x", 4}, {"seeds_y", 4}};
  j["out"] = out_dir;
  return j.dump();
}

std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("version string") {
  const char* v = lcs3d_version();
  REQUIRE(v != nullptr);
  CHECK(std::strlen(v) > 0);
}

TEST_CASE("config loading and validation") {
  lcs3d_ctx* ctx = lcs3d_ctx_create();
  REQUIRE(ctx != nullptr);

  CHECK(lcs3d_load_preset(ctx, "no-such-preset") == LCS3D_CONFIG_ERROR);
  CHECK(std::strlen(lcs3d_error(ctx)) > 0);
  CHECK(lcs3d_load_preset(ctx, "steady-abc") == LCS3D_OK);
  CHECK(lcs3d_load_preset(ctx, "periodic-abc") == LCS3D_OK);
  CHECK(lcs3d_load_preset(ctx, "chaotic-abc") == LCS3D_OK);

  CHECK(lcs3d_load_config_text(ctx, "{ not json") == LCS3D_CONFIG_ERROR);
  CHECK(lcs3d_load_config_file(ctx, "/nonexistent/config.json") == LCS3D_CONFIG_ERROR);

  CHECK(lcs3d_set_kind(ctx, "sideways") == LCS3D_CONFIG_ERROR);
  CHECK(lcs3d_set_kind(ctx, "shear") == LCS3D_OK);
  CHECK(lcs3d_set_workers(ctx, 0) == LCS3D_CONFIG_ERROR);
  CHECK(lcs3d_set_workers(ctx, 2) == LCS3D_OK);

  // merge semantics: text overrides survive in the resolved config
  CHECK(lcs3d_load_config_text(ctx, R"({"grid": {"nx": 42}})") == LCS3D_OK);
  json resolved = json::parse(lcs3d_resolved_config(ctx));
  CHECK(resolved["grid"]["nx"].get<int>() == 42);
  CHECK(resolved["lines"]["kind"].get<std::string>() == "shear");
  CHECK(resolved["workers"].get<int>() == 2);

  // undersized grids are rejected at run time
  CHECK(lcs3d_load_config_text(ctx, R"({"grid": {"nx": 4}})") == LCS3D_OK);
  CHECK(lcs3d_set_out_dir(ctx, (fs::temp_directory_path() / "lcs_capi_bad").string().c_str()) ==
        LCS3D_OK);
  CHECK(lcs3d_run_grid(ctx) == LCS3D_CONFIG_ERROR);

  lcs3d_ctx_destroy(ctx);
}

TEST_CASE("grid, lines, surfaces, forcing end to end") {
  const fs::path out = fs::temp_directory_path() / "lcs_capi_e2e";
  fs::remove_all(out);

  lcs3d_ctx* ctx = lcs3d_ctx_create();
  REQUIRE(lcs3d_load_config_text(ctx, small_config(out.string()).c_str()) == LCS3D_OK);

  REQUIRE(lcs3d_run_grid(ctx) == LCS3D_OK);
  CHECK(fs::exists(out / "manifest.json"));
  CHECK(fs::exists(out / "grid_plane000.lcsgrid"));
  CHECK(fs::exists(out / "grid_plane001.lcsgrid"));

  json manifest = json::parse(read_file(out / "manifest.json"));
  CHECK(manifest.contains("config"));
  CHECK(manifest["planes"].size() == 2);
  for (const auto& p : manifest["planes"]) CHECK(p["ok"].get<bool>());

  REQUIRE(lcs3d_run_lines(ctx) == LCS3D_OK);
  CHECK(fs::exists(out / "lines_strain_summary.json"));
  CHECK(fs::exists(out / "lines_strain_plane000.csv"));

  int rc = lcs3d_run_surfaces(ctx);
  CHECK((rc == LCS3D_OK || rc == LCS3D_PARTIAL));
  CHECK(fs::exists(out / "surfaces_strain_report.json"));

  REQUIRE(lcs3d_run_forcing(ctx, (out / "forcing.csv").string().c_str()) == LCS3D_OK);
  CHECK(fs::exists(out / "forcing.csv"));

  // the written manifest doubles as a config file
  lcs3d_ctx* ctx2 = lcs3d_ctx_create();
  CHECK(lcs3d_load_config_file(ctx2, (out / "manifest.json").string().c_str()) == LCS3D_OK);
  json r2 = json::parse(lcs3d_resolved_config(ctx2));
  CHECK(r2["grid"]["nx"].get<int>() == 16);
  lcs3d_ctx_destroy(ctx2);

  lcs3d_ctx_destroy(ctx);
}

TEST_CASE("worker count does not change the written artifacts") {
  const fs::path out1 = fs::temp_directory_path() / "lcs_capi_w1";
  const fs::path out4 = fs::temp_directory_path() / "lcs_capi_w4";
  fs::remove_all(out1);
  fs::remove_all(out4);

  for (const auto& [dir, workers] : {std::pair{out1, 1}, std::pair{out4, 4}}) {
    lcs3d_ctx* ctx = lcs3d_ctx_create();
    REQUIRE(lcs3d_load_config_text(ctx, small_config(dir.string()).c_str()) == LCS3D_OK);
    REQUIRE(lcs3d_set_workers(ctx, workers) == LCS3D_OK);
    REQUIRE(lcs3d_run_grid(ctx) == LCS3D_OK);
    REQUIRE(lcs3d_run_lines(ctx) == LCS3D_OK);
    lcs3d_ctx_destroy(ctx);
  }

  CHECK(read_file(out1 / "grid_plane000.lcsgrid") == read_file(out4 / "grid_plane000.lcsgrid"));
  CHECK(read_file(out1 / "grid_plane001.lcsgrid") == read_file(out4 / "grid_plane001.lcsgrid"));
  CHECK(read_file(out1 / "lines_strain_plane000.csv") ==
        read_file(out4 / "lines_strain_plane000.csv"));
  CHECK(read_file(out1 / "lines_strain_plane001.csv") ==
        read_file(out4 / "lines_strain_plane001.csv"));
}

TEST_CASE("oracle verification experiment") {
  const fs::path out = fs::temp_directory_path() / "lcs_capi_verify";
  fs::remove_all(out);
  lcs3d_ctx* ctx = lcs3d_ctx_create();
  REQUIRE(lcs3d_load_config_text(ctx, small_config(out.string()).c_str()) == LCS3D_OK);
  CHECK(lcs3d_run_verify(ctx, "oracles") == LCS3D_OK);
  CHECK(fs::exists(out / "report.oracles.json"));
  json report = json::parse(read_file(out / "report.oracles.json"));
  CHECK(report["pass"].get<bool>());
  CHECK(lcs3d_run_verify(ctx, "no-such-experiment") == LCS3D_CONFIG_ERROR);
  lcs3d_ctx_destroy(ctx);
}
