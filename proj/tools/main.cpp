#include <cstdio>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "lcs3d.h"

namespace {

struct CtxDeleter {
  void operator()(lcs3d_ctx* c) const { lcs3d_ctx_destroy(c); }
};

int apply_common(lcs3d_ctx* ctx, const std::string& preset, const std::string& config,
                 int workers, const std::string& out, const std::string& kind) {
  int rc = 0;
  if (!preset.empty() && (rc = lcs3d_load_preset(ctx, preset.c_str()))) return rc;
  if (!config.empty() && (rc = lcs3d_load_config_file(ctx, config.c_str()))) return rc;
  if (workers > 0 && (rc = lcs3d_set_workers(ctx, workers))) return rc;
  if (!out.empty() && (rc = lcs3d_set_out_dir(ctx, out.c_str()))) return rc;
  if (!kind.empty() && (rc = lcs3d_set_kind(ctx, kind.c_str()))) return rc;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transport-barrier extraction for 3D unsteady flows"};
  app.require_subcommand(1);
  app.set_version_flag("--version", lcs3d_version());

  std::string preset, config, out, kind, experiment, forcing_out;
  int workers = 0;
  bool show_config = false;

  auto add_common = [&](CLI::App* sub, bool with_kind) {
    sub->add_option("--preset", preset, "Named preset: steady-abc, periodic-abc, chaotic-abc");
    sub->add_option("--config", config, "JSON config file (merged over preset/defaults)");
    sub->add_option("--workers", workers, "Worker thread count");
    sub->add_option("--out", out, "Output directory");
    sub->add_flag("--print-config", show_config, "Print the resolved config and exit");
    if (with_kind)
      sub->add_option("--kind", kind, "Line family: strain, stretch, shear")
          ->check(CLI::IsMember({"strain", "stretch", "shear"}));
  };

  CLI::App* cmd_grid = app.add_subcommand("grid", "Deformation grids per reference plane");
  add_common(cmd_grid, false);
  CLI::App* cmd_lines = app.add_subcommand("lines", "Reduced lines from grid files");
  add_common(cmd_lines, true);
  CLI::App* cmd_surfaces = app.add_subcommand("surfaces", "Stitched barrier surfaces from lines");
  add_common(cmd_surfaces, true);
  CLI::App* cmd_verify = app.add_subcommand("verify", "Verification experiments");
  add_common(cmd_verify, false);
  cmd_verify
      ->add_option("experiment", experiment,
                   "tracers | perturbed-strainline | area | oracles")
      ->required();
  CLI::App* cmd_forcing = app.add_subcommand("forcing-gen", "Chaotic forcing signal CSV");
  add_common(cmd_forcing, false);
  cmd_forcing->add_option("output", forcing_out, "Output CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  std::unique_ptr<lcs3d_ctx, CtxDeleter> ctx(lcs3d_ctx_create());
  if (!ctx) {
    std::fprintf(stderr, "error: out of memory\n");
    return LCS3D_COMPUTE_ERROR;
  }

  int rc = apply_common(ctx.get(), preset, config, workers, out, kind);
  if (rc) {
    std::fprintf(stderr, "error: %s\n", lcs3d_error(ctx.get()));
    return rc;
  }
  if (show_config) {
    std::printf("%s\n", lcs3d_resolved_config(ctx.get()));
    return LCS3D_OK;
  }

  if (cmd_grid->parsed()) rc = lcs3d_run_grid(ctx.get());
  else if (cmd_lines->parsed()) rc = lcs3d_run_lines(ctx.get());
  else if (cmd_surfaces->parsed()) rc = lcs3d_run_surfaces(ctx.get());
  else if (cmd_verify->parsed()) rc = lcs3d_run_verify(ctx.get(), experiment.c_str());
  else if (cmd_forcing->parsed()) rc = lcs3d_run_forcing(ctx.get(), forcing_out.c_str());

  if (rc == LCS3D_OK) return 0;
  const char* msg = lcs3d_error(ctx.get());
  if (msg && *msg)
    std::fprintf(stderr, "%s: %s\n", rc == LCS3D_PARTIAL ? "warning" : "error", msg);
  else if (rc == LCS3D_PARTIAL)
    std::fprintf(stderr, "warning: partial success; see the JSON report\n");
  return rc;
}
