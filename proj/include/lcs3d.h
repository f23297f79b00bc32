/* C interface to the transport-barrier pipeline.
 *
 * All entry points are synchronous and thread-compatible (one context per
 * thread). Functions returning int use the exit-code convention shared with
 * the CLI: 0 success, 1 config error, 2 compute error, 3 partial success.
 * On nonzero returns lcs3d_error() holds a diagnostic until the next call
 * on the same context.
 */
#ifndef LCS3D_H
#define LCS3D_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct lcs3d_ctx lcs3d_ctx;

enum {
  LCS3D_OK = 0,
  LCS3D_CONFIG_ERROR = 1,
  LCS3D_COMPUTE_ERROR = 2,
  LCS3D_PARTIAL = 3
};

const char* lcs3d_version(void);

lcs3d_ctx* lcs3d_ctx_create(void);
void lcs3d_ctx_destroy(lcs3d_ctx* ctx);

/* Configuration is JSON; presets: steady-abc, periodic-abc, chaotic-abc.
 * Loading merges over the built-in defaults; later calls merge over the
 * current state, so a preset can be refined by a config file. */
int lcs3d_load_preset(lcs3d_ctx* ctx, const char* name);
int lcs3d_load_config_file(lcs3d_ctx* ctx, const char* path);
int lcs3d_load_config_text(lcs3d_ctx* ctx, const char* json_text);

int lcs3d_set_workers(lcs3d_ctx* ctx, int workers);
int lcs3d_set_kind(lcs3d_ctx* ctx, const char* kind); /* strain|stretch|shear */
int lcs3d_set_out_dir(lcs3d_ctx* ctx, const char* path);

const char* lcs3d_error(const lcs3d_ctx* ctx);

/* Fully resolved config as JSON text; owned by the context. */
const char* lcs3d_resolved_config(lcs3d_ctx* ctx);

/* One binary grid file per plane plus manifest.json in the output dir. */
int lcs3d_run_grid(lcs3d_ctx* ctx);

/* Reduced-line CSVs from previously written grid files. */
int lcs3d_run_lines(lcs3d_ctx* ctx);

/* Stitched surfaces (PLY + VTK) from previously written line CSVs. */
int lcs3d_run_surfaces(lcs3d_ctx* ctx);

/* experiment: tracers | perturbed-strainline | area | oracles.
 * Writes report.<experiment>.json. */
int lcs3d_run_verify(lcs3d_ctx* ctx, const char* experiment);

/* Chaotic forcing signal CSV. */
int lcs3d_run_forcing(lcs3d_ctx* ctx, const char* out_csv);

#ifdef __cplusplus
}
#endif

#endif /* LCS3D_H */
