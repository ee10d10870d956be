/* C API for the nightforge night-scene synthesis library.
 *
 * Conventions: every fallible call returns an nf_status and, on failure,
 * optionally fills *err with a malloc'd message the caller releases with
 * nf_string_free. Out-parameters are untouched on failure. Handles are opaque
 * and freed with their matching *_free function; NULL is always safe to free.
 */
#ifndef NIGHTFORGE_H
#define NIGHTFORGE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nf_status {
    NF_OK = 0,
    NF_ERR_INVALID_ARGUMENT = 1,
    NF_ERR_IO = 2,
    NF_ERR_FORMAT = 3,
    NF_ERR_CONFIG = 4,
    NF_ERR_RUNTIME = 5
} nf_status;

typedef struct nf_image nf_image;   /* RGB raster, doubles in [0,1] */
typedef struct nf_depth nf_depth;   /* single-channel disparity in [0,1], 1 = near */
typedef struct nf_params nf_params; /* synthesis parameter set */

/* Library version string, static storage. */
const char* nf_version(void);

/* Releases strings returned through char** out-parameters. */
void nf_string_free(char* s);

/* Releases double buffers returned through double** out-parameters. */
void nf_buffer_free(double* p);

/* ---- images ---- */

/* Loads an 8-bit PNG (grayscale/palette promoted to RGB, alpha dropped). */
nf_status nf_image_load(const char* path, nf_image** out, char** err);

/* Builds an image from interleaved RGB doubles in [0,1]; data may be NULL for
 * an all-black image. */
nf_status nf_image_create(int width, int height, const double* data, nf_image** out, char** err);

/* Writes an 8-bit RGB PNG. */
nf_status nf_image_save(const nf_image* img, const char* path, char** err);

void nf_image_free(nf_image* img);
int nf_image_width(const nf_image* img);
int nf_image_height(const nf_image* img);

/* Borrowed pointer to width*height*3 interleaved doubles; valid until the
 * image is freed. */
const double* nf_image_data(const nf_image* img);

/* Mean of (R+G+B)/3 over all pixels. */
nf_status nf_image_mean_luminance(const nf_image* img, double* out, char** err);

/* ---- depth ---- */

/* Loads a grayscale PFM (".pfm") or grayscale PNG and min-max normalizes it;
 * constant inputs map to all zeros. */
nf_status nf_depth_load(const char* path, nf_depth** out, char** err);

/* Builds a depth map from doubles in [0,1]; data may be NULL for all zeros. */
nf_status nf_depth_create(int width, int height, const double* data, nf_depth** out, char** err);

void nf_depth_free(nf_depth* depth);
int nf_depth_width(const nf_depth* depth);
int nf_depth_height(const nf_depth* depth);
const double* nf_depth_data(const nf_depth* depth);

/* ---- parameters ---- */

/* Default parameter set. */
nf_status nf_params_create_default(nf_params** out, char** err);

/* Parses a JSON config object (same schema as the CLI config file); missing
 * keys keep their defaults. */
nf_status nf_params_from_json(const char* json_text, nf_params** out, char** err);

void nf_params_free(nf_params* params);

/* ---- synthesis ---- */

/* Runs the full synthesis chain on one clear/depth pair. The random stream is
 * derived from (seed, stream_index) so results are reproducible. On success
 * fills *hazy_out; when label_out is non-NULL also fills it with the
 * grid_h*grid_w brightness label (row-major, release with nf_buffer_free). */
nf_status nf_synthesize_pair(const nf_image* clear, const nf_depth* depth, const nf_params* params,
                             uint64_t seed, uint64_t stream_index, int grid_h, int grid_w, nf_image** hazy_out,
                             double** label_out, char** err);

/* ---- batch runs ---- */

typedef struct nf_synth_options {
    const char* input_dir;    /* required: directory of .png clear images */
    const char* depth_dir;    /* required: matching <stem>.pfm or <stem>.png */
    const char* output_dir;   /* required: created if missing */
    const char* config_path;  /* NULL = built-in defaults */
    const char* sky_mask_dir; /* NULL = threshold segmentation only */
    int strict;               /* nonzero = abort on first per-image failure */
    int has_seed;             /* nonzero = use seed below, else NIGHTFORGE_SEED then 0 */
    uint64_t seed;
    int jobs;   /* <0 = config value, 0 = one per hardware thread */
    int resize; /* 0 = native resolution, else square NxN pre-resize */
} nf_synth_options;

typedef struct nf_run_summary {
    size_t successes;
    size_t failures;
    char* warnings; /* newline-separated, NULL when none; free with nf_string_free */
} nf_run_summary;

/* Processes every matched pair under the options, writing <stem>_hazy.png,
 * <stem>_clear.png, <stem>_label.png and manifest.json. Per-image failures are
 * recorded in the summary and manifest; they fail the call only when strict is
 * set. */
nf_status nf_run_synth(const nf_synth_options* options, nf_run_summary* summary, char** err);

typedef struct nf_report_options {
    const char* name_a;
    const char* dir_a;
    const char* name_b;
    const char* dir_b;
    const char* out_dir;
    int bins;          /* <= 0 = 32 */
    int channel_means; /* nonzero = also write per-image channel-mean PNGs */
} nf_report_options;

/* Compares two image sets, writing stats.csv and histogram.png to out_dir. */
nf_status nf_run_report(const nf_report_options* options, char** err);

#ifdef __cplusplus
}
#endif

#endif /* NIGHTFORGE_H */
