#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/lights.hpp"
#include "core/raster.hpp"
#include "core/rng.hpp"
#include "core/training.hpp"

namespace nightforge {

/// Outcome of one input pair. Failed pairs keep their stream index and carry
/// an error message; numeric stats stay unset.
struct PairRecord {
    std::string status = "ok"; // "ok" | "failed"
    std::string input_path;
    std::string depth_path;
    std::uint64_t stream_index = 0;
    std::string hazy_path;
    std::string clear_path;
    std::string label_path;
    bool mask_override = false;
    std::optional<double> sky_fraction;
    std::optional<double> pre_mean_luminance;
    std::optional<double> post_mean_luminance;
    std::optional<double> post_gamma_non_sky_mean;
    std::optional<double> final_sky_mean;
    std::optional<double> final_non_sky_mean;
    std::vector<LightSource> lights;
    std::string error;
};

/// Run artifact describing every input pair and the exact settings used.
/// Serialization has a stable key order and round-trips losslessly.
struct DatasetManifest {
    std::string version = "nightforge-manifest v1";
    std::uint64_t master_seed = 0;
    SynthesisParams params;
    int grid_height = 8;
    int grid_width = 8;
    int resize = 0; // 0 = native resolution
    std::vector<PairRecord> records;

    std::string serialize() const;
    static DatasetManifest parse(const std::string& text);
};

struct SynthesisOutput {
    Image hazy;
    BrightnessMap label;
    SkyMask sky;
    PairRecord record; // stats and lights filled; paths and stream index left to the caller
};

/// Full per-image chain: sky segmentation, illumination mask, sky darkening,
/// pixel-wise gamma, sky mean adjustment, light glows, noise, composition,
/// brightness label. Deterministic in (inputs, params, rng). A whole-frame sky
/// skips the sky-specific steps (darkening and mean adjustment) with a warning.
SynthesisOutput synthesize_pair(const Image& clear, const DepthMap& depth, const SynthesisParams& params,
                                int grid_height, int grid_width, const RngStream& rng,
                                const SkyMask* mask_override = nullptr,
                                std::vector<std::string>* warnings = nullptr);

struct RunOptions {
    std::string input_dir;
    std::string depth_dir;
    std::string output_dir;
    std::string config_path;  // empty = built-in defaults
    std::string sky_mask_dir; // empty = threshold segmentation only
    bool strict = false;
    bool has_seed = false; // when false, NIGHTFORGE_SEED then 0
    std::uint64_t seed = 0;
    int jobs_override = -1; // -1 = config value
    int resize = 0;         // 0 = native, else square NxN
};

struct RunSummary {
    std::size_t successes = 0;
    std::size_t failures = 0;
    std::vector<std::string> warnings;
    std::string manifest_path;
};

/// Processes every image in input_dir with a matching depth file, writes
/// <stem>_hazy.png, <stem>_clear.png, <stem>_label.png and manifest.json into
/// output_dir. Per-image failures are recorded and do not abort the run unless
/// strict is set. Output bytes are independent of the job count.
DatasetManifest run_pipeline(const RunOptions& options, RunSummary* summary = nullptr);

} // namespace nightforge
