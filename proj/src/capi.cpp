#include "nightforge/nightforge.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "core/config.hpp"
#include "core/error.hpp"
#include "core/io.hpp"
#include "core/pipeline.hpp"
#include "core/raster.hpp"
#include "core/report.hpp"

struct nf_image {
    nightforge::Image v;
};
struct nf_depth {
    nightforge::DepthMap v;
};
struct nf_params {
    nightforge::SynthesisParams v;
};

namespace {

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void set_error(char** err, const std::string& message) {
    if (err != nullptr) *err = dup_string(message);
}

nf_status map_code(nightforge::ErrorCode code) {
    switch (code) {
        case nightforge::ErrorCode::InvalidArgument: return NF_ERR_INVALID_ARGUMENT;
        case nightforge::ErrorCode::Io: return NF_ERR_IO;
        case nightforge::ErrorCode::Format: return NF_ERR_FORMAT;
        case nightforge::ErrorCode::Config: return NF_ERR_CONFIG;
        case nightforge::ErrorCode::Runtime: return NF_ERR_RUNTIME;
    }
    return NF_ERR_RUNTIME;
}

/// Runs the body, translating exceptions into status codes + err message.
template <typename Fn>
nf_status guarded(char** err, Fn&& body) {
    try {
        body();
        return NF_OK;
    } catch (const nightforge::Error& e) {
        set_error(err, e.what());
        return map_code(e.code());
    } catch (const std::bad_alloc&) {
        set_error(err, "out of memory");
        return NF_ERR_RUNTIME;
    } catch (const std::exception& e) {
        set_error(err, e.what());
        return NF_ERR_RUNTIME;
    }
}

nf_status require(bool condition, char** err, const char* message) {
    if (condition) return NF_OK;
    set_error(err, message);
    return NF_ERR_INVALID_ARGUMENT;
}

} // namespace

extern "C" {

const char* nf_version(void) { return "0.1.0"; }

void nf_string_free(char* s) { std::free(s); }

void nf_buffer_free(double* p) { std::free(p); }

nf_status nf_image_load(const char* path, nf_image** out, char** err) {
    if (require(path != nullptr && out != nullptr, err, "nf_image_load: NULL argument") != NF_OK)
        return NF_ERR_INVALID_ARGUMENT;
    return guarded(err, [&] { *out = new nf_image{nightforge::load_image(path)}; });
}

nf_status nf_image_create(int width, int height, const double* data, nf_image** out, char** err) {
    if (require(out != nullptr, err, "nf_image_create: NULL out") != NF_OK) return NF_ERR_INVALID_ARGUMENT;
    return guarded(err, [&] {
        nightforge::Image img = nightforge::Image::create(width, height);
        if (data != nullptr) {
            std::memcpy(img.data.data(), data, img.data.size() * sizeof(double));
            img.validate();
        }
        *out = new nf_image{std::move(img)};
    });
}

nf_status nf_image_save(const nf_image* img, const char* path, char** err) {
    if (require(img != nullptr && path != nullptr, err, "nf_image_save: NULL argument") != NF_OK)
        return NF_ERR_INVALID_ARGUMENT;
    return guarded(err, [&] { nightforge::save_image(img->v, path); });
}

void nf_image_free(nf_image* img) { delete img; }

int nf_image_width(const nf_image* img) { return img != nullptr ? img->v.width : 0; }

int nf_image_height(const nf_image* img) { return img != nullptr ? img->v.height : 0; }

const double* nf_image_data(const nf_image* img) { return img != nullptr ? img->v.data.data() : nullptr; }

nf_status nf_image_mean_luminance(const nf_image* img, double* out, char** err) {
    if (require(img != nullptr && out != nullptr, err, "nf_image_mean_luminance: NULL argument") != NF_OK)
        return NF_ERR_INVALID_ARGUMENT;
    return guarded(err, [&] { *out = nightforge::mean_luminance(img->v); });
}

nf_status nf_depth_load(const char* path, nf_depth** out, char** err) {
    if (require(path != nullptr && out != nullptr, err, "nf_depth_load: NULL argument") != NF_OK)
        return NF_ERR_INVALID_ARGUMENT;
    return guarded(err, [&] { *out = new nf_depth{nightforge::load_depth(path)}; });
}

nf_status nf_depth_create(int width, int height, const double* data, nf_depth** out, char** err) {
    if (require(out != nullptr, err, "nf_depth_create: NULL out") != NF_OK) return NF_ERR_INVALID_ARGUMENT;
    return guarded(err, [&] {
        nightforge::DepthMap depth = nightforge::DepthMap::create(width, height);
        if (data != nullptr) {
            std::memcpy(depth.data.data(), data, depth.data.size() * sizeof(double));
            depth.validate();
        }
        *out = new nf_depth{std::move(depth)};
    });
}

void nf_depth_free(nf_depth* depth) { delete depth; }

int nf_depth_width(const nf_depth* depth) { return depth != nullptr ? depth->v.width : 0; }

int nf_depth_height(const nf_depth* depth) { return depth != nullptr ? depth->v.height : 0; }

const double* nf_depth_data(const nf_depth* depth) { return depth != nullptr ? depth->v.data.data() : nullptr; }

nf_status nf_params_create_default(nf_params** out, char** err) {
    if (require(out != nullptr, err, "nf_params_create_default: NULL out") != NF_OK) return NF_ERR_INVALID_ARGUMENT;
    return guarded(err, [&] { *out = new nf_params{nightforge::SynthesisParams{}}; });
}

nf_status nf_params_from_json(const char* json_text, nf_params** out, char** err) {
    if (require(json_text != nullptr && out != nullptr, err, "nf_params_from_json: NULL argument") != NF_OK)
        return NF_ERR_INVALID_ARGUMENT;
    return guarded(err, [&] { *out = new nf_params{nightforge::validate_config(json_text).params}; });
}

void nf_params_free(nf_params* params) { delete params; }

nf_status nf_synthesize_pair(const nf_image* clear, const nf_depth* depth, const nf_params* params, uint64_t seed,
                             uint64_t stream_index, int grid_h, int grid_w, nf_image** hazy_out, double** label_out,
                             char** err) {
    if (require(clear != nullptr && depth != nullptr && params != nullptr && hazy_out != nullptr, err,
                "nf_synthesize_pair: NULL argument") != NF_OK)
        return NF_ERR_INVALID_ARGUMENT;
    return guarded(err, [&] {
        const nightforge::RngStream rng(seed, stream_index);
        nightforge::SynthesisOutput result =
            nightforge::synthesize_pair(clear->v, depth->v, params->v, grid_h, grid_w, rng);
        if (label_out != nullptr) {
            const std::size_t count = result.label.data.size();
            double* buffer = static_cast<double*>(std::malloc(count * sizeof(double)));
            if (buffer == nullptr) throw std::bad_alloc();
            std::memcpy(buffer, result.label.data.data(), count * sizeof(double));
            *label_out = buffer;
        }
        *hazy_out = new nf_image{std::move(result.hazy)};
    });
}

nf_status nf_run_synth(const nf_synth_options* options, nf_run_summary* summary, char** err) {
    if (require(options != nullptr && options->input_dir != nullptr && options->depth_dir != nullptr &&
                    options->output_dir != nullptr,
                err, "nf_run_synth: NULL required option") != NF_OK)
        return NF_ERR_INVALID_ARGUMENT;
    return guarded(err, [&] {
        nightforge::RunOptions run;
        run.input_dir = options->input_dir;
        run.depth_dir = options->depth_dir;
        run.output_dir = options->output_dir;
        if (options->config_path != nullptr) run.config_path = options->config_path;
        if (options->sky_mask_dir != nullptr) run.sky_mask_dir = options->sky_mask_dir;
        run.strict = options->strict != 0;
        run.has_seed = options->has_seed != 0;
        run.seed = options->seed;
        run.jobs_override = options->jobs;
        run.resize = options->resize;

        nightforge::RunSummary result;
        nightforge::run_pipeline(run, &result);
        if (summary != nullptr) {
            summary->successes = result.successes;
            summary->failures = result.failures;
            summary->warnings = nullptr;
            if (!result.warnings.empty()) {
                std::ostringstream joined;
                for (std::size_t i = 0; i < result.warnings.size(); ++i) {
                    if (i > 0) joined << '\n';
                    joined << result.warnings[i];
                }
                summary->warnings = dup_string(joined.str());
            }
        }
    });
}

nf_status nf_run_report(const nf_report_options* options, char** err) {
    if (require(options != nullptr && options->name_a != nullptr && options->dir_a != nullptr &&
                    options->name_b != nullptr && options->dir_b != nullptr && options->out_dir != nullptr,
                err, "nf_run_report: NULL required option") != NF_OK)
        return NF_ERR_INVALID_ARGUMENT;
    return guarded(err, [&] {
        nightforge::ReportOptions report;
        report.name_a = options->name_a;
        report.dir_a = options->dir_a;
        report.name_b = options->name_b;
        report.dir_b = options->dir_b;
        report.out_dir = options->out_dir;
        report.bins = options->bins > 0 ? options->bins : 32;
        report.channel_means = options->channel_means != 0;
        nightforge::compare_sets(report);
    });
}

} // extern "C"
