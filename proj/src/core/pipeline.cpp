#include "core/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "core/brightness.hpp"
#include "core/degrade.hpp"
#include "core/error.hpp"
#include "core/io.hpp"

namespace nightforge {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json params_to_json(const SynthesisParams& p) {
    ordered_json j;
    j["varrho"] = p.sky_threshold;
    j["mu"] = p.sky_target_mean;
    j["phi1"] = p.sky_illumination;
    j["phi2"] = p.ground_illumination;
    j["rho"] = p.sky_divisor;
    j["alpha"] = p.gamma_strength;
    j["beta"] = p.point_intensity;
    j["xi"] = {p.attenuation_constant, p.attenuation_linear, p.attenuation_quadratic};
    j["noise_sigma"] = p.noise_sigma;
    j["light_count"] = {p.light_count_min, p.light_count_max};
    j["cone_half_angle"] = {p.cone_half_angle_min, p.cone_half_angle_max};
    ordered_json palette = ordered_json::array();
    for (const auto& tint : p.palette) palette.push_back({tint[0], tint[1], tint[2]});
    j["palette"] = palette;
    j["illumination_source"] = p.illumination_source == IlluminationSource::Depth ? "depth" : "inverse-depth";
    j["lights_whole_frame"] = p.lights_whole_frame;
    return j;
}

SynthesisParams params_from_json(const ordered_json& j) {
    SynthesisParams p;
    p.sky_threshold = j.at("varrho").get<double>();
    p.sky_target_mean = j.at("mu").get<double>();
    p.sky_illumination = j.at("phi1").get<double>();
    p.ground_illumination = j.at("phi2").get<double>();
    p.sky_divisor = j.at("rho").get<double>();
    p.gamma_strength = j.at("alpha").get<double>();
    p.point_intensity = j.at("beta").get<double>();
    p.attenuation_constant = j.at("xi").at(0).get<double>();
    p.attenuation_linear = j.at("xi").at(1).get<double>();
    p.attenuation_quadratic = j.at("xi").at(2).get<double>();
    p.noise_sigma = j.at("noise_sigma").get<double>();
    p.light_count_min = j.at("light_count").at(0).get<int>();
    p.light_count_max = j.at("light_count").at(1).get<int>();
    p.cone_half_angle_min = j.at("cone_half_angle").at(0).get<double>();
    p.cone_half_angle_max = j.at("cone_half_angle").at(1).get<double>();
    p.palette.clear();
    for (const auto& entry : j.at("palette")) {
        p.palette.push_back({entry.at(0).get<double>(), entry.at(1).get<double>(), entry.at(2).get<double>()});
    }
    const std::string source = j.at("illumination_source").get<std::string>();
    p.illumination_source = source == "depth" ? IlluminationSource::Depth : IlluminationSource::InverseDepth;
    p.lights_whole_frame = j.at("lights_whole_frame").get<bool>();
    return p;
}

ordered_json optional_to_json(const std::optional<double>& v) {
    if (v.has_value()) return *v;
    return nullptr;
}

std::optional<double> optional_from_json(const ordered_json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

ordered_json light_to_json(const LightSource& light) {
    ordered_json j;
    j["kind"] = light.kind == LightKind::Point ? "point" : "cone";
    j["center"] = {light.center_row, light.center_col};
    j["intensity"] = light.intensity;
    j["tint"] = {light.tint[0], light.tint[1], light.tint[2]};
    j["axis"] = {light.axis_row, light.axis_col};
    j["half_angle"] = light.half_angle;
    j["attenuation"] = {light.attenuation_constant, light.attenuation_linear, light.attenuation_quadratic};
    return j;
}

LightSource light_from_json(const ordered_json& j) {
    LightSource light;
    light.kind = j.at("kind").get<std::string>() == "point" ? LightKind::Point : LightKind::Cone;
    light.center_row = j.at("center").at(0).get<int>();
    light.center_col = j.at("center").at(1).get<int>();
    light.intensity = j.at("intensity").get<double>();
    light.tint = {j.at("tint").at(0).get<double>(), j.at("tint").at(1).get<double>(),
                  j.at("tint").at(2).get<double>()};
    light.axis_row = j.at("axis").at(0).get<double>();
    light.axis_col = j.at("axis").at(1).get<double>();
    light.half_angle = j.at("half_angle").get<double>();
    light.attenuation_constant = j.at("attenuation").at(0).get<double>();
    light.attenuation_linear = j.at("attenuation").at(1).get<double>();
    light.attenuation_quadratic = j.at("attenuation").at(2).get<double>();
    return light;
}

ordered_json record_to_json(const PairRecord& record) {
    ordered_json j;
    j["status"] = record.status;
    j["input"] = record.input_path;
    j["depth"] = record.depth_path;
    j["stream_index"] = record.stream_index;
    j["hazy"] = record.hazy_path;
    j["clear"] = record.clear_path;
    j["label"] = record.label_path;
    j["mask_override"] = record.mask_override;
    j["sky_fraction"] = optional_to_json(record.sky_fraction);
    j["pre_mean_luminance"] = optional_to_json(record.pre_mean_luminance);
    j["post_mean_luminance"] = optional_to_json(record.post_mean_luminance);
    j["post_gamma_non_sky_mean"] = optional_to_json(record.post_gamma_non_sky_mean);
    j["final_sky_mean"] = optional_to_json(record.final_sky_mean);
    j["final_non_sky_mean"] = optional_to_json(record.final_non_sky_mean);
    ordered_json lights = ordered_json::array();
    for (const LightSource& light : record.lights) lights.push_back(light_to_json(light));
    j["lights"] = lights;
    j["error"] = record.error;
    return j;
}

PairRecord record_from_json(const ordered_json& j) {
    PairRecord record;
    record.status = j.at("status").get<std::string>();
    record.input_path = j.at("input").get<std::string>();
    record.depth_path = j.at("depth").get<std::string>();
    record.stream_index = j.at("stream_index").get<std::uint64_t>();
    record.hazy_path = j.at("hazy").get<std::string>();
    record.clear_path = j.at("clear").get<std::string>();
    record.label_path = j.at("label").get<std::string>();
    record.mask_override = j.at("mask_override").get<bool>();
    record.sky_fraction = optional_from_json(j.at("sky_fraction"));
    record.pre_mean_luminance = optional_from_json(j.at("pre_mean_luminance"));
    record.post_mean_luminance = optional_from_json(j.at("post_mean_luminance"));
    record.post_gamma_non_sky_mean = optional_from_json(j.at("post_gamma_non_sky_mean"));
    record.final_sky_mean = optional_from_json(j.at("final_sky_mean"));
    record.final_non_sky_mean = optional_from_json(j.at("final_non_sky_mean"));
    for (const auto& light : j.at("lights")) record.lights.push_back(light_from_json(light));
    record.error = j.at("error").get<std::string>();
    return record;
}

/// Mean luminance over one mask region; empty region yields no value.
std::optional<double> region_mean(const Image& img, const SkyMask& sky, bool want_sky) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        if (static_cast<bool>(sky.data[i]) != want_sky) continue;
        sum += luminance(img.data[i * 3], img.data[i * 3 + 1], img.data[i * 3 + 2]);
        ++count;
    }
    if (count == 0) return std::nullopt;
    return sum / static_cast<double>(count);
}

} // namespace

std::string DatasetManifest::serialize() const {
    ordered_json j;
    j["version"] = version;
    j["master_seed"] = master_seed;
    j["params"] = params_to_json(params);
    j["label_grid"] = {grid_height, grid_width};
    j["resize"] = resize;
    ordered_json record_array = ordered_json::array();
    for (const PairRecord& record : records) record_array.push_back(record_to_json(record));
    j["records"] = record_array;
    return j.dump(2) + "\n";
}

DatasetManifest DatasetManifest::parse(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        fail(ErrorCode::Format, std::string("manifest is not valid JSON: ") + e.what());
    }
    DatasetManifest manifest;
    try {
        manifest.version = j.at("version").get<std::string>();
        manifest.master_seed = j.at("master_seed").get<std::uint64_t>();
        manifest.params = params_from_json(j.at("params"));
        manifest.grid_height = j.at("label_grid").at(0).get<int>();
        manifest.grid_width = j.at("label_grid").at(1).get<int>();
        manifest.resize = j.at("resize").get<int>();
        for (const auto& record : j.at("records")) manifest.records.push_back(record_from_json(record));
    } catch (const ordered_json::exception& e) {
        fail(ErrorCode::Format, std::string("manifest schema mismatch: ") + e.what());
    }
    return manifest;
}

SynthesisOutput synthesize_pair(const Image& clear, const DepthMap& depth, const SynthesisParams& params,
                                int grid_height, int grid_width, const RngStream& rng,
                                const SkyMask* mask_override, std::vector<std::string>* warnings) {
    clear.validate();
    if (depth.width != clear.width || depth.height != clear.height)
        fail(ErrorCode::InvalidArgument, "depth dimensions do not match image");
    if (mask_override != nullptr && (mask_override->width != clear.width || mask_override->height != clear.height))
        fail(ErrorCode::InvalidArgument, "sky mask dimensions do not match image");
    params.validate();

    auto warn = [&](const std::string& message) {
        if (warnings != nullptr) warnings->push_back(message);
    };

    SynthesisOutput out;
    out.sky = mask_override != nullptr ? *mask_override : segment_sky(depth, params.sky_threshold);
    const IlluminationMask illum = build_illumination_mask(depth, out.sky, params.sky_illumination,
                                                           params.ground_illumination, params.illumination_source);
    const double sky_fraction = out.sky.sky_fraction();
    const bool whole_frame_sky = out.sky.sky_count() == out.sky.data.size();

    PairRecord& record = out.record;
    record.mask_override = mask_override != nullptr;
    record.sky_fraction = sky_fraction;
    record.pre_mean_luminance = mean_luminance(clear);

    Image work = clear;
    if (whole_frame_sky) {
        warn("whole frame classified as sky; skipping sky darkening and sky mean adjustment");
    } else {
        work = darken_sky(work, out.sky, params.sky_divisor);
    }
    work = pixelwise_gamma(work, illum, params.gamma_strength);
    record.post_gamma_non_sky_mean = region_mean(work, out.sky, false);
    if (!whole_frame_sky) {
        SkyMeanOutcome outcome = SkyMeanOutcome::Adjusted;
        work = adjust_sky_mean(work, out.sky, params.sky_target_mean, &outcome);
        if (outcome == SkyMeanOutcome::ZeroMean)
            warn("sky region is fully black after gamma; sky mean adjustment skipped");
    }

    RngStream light_rng = rng.substream(draw_purpose::lights);
    record.lights = sample_lights(light_rng, params, out.sky);
    std::vector<GlowLayer> glows;
    glows.reserve(record.lights.size());
    for (const LightSource& light : record.lights) glows.push_back(render_light(light, clear.height, clear.width));

    RngStream noise_rng = rng.substream(draw_purpose::noise);
    const NoiseField noise = make_noise(noise_rng, clear.height, clear.width, params.noise_sigma);

    out.hazy = compose_hazy(work, glows, noise);
    out.label = brightness_label(out.hazy, grid_height, grid_width);
    record.post_mean_luminance = mean_luminance(out.hazy);
    record.final_sky_mean = region_mean(out.hazy, out.sky, true);
    record.final_non_sky_mean = region_mean(out.hazy, out.sky, false);
    return out;
}

namespace {

struct Task {
    std::string stem;
    fs::path input;
    fs::path depth;
    fs::path mask;
    bool has_depth = false;
    bool has_mask = false;
    std::uint64_t stream_index = 0;
};

PairRecord process_task(const Task& task, const PipelineConfig& config, const RunOptions& options,
                        std::uint64_t seed, std::vector<std::string>& task_warnings) {
    PairRecord record;
    record.input_path = task.input.filename().string();
    record.depth_path = task.has_depth ? task.depth.filename().string() : "";
    record.stream_index = task.stream_index;
    try {
        if (!task.has_depth) fail(ErrorCode::Io, "no matching depth file (.pfm or .png) for " + task.stem);
        Image clear = load_image(task.input.string());
        DepthMap depth = load_depth(task.depth.string());
        SkyMask mask;
        if (task.has_mask) mask = load_mask(task.mask.string());
        if (options.resize > 0) {
            clear = resize_bilinear(clear, options.resize, options.resize);
            depth = resize_bilinear(depth, options.resize, options.resize);
            if (task.has_mask) mask = resize_nearest(mask, options.resize, options.resize);
        }

        const int grid_h = std::min(config.grid_height, clear.height);
        const int grid_w = std::min(config.grid_width, clear.width);
        const RngStream rng(seed, task.stream_index);
        SynthesisOutput out = synthesize_pair(clear, depth, config.params, grid_h, grid_w, rng,
                                              task.has_mask ? &mask : nullptr, &task_warnings);

        PairRecord result = out.record;
        result.input_path = record.input_path;
        result.depth_path = record.depth_path;
        result.stream_index = record.stream_index;
        result.hazy_path = task.stem + "_hazy.png";
        result.clear_path = task.stem + "_clear.png";
        result.label_path = task.stem + "_label.png";

        const fs::path out_root(options.output_dir);
        save_image(out.hazy, (out_root / result.hazy_path).string());
        if (options.resize > 0) {
            save_image(clear, (out_root / result.clear_path).string());
        } else {
            fs::copy_file(task.input, out_root / result.clear_path, fs::copy_options::overwrite_existing);
        }
        save_gray8(out.label.data, out.label.grid_width, out.label.grid_height,
                   (out_root / result.label_path).string());
        return result;
    } catch (const std::exception& e) {
        record.status = "failed";
        record.error = e.what();
        return record;
    }
}

} // namespace

DatasetManifest run_pipeline(const RunOptions& options, RunSummary* summary) {
    std::vector<std::string> warnings;
    PipelineConfig config;
    if (!options.config_path.empty()) config = load_config(options.config_path, &warnings);
    if (options.resize < 0) fail(ErrorCode::InvalidArgument, "resize must be >= 0");

    std::uint64_t seed = 0;
    if (options.has_seed) {
        seed = options.seed;
    } else if (const char* env = std::getenv("NIGHTFORGE_SEED")) {
        const std::string text(env);
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed, 10);
        if (ec != std::errc() || ptr != text.data() + text.size())
            fail(ErrorCode::Config, "NIGHTFORGE_SEED: not a valid unsigned integer: " + text);
    }

    if (!fs::is_directory(options.input_dir)) fail(ErrorCode::Io, "input dir not found: " + options.input_dir);
    if (!fs::is_directory(options.depth_dir)) fail(ErrorCode::Io, "depth dir not found: " + options.depth_dir);
    if (!options.sky_mask_dir.empty() && !fs::is_directory(options.sky_mask_dir))
        fail(ErrorCode::Io, "sky mask dir not found: " + options.sky_mask_dir);

    std::vector<fs::path> inputs;
    for (const auto& entry : fs::directory_iterator(options.input_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".png") inputs.push_back(entry.path());
    }
    std::sort(inputs.begin(), inputs.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
    if (inputs.empty()) fail(ErrorCode::Io, "no .png images in input dir " + options.input_dir);

    std::vector<Task> tasks;
    tasks.reserve(inputs.size());
    std::size_t matched = 0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        Task task;
        task.stem = inputs[i].stem().string();
        task.input = inputs[i];
        task.stream_index = i;
        const fs::path pfm = fs::path(options.depth_dir) / (task.stem + ".pfm");
        const fs::path dpng = fs::path(options.depth_dir) / (task.stem + ".png");
        if (fs::is_regular_file(pfm)) {
            task.depth = pfm;
            task.has_depth = true;
        } else if (fs::is_regular_file(dpng)) {
            task.depth = dpng;
            task.has_depth = true;
        }
        if (task.has_depth) ++matched;
        if (!options.sky_mask_dir.empty()) {
            const fs::path mask = fs::path(options.sky_mask_dir) / (task.stem + ".png");
            if (fs::is_regular_file(mask)) {
                task.mask = mask;
                task.has_mask = true;
            }
        }
        tasks.push_back(std::move(task));
    }
    if (matched == 0) fail(ErrorCode::Io, "no input image has a matching depth file in " + options.depth_dir);

    fs::create_directories(options.output_dir);

    int jobs = options.jobs_override >= 0 ? options.jobs_override : config.jobs;
    if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs <= 0) jobs = 1;
    jobs = std::min<int>(jobs, static_cast<int>(tasks.size()));

    std::vector<PairRecord> records(tasks.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::mutex sink_mutex;
    std::string first_error;

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            if (options.strict && stop.load()) return;
            std::vector<std::string> task_warnings;
            PairRecord record = process_task(tasks[i], config, options, seed, task_warnings);
            {
                std::lock_guard<std::mutex> lock(sink_mutex);
                for (const std::string& w : task_warnings) warnings.push_back(tasks[i].stem + ": " + w);
                if (record.status == "failed" && first_error.empty())
                    first_error = record.input_path + ": " + record.error;
            }
            if (record.status == "failed" && options.strict) stop.store(true);
            records[i] = std::move(record);
        }
    };

    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (std::thread& thread : pool) thread.join();
    }

    if (options.strict && stop.load()) fail(ErrorCode::Runtime, "strict mode: " + first_error);

    DatasetManifest manifest;
    manifest.master_seed = seed;
    manifest.params = config.params;
    manifest.grid_height = config.grid_height;
    manifest.grid_width = config.grid_width;
    manifest.resize = options.resize;
    manifest.records = std::move(records);
    std::sort(manifest.records.begin(), manifest.records.end(),
              [](const PairRecord& a, const PairRecord& b) { return a.stream_index < b.stream_index; });

    const fs::path manifest_path = fs::path(options.output_dir) / "manifest.json";
    {
        std::ofstream out(manifest_path, std::ios::binary);
        if (!out) fail(ErrorCode::Io, "cannot write " + manifest_path.string());
        out << manifest.serialize();
        if (!out) fail(ErrorCode::Io, "failed writing " + manifest_path.string());
    }

    if (summary != nullptr) {
        summary->successes = 0;
        summary->failures = 0;
        for (const PairRecord& record : manifest.records) {
            if (record.status == "ok") {
                ++summary->successes;
            } else {
                ++summary->failures;
            }
        }
        summary->warnings = warnings;
        summary->manifest_path = manifest_path.string();
    }
    return manifest;
}

} // namespace nightforge
