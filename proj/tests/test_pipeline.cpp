#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/io.hpp"
#include "core/pipeline.hpp"
#include "support/fixtures.hpp"

using namespace nightforge;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_depth_pfm(const DepthMap& depth, const fs::path& path) {
    std::vector<float> values(depth.data.begin(), depth.data.end());
    save_pfm(values, depth.width, depth.height, path.string());
}

/// input/<stem>.png + depth/<stem>.(pfm|png) scene pair.
void write_pair(const fs::path& root, const std::string& stem, int w, int h, double sky_fraction,
                std::uint64_t seed, bool pfm_depth = true) {
    fs::create_directories(root / "input");
    fs::create_directories(root / "depth");
    save_image(testing::make_day_scene(w, h, sky_fraction, seed), (root / "input" / (stem + ".png")).string());
    const DepthMap depth = testing::make_scene_depth(w, h, sky_fraction);
    if (pfm_depth) {
        write_depth_pfm(depth, root / "depth" / (stem + ".pfm"));
    } else {
        save_gray8(depth.data, depth.width, depth.height, (root / "depth" / (stem + ".png")).string());
    }
}

RunOptions base_options(const fs::path& root, const std::string& out_name) {
    RunOptions opt;
    opt.input_dir = (root / "input").string();
    opt.depth_dir = (root / "depth").string();
    opt.output_dir = (root / out_name).string();
    opt.has_seed = true;
    opt.seed = 7;
    opt.jobs_override = 1;
    return opt;
}

} // namespace

TEST_CASE("neutral settings leave the image bit-identical") {
    // Exponent = 4 * (0.5 depth * 0.5 scale) = 1 exactly, no sky pixels, no
    // lights, no noise: every stage hits its identity path.
    const Image clear = testing::make_day_scene(32, 24, 0.0, 3);
    const DepthMap depth = DepthMap::create(32, 24, 0.5);
    SynthesisParams params;
    params.ground_illumination = 0.5;
    params.gamma_strength = 4.0;
    params.sky_divisor = 1.0;
    params.light_count_min = 0;
    params.light_count_max = 0;
    params.noise_sigma = 0.0;

    const SynthesisOutput out = synthesize_pair(clear, depth, params, 4, 4, RngStream(1, 0));
    REQUIRE(out.hazy.data == clear.data);
    CHECK(out.record.lights.empty());
    CHECK(*out.record.sky_fraction == 0.0);
    CHECK(*out.record.pre_mean_luminance == *out.record.post_mean_luminance);
    CHECK(!out.record.final_sky_mean.has_value());

    const BrightnessMap expected = brightness_label(clear, 4, 4);
    CHECK(out.label.data == expected.data);
}

TEST_CASE("synthesis is a pure function of inputs and stream key") {
    const Image clear = testing::make_day_scene(48, 40, 0.35, 9);
    const DepthMap depth = testing::make_scene_depth(48, 40, 0.35);
    const SynthesisParams params;

    const SynthesisOutput a = synthesize_pair(clear, depth, params, 8, 8, RngStream(99, 7));
    const SynthesisOutput b = synthesize_pair(clear, depth, params, 8, 8, RngStream(99, 7));
    CHECK(a.hazy.data == b.hazy.data);
    CHECK(a.label.data == b.label.data);
    REQUIRE(a.record.lights.size() == b.record.lights.size());
    for (std::size_t i = 0; i < a.record.lights.size(); ++i) {
        CHECK(a.record.lights[i].center_row == b.record.lights[i].center_row);
        CHECK(a.record.lights[i].center_col == b.record.lights[i].center_col);
        CHECK(a.record.lights[i].kind == b.record.lights[i].kind);
    }

    const SynthesisOutput c = synthesize_pair(clear, depth, params, 8, 8, RngStream(99, 8));
    CHECK(a.hazy.data != c.hazy.data);
}

TEST_CASE("default settings darken a daytime scene") {
    const Image clear = testing::make_day_scene(64, 48, 0.4, 11);
    const DepthMap depth = testing::make_scene_depth(64, 48, 0.4);
    const SynthesisOutput out = synthesize_pair(clear, depth, SynthesisParams{}, 8, 8, RngStream(4242, 0));
    CHECK(*out.record.post_mean_luminance < *out.record.pre_mean_luminance);
    CHECK(*out.record.sky_fraction == doctest::Approx(0.4).epsilon(0.15));
    CHECK(out.record.final_sky_mean.has_value());
    CHECK(out.record.final_non_sky_mean.has_value());
    CHECK(out.record.lights.size() == 1);
}

TEST_CASE("whole-frame sky skips darkening and mean adjustment") {
    const Image clear = testing::make_day_scene(16, 16, 0.0, 2);
    const DepthMap depth = DepthMap::create(16, 16, 0.0); // 1 - 0 >= threshold everywhere

    SynthesisParams params;
    params.sky_divisor = 100.0;     // would crush the frame if applied
    params.sky_target_mean = 0.01;  // would crush it again if applied
    params.light_count_min = 0;
    params.light_count_max = 0;
    params.noise_sigma = 0.0;

    std::vector<std::string> warnings;
    const SynthesisOutput out = synthesize_pair(clear, depth, params, 4, 4, RngStream(5, 0), nullptr, &warnings);

    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("whole frame") != std::string::npos);
    CHECK(*out.record.sky_fraction == 1.0);
    CHECK(!out.record.final_non_sky_mean.has_value());
    // Depth 0 drives the gamma exponent to 0, so every pixel lands on 1.0 and
    // stays there because both sky-specific stages were skipped.
    for (double v : out.hazy.data) CHECK(v == 1.0);
}

TEST_CASE("mismatched rasters are rejected") {
    const Image clear = testing::make_day_scene(16, 16, 0.2, 1);
    const DepthMap narrow = DepthMap::create(15, 16, 0.5);
    CHECK_THROWS_AS(synthesize_pair(clear, narrow, SynthesisParams{}, 4, 4, RngStream(1, 0)), Error);

    const DepthMap depth = DepthMap::create(16, 16, 0.5);
    const SkyMask bad_mask = SkyMask::create(16, 15);
    CHECK_THROWS_AS(synthesize_pair(clear, depth, SynthesisParams{}, 4, 4, RngStream(1, 0), &bad_mask), Error);
}

TEST_CASE("manifest serialization round-trips losslessly") {
    DatasetManifest manifest;
    manifest.master_seed = 0xdeadbeef12345678ull;
    manifest.params.sky_threshold = 0.97;
    manifest.params.point_intensity = 1.0 / 3.0; // exercises shortest-repr doubles
    manifest.grid_height = 4;
    manifest.grid_width = 16;
    manifest.resize = 256;

    PairRecord ok;
    ok.input_path = "a.png";
    ok.depth_path = "a.pfm";
    ok.stream_index = 0;
    ok.hazy_path = "a_hazy.png";
    ok.clear_path = "a_clear.png";
    ok.label_path = "a_label.png";
    ok.sky_fraction = 0.25;
    ok.pre_mean_luminance = 0.7;
    ok.post_mean_luminance = 1.0 / 7.0;
    ok.post_gamma_non_sky_mean = 0.3;
    ok.final_sky_mean = 0.85;
    ok.final_non_sky_mean = 0.2;
    LightSource point;
    point.kind = LightKind::Point;
    point.center_row = 3;
    point.center_col = 9;
    point.intensity = 1.0;
    point.tint = {0.55, 0.41, 0.19};
    LightSource cone;
    cone.kind = LightKind::Cone;
    cone.center_row = 5;
    cone.center_col = 2;
    cone.intensity = 1.0;
    cone.tint = {0.5, 0.52, 0.55};
    cone.axis_row = 0.8660254037844386;
    cone.axis_col = 0.5;
    cone.half_angle = 0.7;
    ok.lights = {point, cone};

    PairRecord failed;
    failed.status = "failed";
    failed.input_path = "b.png";
    failed.stream_index = 1;
    failed.error = "no matching depth file (.pfm or .png) for b";

    manifest.records = {ok, failed};

    const std::string text = manifest.serialize();
    const DatasetManifest parsed = DatasetManifest::parse(text);
    CHECK(parsed.serialize() == text);

    CHECK(parsed.master_seed == manifest.master_seed);
    CHECK(parsed.params.point_intensity == manifest.params.point_intensity);
    CHECK(parsed.grid_width == 16);
    REQUIRE(parsed.records.size() == 2);
    CHECK(parsed.records[0].post_mean_luminance == ok.post_mean_luminance);
    CHECK(parsed.records[0].lights[1].axis_row == cone.axis_row);
    CHECK(parsed.records[1].status == "failed");
    CHECK(!parsed.records[1].sky_fraction.has_value());
    CHECK(parsed.records[1].error == failed.error);

    CHECK(text.find("\"version\": \"nightforge-manifest v1\"") != std::string::npos);
    CHECK_THROWS_AS(DatasetManifest::parse("{"), Error);
    CHECK_THROWS_AS(DatasetManifest::parse(R"({"version": "nightforge-manifest v1"})"), Error);
}

TEST_CASE("run_pipeline writes a complete output tree") {
    testing::TempDir tmp("run");
    write_pair(tmp.path(), "a", 48, 32, 0.4, 21, true);
    write_pair(tmp.path(), "b", 48, 32, 0.3, 22, false); // depth supplied as PNG
    write_pair(tmp.path(), "c", 48, 32, 0.5, 23, true);

    RunSummary summary;
    const DatasetManifest manifest = run_pipeline(base_options(tmp.path(), "out"), &summary);

    CHECK(summary.successes == 3);
    CHECK(summary.failures == 0);
    CHECK(manifest.master_seed == 7);
    REQUIRE(manifest.records.size() == 3);
    CHECK(manifest.records[0].input_path == "a.png");
    CHECK(manifest.records[1].depth_path == "b.png");
    CHECK(manifest.records[2].input_path == "c.png");
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(manifest.records[i].status == "ok");
        CHECK(manifest.records[i].stream_index == i);
    }

    const fs::path out = tmp.path() / "out";
    for (const std::string stem : {"a", "b", "c"}) {
        CHECK(fs::exists(out / (stem + "_hazy.png")));
        CHECK(fs::exists(out / (stem + "_clear.png")));
        CHECK(fs::exists(out / (stem + "_label.png")));
    }
    REQUIRE(fs::exists(out / "manifest.json"));

    // Unresized runs copy the source bytes verbatim.
    CHECK(slurp(out / "a_clear.png") == slurp(tmp.path() / "input" / "a.png"));

    // The manifest on disk equals the returned one.
    const DatasetManifest reloaded = DatasetManifest::parse(slurp(out / "manifest.json"));
    CHECK(reloaded.serialize() == manifest.serialize());

    // Labels are 8x8 grids stored as grayscale.
    const Image label = load_image((out / "a_label.png").string());
    CHECK(label.width == 8);
    CHECK(label.height == 8);
}

TEST_CASE("output bytes are independent of the job count") {
    testing::TempDir tmp("jobs");
    write_pair(tmp.path(), "a", 40, 30, 0.4, 31);
    write_pair(tmp.path(), "b", 40, 30, 0.3, 32);
    write_pair(tmp.path(), "c", 40, 30, 0.5, 33);
    write_pair(tmp.path(), "d", 40, 30, 0.45, 34);

    RunOptions serial = base_options(tmp.path(), "out1");
    serial.jobs_override = 1;
    run_pipeline(serial);

    RunOptions parallel = base_options(tmp.path(), "out4");
    parallel.jobs_override = 4;
    run_pipeline(parallel);

    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(tmp.path() / "out1")) names.push_back(entry.path().filename().string());
    std::sort(names.begin(), names.end());
    REQUIRE(names.size() == 13); // 4 triples + manifest
    for (const std::string& name : names) {
        CAPTURE(name);
        CHECK(slurp(tmp.path() / "out1" / name) == slurp(tmp.path() / "out4" / name));
    }
}

TEST_CASE("a missing depth file fails that pair only") {
    testing::TempDir tmp("partial");
    write_pair(tmp.path(), "a", 32, 24, 0.4, 41);
    write_pair(tmp.path(), "c", 32, 24, 0.4, 43);
    save_image(testing::make_day_scene(32, 24, 0.4, 42), (tmp.path() / "input" / "b.png").string());

    RunSummary summary;
    const DatasetManifest manifest = run_pipeline(base_options(tmp.path(), "out"), &summary);
    CHECK(summary.successes == 2);
    CHECK(summary.failures == 1);
    REQUIRE(manifest.records.size() == 3);
    CHECK(manifest.records[1].input_path == "b.png");
    CHECK(manifest.records[1].status == "failed");
    CHECK(manifest.records[1].error.find("depth") != std::string::npos);
    CHECK(!fs::exists(tmp.path() / "out" / "b_hazy.png"));
    CHECK(fs::exists(tmp.path() / "out" / "a_hazy.png"));
    CHECK(fs::exists(tmp.path() / "out" / "manifest.json"));
}

TEST_CASE("strict mode aborts the run on the first failure") {
    testing::TempDir tmp("strict");
    write_pair(tmp.path(), "a", 32, 24, 0.4, 51);
    save_image(testing::make_day_scene(32, 24, 0.4, 52), (tmp.path() / "input" / "b.png").string());

    RunOptions opt = base_options(tmp.path(), "out");
    opt.strict = true;
    CHECK_THROWS_AS(run_pipeline(opt), Error);
}

TEST_CASE("degenerate input directories are errors") {
    testing::TempDir tmp("degenerate");
    fs::create_directories(tmp.path() / "input");
    fs::create_directories(tmp.path() / "depth");

    CHECK_THROWS_AS(run_pipeline(base_options(tmp.path(), "out")), Error); // no inputs

    save_image(testing::make_day_scene(16, 16, 0.3, 1), (tmp.path() / "input" / "a.png").string());
    CHECK_THROWS_AS(run_pipeline(base_options(tmp.path(), "out")), Error); // nothing matches

    RunOptions opt = base_options(tmp.path(), "out");
    opt.input_dir = (tmp.path() / "missing").string();
    CHECK_THROWS_AS(run_pipeline(opt), Error);
}

TEST_CASE("seed resolution prefers the flag over the environment") {
    testing::TempDir tmp("seed");
    write_pair(tmp.path(), "a", 16, 16, 0.3, 61);

    setenv("NIGHTFORGE_SEED", "123", 1);
    RunOptions env_opt = base_options(tmp.path(), "out_env");
    env_opt.has_seed = false;
    CHECK(run_pipeline(env_opt).master_seed == 123);

    RunOptions flag_opt = base_options(tmp.path(), "out_flag");
    flag_opt.has_seed = true;
    flag_opt.seed = 9;
    CHECK(run_pipeline(flag_opt).master_seed == 9);

    setenv("NIGHTFORGE_SEED", "12cows", 1);
    RunOptions bad_opt = base_options(tmp.path(), "out_bad");
    bad_opt.has_seed = false;
    CHECK_THROWS_AS(run_pipeline(bad_opt), Error);

    unsetenv("NIGHTFORGE_SEED");
    RunOptions none_opt = base_options(tmp.path(), "out_none");
    none_opt.has_seed = false;
    CHECK(run_pipeline(none_opt).master_seed == 0);
}

TEST_CASE("per-image sky masks override threshold segmentation") {
    testing::TempDir tmp("mask");
    write_pair(tmp.path(), "a", 32, 32, 0.25, 71);
    write_pair(tmp.path(), "b", 32, 32, 0.25, 72);

    // Mask for "a" only: top half sky. "b" falls back to segmentation.
    fs::create_directories(tmp.path() / "masks");
    std::vector<double> mask_values(32 * 32, 0.0);
    for (int i = 0; i < 32 * 16; ++i) mask_values[static_cast<std::size_t>(i)] = 1.0;
    save_gray8(mask_values, 32, 32, (tmp.path() / "masks" / "a.png").string());

    RunOptions opt = base_options(tmp.path(), "out");
    opt.sky_mask_dir = (tmp.path() / "masks").string();
    const DatasetManifest manifest = run_pipeline(opt);

    REQUIRE(manifest.records.size() == 2);
    CHECK(manifest.records[0].mask_override);
    CHECK(*manifest.records[0].sky_fraction == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(!manifest.records[1].mask_override);
    CHECK(*manifest.records[1].sky_fraction == doctest::Approx(0.25).epsilon(0.2));
}

TEST_CASE("resize rescales every artifact") {
    testing::TempDir tmp("resize");
    write_pair(tmp.path(), "a", 48, 36, 0.4, 81);

    RunOptions opt = base_options(tmp.path(), "out");
    opt.resize = 16;
    const DatasetManifest manifest = run_pipeline(opt);
    CHECK(manifest.resize == 16);

    const Image hazy = load_image((tmp.path() / "out" / "a_hazy.png").string());
    CHECK(hazy.width == 16);
    CHECK(hazy.height == 16);
    const Image clear = load_image((tmp.path() / "out" / "a_clear.png").string());
    CHECK(clear.width == 16);
    CHECK(clear.height == 16);

    RunOptions bad = base_options(tmp.path(), "out_bad");
    bad.resize = -3;
    CHECK_THROWS_AS(run_pipeline(bad), Error);
}
