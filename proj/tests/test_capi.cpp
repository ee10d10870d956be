#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include <nightforge/nightforge.h>

#include "core/io.hpp"
#include "support/fixtures.hpp"

namespace fs = std::filesystem;
using nightforge::testing::TempDir;

namespace {

/// RAII error slot: fails the test with the message if one is left behind.
struct ErrSlot {
    char* msg = nullptr;
    ~ErrSlot() { nf_string_free(msg); }
    char** out() { return &msg; }
    std::string str() const { return msg != nullptr ? msg : ""; }
};

void write_scene_pair(const fs::path& root, const std::string& stem, int w, int h) {
    fs::create_directories(root / "input");
    fs::create_directories(root / "depth");
    nightforge::save_image(nightforge::testing::make_day_scene(w, h, 0.4, 17),
                           (root / "input" / (stem + ".png")).string());
    const nightforge::DepthMap depth = nightforge::testing::make_scene_depth(w, h, 0.4);
    std::vector<float> values(depth.data.begin(), depth.data.end());
    nightforge::save_pfm(values, depth.width, depth.height, (root / "depth" / (stem + ".pfm")).string());
}

} // namespace

TEST_CASE("version string is present") {
    const char* v = nf_version();
    REQUIRE(v != nullptr);
    CHECK(std::strlen(v) > 0);
}

TEST_CASE("image create, save, load round trip") {
    TempDir tmp("capi_img");
    std::vector<double> data(4 * 3 * 3, 0.0);
    for (std::size_t i = 0; i < data.size(); ++i) data[i] = (i % 7) / 7.0;

    ErrSlot err;
    nf_image* img = nullptr;
    REQUIRE(nf_image_create(4, 3, data.data(), &img, err.out()) == NF_OK);
    CHECK(nf_image_width(img) == 4);
    CHECK(nf_image_height(img) == 3);
    const double* borrowed = nf_image_data(img);
    REQUIRE(borrowed != nullptr);
    CHECK(borrowed[5] == data[5]);

    const fs::path path = tmp.path() / "img.png";
    REQUIRE(nf_image_save(img, path.string().c_str(), err.out()) == NF_OK);

    nf_image* loaded = nullptr;
    REQUIRE(nf_image_load(path.string().c_str(), &loaded, err.out()) == NF_OK);
    CHECK(nf_image_width(loaded) == 4);
    const double* roundtrip = nf_image_data(loaded);
    for (std::size_t i = 0; i < data.size(); ++i) CHECK(std::abs(roundtrip[i] - data[i]) <= 1.0 / 510.0);

    double mean = 0.0;
    REQUIRE(nf_image_mean_luminance(img, &mean, err.out()) == NF_OK);
    double expected = 0.0;
    for (double v : data) expected += v;
    expected /= static_cast<double>(data.size());
    CHECK(mean == doctest::Approx(expected).epsilon(1e-12));

    nf_image_free(loaded);
    nf_image_free(img);
}

TEST_CASE("invalid image construction reports the failure") {
    ErrSlot err;
    nf_image* img = nullptr;
    CHECK(nf_image_create(0, 3, nullptr, &img, err.out()) == NF_ERR_INVALID_ARGUMENT);
    CHECK(img == nullptr);
    CHECK(!err.str().empty());

    std::vector<double> bad(1 * 1 * 3, 2.0); // out of range
    nf_image* img2 = nullptr;
    CHECK(nf_image_create(1, 1, bad.data(), &img2, err.out()) == NF_ERR_INVALID_ARGUMENT);
    CHECK(img2 == nullptr);

    nf_image* img3 = nullptr;
    CHECK(nf_image_load("/nonexistent/nowhere.png", &img3, err.out()) == NF_ERR_IO);
    CHECK(img3 == nullptr);
}

TEST_CASE("NULL arguments are invalid, not fatal") {
    ErrSlot err;
    CHECK(nf_image_load(nullptr, nullptr, err.out()) == NF_ERR_INVALID_ARGUMENT);
    CHECK(nf_image_save(nullptr, "x.png", err.out()) == NF_ERR_INVALID_ARGUMENT);
    CHECK(nf_image_mean_luminance(nullptr, nullptr, err.out()) == NF_ERR_INVALID_ARGUMENT);
    CHECK(nf_depth_load(nullptr, nullptr, err.out()) == NF_ERR_INVALID_ARGUMENT);
    CHECK(nf_params_from_json(nullptr, nullptr, err.out()) == NF_ERR_INVALID_ARGUMENT);
    CHECK(nf_run_synth(nullptr, nullptr, err.out()) == NF_ERR_INVALID_ARGUMENT);
    CHECK(nf_run_report(nullptr, err.out()) == NF_ERR_INVALID_ARGUMENT);
    CHECK(nf_image_width(nullptr) == 0);
    CHECK(nf_image_data(nullptr) == nullptr);
    nf_image_free(nullptr);
    nf_depth_free(nullptr);
    nf_params_free(nullptr);
    nf_string_free(nullptr);
    nf_buffer_free(nullptr);
}

TEST_CASE("depth load normalizes a PFM") {
    TempDir tmp("capi_depth");
    const fs::path path = tmp.path() / "d.pfm";
    nightforge::save_pfm({3.0f, 7.0f}, 2, 1, path.string());

    ErrSlot err;
    nf_depth* depth = nullptr;
    REQUIRE(nf_depth_load(path.string().c_str(), &depth, err.out()) == NF_OK);
    CHECK(nf_depth_width(depth) == 2);
    CHECK(nf_depth_height(depth) == 1);
    const double* data = nf_depth_data(depth);
    CHECK(data[0] == 0.0);
    CHECK(data[1] == 1.0);
    nf_depth_free(depth);
}

TEST_CASE("params parse config json") {
    ErrSlot err;
    nf_params* defaults = nullptr;
    REQUIRE(nf_params_create_default(&defaults, err.out()) == NF_OK);
    nf_params_free(defaults);

    nf_params* parsed = nullptr;
    REQUIRE(nf_params_from_json(R"({"mu": 0.4, "noise_sigma": 0.0})", &parsed, err.out()) == NF_OK);
    nf_params_free(parsed);

    nf_params* bad = nullptr;
    CHECK(nf_params_from_json(R"({"rho": 0.1})", &bad, err.out()) == NF_ERR_CONFIG);
    CHECK(bad == nullptr);
    CHECK(err.str().find("rho") != std::string::npos);
}

TEST_CASE("synthesize_pair mirrors the native chain") {
    // The neutral setup: exponent 1, no sky, no lights, no noise.
    const nightforge::Image clear = nightforge::testing::make_day_scene(24, 18, 0.0, 5);

    ErrSlot err;
    nf_image* c_clear = nullptr;
    REQUIRE(nf_image_create(24, 18, clear.data.data(), &c_clear, err.out()) == NF_OK);

    std::vector<double> depth_data(24 * 18, 0.5);
    nf_depth* c_depth = nullptr;
    REQUIRE(nf_depth_create(24, 18, depth_data.data(), &c_depth, err.out()) == NF_OK);

    nf_params* params = nullptr;
    REQUIRE(nf_params_from_json(
                R"({"phi2": 0.5, "alpha": 4.0, "rho": 1.0, "light_count": [0, 0], "noise_sigma": 0.0})", &params,
                err.out()) == NF_OK);

    nf_image* hazy = nullptr;
    double* label = nullptr;
    REQUIRE(nf_synthesize_pair(c_clear, c_depth, params, 42, 0, 3, 3, &hazy, &label, err.out()) == NF_OK);
    REQUIRE(hazy != nullptr);
    REQUIRE(label != nullptr);

    const double* out = nf_image_data(hazy);
    for (std::size_t i = 0; i < clear.data.size(); ++i) REQUIRE(out[i] == clear.data[i]);
    for (int k = 0; k < 9; ++k) {
        CHECK(label[k] >= 0.0);
        CHECK(label[k] <= 1.0);
    }

    // Same key, same bytes; label may be skipped.
    nf_image* again = nullptr;
    REQUIRE(nf_synthesize_pair(c_clear, c_depth, params, 42, 0, 3, 3, &again, nullptr, err.out()) == NF_OK);
    const double* out2 = nf_image_data(again);
    for (std::size_t i = 0; i < clear.data.size(); ++i) REQUIRE(out2[i] == out[i]);

    nf_buffer_free(label);
    nf_image_free(again);
    nf_image_free(hazy);
    nf_params_free(params);
    nf_depth_free(c_depth);
    nf_image_free(c_clear);
}

TEST_CASE("run_synth processes a directory") {
    TempDir tmp("capi_run");
    write_scene_pair(tmp.path(), "a", 32, 24);
    write_scene_pair(tmp.path(), "b", 32, 24);

    const std::string input = (tmp.path() / "input").string();
    const std::string depth = (tmp.path() / "depth").string();
    const std::string output = (tmp.path() / "out").string();

    nf_synth_options opt = {};
    opt.input_dir = input.c_str();
    opt.depth_dir = depth.c_str();
    opt.output_dir = output.c_str();
    opt.has_seed = 1;
    opt.seed = 11;
    opt.jobs = 1;

    ErrSlot err;
    nf_run_summary summary = {};
    REQUIRE(nf_run_synth(&opt, &summary, err.out()) == NF_OK);
    CHECK(summary.successes == 2);
    CHECK(summary.failures == 0);
    nf_string_free(summary.warnings);

    CHECK(fs::exists(tmp.path() / "out" / "a_hazy.png"));
    CHECK(fs::exists(tmp.path() / "out" / "b_label.png"));
    CHECK(fs::exists(tmp.path() / "out" / "manifest.json"));

    nf_synth_options bad = opt;
    bad.input_dir = "/nonexistent/input";
    CHECK(nf_run_synth(&bad, nullptr, err.out()) == NF_ERR_IO);
    CHECK(!err.str().empty());
}

TEST_CASE("run_report compares two directories") {
    TempDir tmp("capi_report");
    const fs::path a = tmp.path() / "a";
    const fs::path b = tmp.path() / "b";
    fs::create_directories(a);
    fs::create_directories(b);
    nightforge::save_image(nightforge::Image::create(8, 8, 0.2), (a / "x.png").string());
    nightforge::save_image(nightforge::Image::create(8, 8, 0.7), (b / "x.png").string());

    const std::string dir_a = a.string();
    const std::string dir_b = b.string();
    const std::string out_dir = (tmp.path() / "out").string();

    nf_report_options opt = {};
    opt.name_a = "night";
    opt.dir_a = dir_a.c_str();
    opt.name_b = "day";
    opt.dir_b = dir_b.c_str();
    opt.out_dir = out_dir.c_str();
    opt.bins = 0; // default bin count

    ErrSlot err;
    REQUIRE(nf_run_report(&opt, err.out()) == NF_OK);
    CHECK(fs::exists(tmp.path() / "out" / "stats.csv"));
    CHECK(fs::exists(tmp.path() / "out" / "histogram.png"));

    nf_report_options bad = opt;
    bad.dir_b = "/nonexistent/set";
    CHECK(nf_run_report(&bad, err.out()) == NF_ERR_IO);
}
