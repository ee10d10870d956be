#include "support/fixtures.hpp"

#include <atomic>
#include <cmath>
#include <unistd.h>

#include "core/rng.hpp"

namespace nightforge::testing {

namespace {

int sky_row_count(int height, double sky_fraction) {
    int rows = static_cast<int>(std::lround(height * sky_fraction));
    if (rows < 0) rows = 0;
    if (rows > height) rows = height;
    return rows;
}

} // namespace

Image make_day_scene(int width, int height, double sky_fraction, std::uint64_t seed) {
    Image img = Image::create(width, height);
    const int sky_rows = sky_row_count(height, sky_fraction);
    RngStream rng(seed, 7001);
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            if (r < sky_rows) {
                // Slightly blue near-white sky with a gentle vertical ramp.
                const double ramp = sky_rows > 1 ? 0.04 * r / (sky_rows - 1) : 0.0;
                img.at(r, c, 0) = 0.93 + ramp;
                img.at(r, c, 1) = 0.95 + ramp * 0.5;
                img.at(r, c, 2) = 0.99 - ramp * 0.5;
            } else {
                // Blocky "facade" texture around 0.75 with per-block color casts.
                const int block = (r / 16) * 31 + (c / 16) * 17;
                RngStream cell(seed, 7002, static_cast<std::uint64_t>(block));
                const double base = 0.68 + cell.next_unit() * 0.16;
                const double cast_r = (cell.next_unit() - 0.5) * 0.10;
                const double cast_g = (cell.next_unit() - 0.5) * 0.10;
                const double stripe = (r % 16 == 0 || c % 16 == 0) ? -0.06 : 0.0;
                const double jitter = (rng.next_unit() - 0.5) * 0.04;
                auto clamp01 = [](double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); };
                img.at(r, c, 0) = clamp01(base + cast_r + stripe + jitter);
                img.at(r, c, 1) = clamp01(base + cast_g + stripe + jitter);
                img.at(r, c, 2) = clamp01(base - cast_r - cast_g + stripe + jitter);
            }
        }
    }
    return img;
}

DepthMap make_scene_depth(int width, int height, double sky_fraction, double ground_near) {
    DepthMap depth = DepthMap::create(width, height);
    const int sky_rows = sky_row_count(height, sky_fraction);
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            if (r < sky_rows) {
                depth.at(r, c) = 0.0;
            } else if (r == height - 1) {
                depth.at(r, c) = 1.0;
            } else {
                const int ground_rows = height - sky_rows;
                const double t = ground_rows > 1 ? static_cast<double>(r - sky_rows) / (ground_rows - 1) : 1.0;
                depth.at(r, c) = ground_near + t * (1.0 - ground_near);
            }
        }
    }
    return depth;
}

TempDir::TempDir(const std::string& label) {
    static std::atomic<std::uint64_t> counter{0};
    const std::uint64_t id = counter.fetch_add(1);
    path_ = std::filesystem::temp_directory_path() /
            ("nightforge_" + label + "_" + std::to_string(::getpid()) + "_" + std::to_string(id));
    std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

} // namespace nightforge::testing
