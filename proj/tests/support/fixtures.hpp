#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "core/raster.hpp"

namespace nightforge::testing {

/// Bright daytime scene: a near-white sky band over textured ground. The
/// texture is deterministic in (dims, sky_fraction, seed). Ground pixels sit
/// around 0.75 so the nighttime gamma has a wide darkening margin.
Image make_day_scene(int width, int height, double sky_fraction, std::uint64_t seed);

/// Disparity matching make_day_scene's regions: sky rows are exactly 0 and
/// ground rows ramp from `ground_near` up to exactly 1 at the bottom, so the
/// values survive min-max renormalization on load unchanged.
DepthMap make_scene_depth(int width, int height, double sky_fraction, double ground_near = 0.75);

/// Unique directory under the system temp root; removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& label);
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string str() const { return path_.string(); }

private:
    std::filesystem::path path_;
};

} // namespace nightforge::testing
