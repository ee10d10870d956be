#pragma once

#include <vector>

#include "core/lights.hpp"
#include "core/raster.hpp"
#include "core/rng.hpp"

namespace nightforge {

/// Zero-mean additive RGB noise, unclamped.
struct NoiseField {
    int width = 0;
    int height = 0;
    std::vector<double> data; // h * w * 3

    double at(int row, int col, int ch) const { return data[(static_cast<std::size_t>(row) * width + col) * 3 + ch]; }
};

/// Per-sample Gaussian noise with standard deviation sigma. Draws consume the
/// stream in raster order, channel-interleaved.
NoiseField make_noise(RngStream& rng, int height, int width, double sigma);

/// Final composition: base + sum of glows + noise, clamped to [0,1] once after
/// the full sum. All layers must share the base dimensions.
Image compose_hazy(const Image& base, const std::vector<GlowLayer>& glows, const NoiseField& noise);

} // namespace nightforge
