#pragma once

#include <vector>

#include "core/params.hpp"
#include "core/raster.hpp"

namespace nightforge {

/// Per-pixel field that modulates the gamma exponent; nonnegative, finite.
struct IlluminationMask {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    double at(int row, int col) const { return data[static_cast<std::size_t>(row) * width + col]; }
};

/// Thresholds disparity into a sky mask: sky iff 1 - depth >= threshold
/// (inclusive boundary).
SkyMask segment_sky(const DepthMap& depth, double sky_threshold);

/// Initializes the mask from depth (or 1 - depth) and scales it by
/// sky_factor on sky pixels and ground_factor elsewhere.
IlluminationMask build_illumination_mask(const DepthMap& depth, const SkyMask& sky, double sky_factor,
                                         double ground_factor, IlluminationSource source);

/// Divides sky pixels by `divisor` (>= 1); non-sky pixels pass through untouched.
Image darken_sky(const Image& img, const SkyMask& sky, double divisor);

/// Raises each pixel to strength * mask(i,j). 0^0 is defined as 1; an exponent
/// of exactly 1 or 0 is an identity/constant fast path so those cases are
/// bit-exact.
Image pixelwise_gamma(const Image& img, const IlluminationMask& mask, double strength);

enum class SkyMeanOutcome {
    Adjusted,
    EmptySky, // no sky pixel: no-op
    ZeroMean, // sky region all black: no-op
};

/// Rescales sky pixels multiplicatively (uniform across channels) so the sky
/// luminance mean lands on target_mean, then clamps to [0,1]. Degenerate
/// regions leave the image untouched and report the outcome.
Image adjust_sky_mean(const Image& img, const SkyMask& sky, double target_mean, SkyMeanOutcome* outcome = nullptr);

} // namespace nightforge
