#pragma once

#include <array>
#include <optional>
#include <vector>

#include "core/raster.hpp"

namespace nightforge {

/// Per-image brightness summary. The histogram covers [0,1] with uniform bins
/// [k/N, (k+1)/N), last bin closed at 1, normalized to total mass 1.
struct BrightnessStats {
    std::array<double, 3> channel_means = {0.0, 0.0, 0.0};
    double luminance_mean = 0.0;
    std::optional<double> sky_mean;
    std::optional<double> non_sky_mean;
    std::vector<double> histogram;
};

/// Flat image where every pixel carries the input's per-channel means.
Image channel_mean_image(const Image& img);

/// Bin index for a luminance value, last bin closed at 1.
int histogram_bin(double value, int bins);

/// Brightness summary of one image. Sky and non-sky means are filled only when
/// a mask is supplied and the region is nonempty.
BrightnessStats compute_stats(const Image& img, const SkyMask* sky = nullptr, int bins = 32);

} // namespace nightforge
