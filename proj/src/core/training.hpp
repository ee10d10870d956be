#pragma once

#include <vector>

#include "core/raster.hpp"

namespace nightforge {

/// Dense channel-major activation block (data laid out [channel][row][col]).
struct FeatureMap {
    int channels = 0;
    int height = 0;
    int width = 0;
    std::vector<double> data;

    static FeatureMap create(int channels, int height, int width, double fill = 0.0);
    double at(int ch, int row, int col) const {
        return data[(static_cast<std::size_t>(ch) * height + row) * width + col];
    }
    double& at(int ch, int row, int col) { return data[(static_cast<std::size_t>(ch) * height + row) * width + col]; }
    bool same_shape(const FeatureMap& other) const {
        return channels == other.channels && height == other.height && width == other.width;
    }
};

/// Coarse per-cell brightness grid, values in [0,1].
struct BrightnessMap {
    int grid_height = 0;
    int grid_width = 0;
    std::vector<double> data;

    static BrightnessMap create(int grid_height, int grid_width, double fill = 0.0);
    double at(int row, int col) const { return data[static_cast<std::size_t>(row) * grid_width + col]; }
    double& at(int row, int col) { return data[static_cast<std::size_t>(row) * grid_width + col]; }
    bool same_shape(const BrightnessMap& other) const {
        return grid_height == other.grid_height && grid_width == other.grid_width;
    }
};

/// Reference brightness label: mean luminance (R+G+B)/3 per cell of a uniform
/// gh x gw partition. Remainder rows/columns fold into the last cell per axis.
BrightnessMap brightness_label(const Image& img, int grid_height, int grid_width);

/// Nearest-neighbor resampling of a brightness grid to new spatial dims.
BrightnessMap resample_nearest(const BrightnessMap& map, int out_height, int out_width);

/// Brightness-weighted skip fusion. Level 1 modulates the encoder features:
/// out = gamma_feat * (1 + M_hat) + dec_feat, with M_hat resampled to the
/// feature dims and broadcast over channels. Levels 2..4 are a plain sum and
/// ignore M_hat.
FeatureMap skip_fuse(const FeatureMap& gamma_feat, const FeatureMap& dec_feat, const BrightnessMap* m_hat, int level);

enum class Reduction {
    Sum,  // plain summation, matching the written loss forms
    Mean, // Sum divided by the total element count
};

/// Squared-error brightness loss over a batch of grids.
double loss_brightness(const std::vector<BrightnessMap>& predicted, const std::vector<BrightnessMap>& reference,
                       Reduction reduction = Reduction::Sum);

/// L1 reconstruction loss over a batch of images.
double loss_pixel(const std::vector<Image>& predicted, const std::vector<Image>& reference,
                  Reduction reduction = Reduction::Sum);

/// Discriminator objective: mean log(real) + mean log(1 - fake). Scores are
/// clamped into [1e-7, 1 - 1e-7] before the logs.
double loss_adversarial(const std::vector<double>& real_scores, const std::vector<double>& fake_scores);

/// Weighted total: pixel + lambda1 * adversarial + lambda2 * brightness.
double loss_total(double pixel, double adversarial, double brightness, double lambda1, double lambda2);

} // namespace nightforge
