#include "core/training.hpp"

#include <cmath>
#include <cstddef>

#include "core/error.hpp"

namespace nightforge {

FeatureMap FeatureMap::create(int channels, int height, int width, double fill) {
    if (channels <= 0 || height <= 0 || width <= 0) fail(ErrorCode::InvalidArgument, "FeatureMap: dims must be positive");
    FeatureMap map;
    map.channels = channels;
    map.height = height;
    map.width = width;
    map.data.assign(static_cast<std::size_t>(channels) * height * width, fill);
    return map;
}

BrightnessMap BrightnessMap::create(int grid_height, int grid_width, double fill) {
    if (grid_height <= 0 || grid_width <= 0)
        fail(ErrorCode::InvalidArgument, "BrightnessMap: dims must be positive");
    BrightnessMap map;
    map.grid_height = grid_height;
    map.grid_width = grid_width;
    map.data.assign(static_cast<std::size_t>(grid_height) * grid_width, fill);
    return map;
}

BrightnessMap brightness_label(const Image& img, int grid_height, int grid_width) {
    img.validate();
    if (grid_height <= 0 || grid_width <= 0) fail(ErrorCode::InvalidArgument, "brightness_label: zero grid dims");
    if (grid_height > img.height || grid_width > img.width)
        fail(ErrorCode::InvalidArgument, "brightness_label: grid exceeds image dims");

    BrightnessMap label = BrightnessMap::create(grid_height, grid_width);
    const int cell_h = img.height / grid_height;
    const int cell_w = img.width / grid_width;
    for (int gr = 0; gr < grid_height; ++gr) {
        const int r0 = gr * cell_h;
        const int r1 = gr == grid_height - 1 ? img.height : r0 + cell_h;
        for (int gc = 0; gc < grid_width; ++gc) {
            const int c0 = gc * cell_w;
            const int c1 = gc == grid_width - 1 ? img.width : c0 + cell_w;
            double sum = 0.0;
            for (int r = r0; r < r1; ++r) {
                for (int c = c0; c < c1; ++c) sum += pixel_luminance(img, r, c);
            }
            label.at(gr, gc) = sum / (static_cast<double>(r1 - r0) * (c1 - c0));
        }
    }
    return label;
}

BrightnessMap resample_nearest(const BrightnessMap& map, int out_height, int out_width) {
    if (out_height <= 0 || out_width <= 0) fail(ErrorCode::InvalidArgument, "resample_nearest: empty target");
    if (map.grid_height <= 0 || map.grid_width <= 0)
        fail(ErrorCode::InvalidArgument, "resample_nearest: empty source");
    BrightnessMap out = BrightnessMap::create(out_height, out_width);
    for (int r = 0; r < out_height; ++r) {
        const int sr = static_cast<int>(static_cast<long long>(r) * map.grid_height / out_height);
        for (int c = 0; c < out_width; ++c) {
            const int sc = static_cast<int>(static_cast<long long>(c) * map.grid_width / out_width);
            out.at(r, c) = map.at(sr, sc);
        }
    }
    return out;
}

FeatureMap skip_fuse(const FeatureMap& gamma_feat, const FeatureMap& dec_feat, const BrightnessMap* m_hat, int level) {
    if (!gamma_feat.same_shape(dec_feat)) fail(ErrorCode::InvalidArgument, "skip_fuse: feature dimensions mismatch");
    if (level < 1 || level > 4) fail(ErrorCode::InvalidArgument, "skip_fuse: level must be in 1..4");

    FeatureMap out = gamma_feat;
    if (level == 1) {
        if (m_hat == nullptr) fail(ErrorCode::InvalidArgument, "skip_fuse: level 1 requires a brightness map");
        BrightnessMap weights = *m_hat;
        if (weights.grid_height != gamma_feat.height || weights.grid_width != gamma_feat.width)
            weights = resample_nearest(weights, gamma_feat.height, gamma_feat.width);
        const std::size_t plane = static_cast<std::size_t>(gamma_feat.height) * gamma_feat.width;
        for (int ch = 0; ch < gamma_feat.channels; ++ch) {
            const std::size_t base = static_cast<std::size_t>(ch) * plane;
            for (std::size_t i = 0; i < plane; ++i) {
                out.data[base + i] = gamma_feat.data[base + i] * (1.0 + weights.data[i]) + dec_feat.data[base + i];
            }
        }
    } else {
        for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] = gamma_feat.data[i] + dec_feat.data[i];
    }
    return out;
}

double loss_brightness(const std::vector<BrightnessMap>& predicted, const std::vector<BrightnessMap>& reference,
                       Reduction reduction) {
    if (predicted.size() != reference.size()) fail(ErrorCode::InvalidArgument, "loss_brightness: batch size mismatch");
    if (predicted.empty()) fail(ErrorCode::InvalidArgument, "loss_brightness: empty batch");
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t o = 0; o < predicted.size(); ++o) {
        if (!predicted[o].same_shape(reference[o])) fail(ErrorCode::InvalidArgument, "loss_brightness: shape mismatch");
        for (std::size_t i = 0; i < predicted[o].data.size(); ++i) {
            const double diff = predicted[o].data[i] - reference[o].data[i];
            sum += diff * diff;
        }
        count += predicted[o].data.size();
    }
    return reduction == Reduction::Mean ? sum / static_cast<double>(count) : sum;
}

double loss_pixel(const std::vector<Image>& predicted, const std::vector<Image>& reference, Reduction reduction) {
    if (predicted.size() != reference.size()) fail(ErrorCode::InvalidArgument, "loss_pixel: batch size mismatch");
    if (predicted.empty()) fail(ErrorCode::InvalidArgument, "loss_pixel: empty batch");
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t o = 0; o < predicted.size(); ++o) {
        if (!predicted[o].same_shape(reference[o])) fail(ErrorCode::InvalidArgument, "loss_pixel: shape mismatch");
        for (std::size_t i = 0; i < predicted[o].data.size(); ++i) {
            sum += std::abs(predicted[o].data[i] - reference[o].data[i]);
        }
        count += predicted[o].data.size();
    }
    return reduction == Reduction::Mean ? sum / static_cast<double>(count) : sum;
}

double loss_adversarial(const std::vector<double>& real_scores, const std::vector<double>& fake_scores) {
    if (real_scores.empty() || fake_scores.empty()) fail(ErrorCode::InvalidArgument, "loss_adversarial: empty scores");
    constexpr double eps = 1e-7;
    auto clamp01 = [](double v) {
        if (v < eps) return eps;
        if (v > 1.0 - eps) return 1.0 - eps;
        return v;
    };
    double real_sum = 0.0;
    for (double s : real_scores) real_sum += std::log(clamp01(s));
    double fake_sum = 0.0;
    for (double s : fake_scores) fake_sum += std::log(1.0 - clamp01(s));
    return real_sum / static_cast<double>(real_scores.size()) + fake_sum / static_cast<double>(fake_scores.size());
}

double loss_total(double pixel, double adversarial, double brightness, double lambda1, double lambda2) {
    if (!std::isfinite(pixel) || !std::isfinite(adversarial) || !std::isfinite(brightness) ||
        !std::isfinite(lambda1) || !std::isfinite(lambda2))
        fail(ErrorCode::InvalidArgument, "loss_total: non-finite input");
    return pixel + lambda1 * adversarial + lambda2 * brightness;
}

} // namespace nightforge
