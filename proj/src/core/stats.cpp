#include "core/stats.hpp"

#include <cstddef>

#include "core/error.hpp"

namespace nightforge {

Image channel_mean_image(const Image& img) {
    img.validate();
    double sums[3] = {0.0, 0.0, 0.0};
    const std::size_t pixels = img.pixel_count();
    for (std::size_t i = 0; i < pixels; ++i) {
        sums[0] += img.data[i * 3 + 0];
        sums[1] += img.data[i * 3 + 1];
        sums[2] += img.data[i * 3 + 2];
    }
    Image out = Image::create(img.width, img.height);
    const double means[3] = {sums[0] / pixels, sums[1] / pixels, sums[2] / pixels};
    for (std::size_t i = 0; i < pixels; ++i) {
        out.data[i * 3 + 0] = means[0];
        out.data[i * 3 + 1] = means[1];
        out.data[i * 3 + 2] = means[2];
    }
    return out;
}

int histogram_bin(double value, int bins) {
    int bin = static_cast<int>(value * bins);
    if (bin >= bins) bin = bins - 1;
    if (bin < 0) bin = 0;
    return bin;
}

BrightnessStats compute_stats(const Image& img, const SkyMask* sky, int bins) {
    img.validate();
    if (bins <= 0) fail(ErrorCode::InvalidArgument, "compute_stats: bins must be positive");
    if (sky != nullptr && (sky->width != img.width || sky->height != img.height))
        fail(ErrorCode::InvalidArgument, "compute_stats: mask dimensions mismatch");

    BrightnessStats stats;
    stats.histogram.assign(static_cast<std::size_t>(bins), 0.0);
    const std::size_t pixels = img.pixel_count();
    double channel_sums[3] = {0.0, 0.0, 0.0};
    double lum_sum = 0.0;
    double sky_sum = 0.0;
    double ground_sum = 0.0;
    std::size_t sky_count = 0;
    for (std::size_t i = 0; i < pixels; ++i) {
        const double r = img.data[i * 3 + 0];
        const double g = img.data[i * 3 + 1];
        const double b = img.data[i * 3 + 2];
        channel_sums[0] += r;
        channel_sums[1] += g;
        channel_sums[2] += b;
        const double lum = luminance(r, g, b);
        lum_sum += lum;
        stats.histogram[static_cast<std::size_t>(histogram_bin(lum, bins))] += 1.0;
        if (sky != nullptr) {
            if (sky->data[i]) {
                sky_sum += lum;
                ++sky_count;
            } else {
                ground_sum += lum;
            }
        }
    }
    for (int c = 0; c < 3; ++c) stats.channel_means[static_cast<std::size_t>(c)] = channel_sums[c] / pixels;
    stats.luminance_mean = lum_sum / pixels;
    for (double& h : stats.histogram) h /= static_cast<double>(pixels);
    if (sky != nullptr) {
        if (sky_count > 0) stats.sky_mean = sky_sum / static_cast<double>(sky_count);
        if (sky_count < pixels) stats.non_sky_mean = ground_sum / static_cast<double>(pixels - sky_count);
    }
    return stats;
}

} // namespace nightforge
