#include "core/brightness.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace nightforge {

namespace {

void check_same_dims(int w1, int h1, int w2, int h2, const char* what) {
    if (w1 != w2 || h1 != h2)
        fail(ErrorCode::InvalidArgument, std::string(what) + ": dimension mismatch");
}

} // namespace

SkyMask segment_sky(const DepthMap& depth, double sky_threshold) {
    if (sky_threshold <= 0.0 || sky_threshold >= 1.0)
        fail(ErrorCode::InvalidArgument, "sky threshold must be in (0,1)");
    SkyMask mask = SkyMask::create(depth.width, depth.height);
    for (std::size_t i = 0; i < depth.data.size(); ++i)
        mask.data[i] = (1.0 - depth.data[i] >= sky_threshold) ? 1 : 0;
    return mask;
}

IlluminationMask build_illumination_mask(const DepthMap& depth, const SkyMask& sky, double sky_factor,
                                         double ground_factor, IlluminationSource source) {
    check_same_dims(depth.width, depth.height, sky.width, sky.height, "build_illumination_mask");
    IlluminationMask mask;
    mask.width = depth.width;
    mask.height = depth.height;
    mask.data.resize(depth.data.size());
    for (std::size_t i = 0; i < depth.data.size(); ++i) {
        double init = (source == IlluminationSource::Depth) ? depth.data[i] : 1.0 - depth.data[i];
        mask.data[i] = init * (sky.data[i] ? sky_factor : ground_factor);
    }
    return mask;
}

Image darken_sky(const Image& img, const SkyMask& sky, double divisor) {
    check_same_dims(img.width, img.height, sky.width, sky.height, "darken_sky");
    if (divisor < 1.0)
        fail(ErrorCode::InvalidArgument, "sky divisor must be >= 1");
    Image out = img;
    for (std::size_t p = 0; p < img.pixel_count(); ++p) {
        if (!sky.data[p]) continue;
        for (int c = 0; c < 3; ++c)
            out.data[p * 3 + c] = img.data[p * 3 + c] / divisor;
    }
    return out;
}

Image pixelwise_gamma(const Image& img, const IlluminationMask& mask, double strength) {
    check_same_dims(img.width, img.height, mask.width, mask.height, "pixelwise_gamma");
    if (strength <= 0.0)
        fail(ErrorCode::InvalidArgument, "gamma strength must be > 0");
    Image out = img;
    for (std::size_t p = 0; p < img.pixel_count(); ++p) {
        double exponent = strength * mask.data[p];
        for (int c = 0; c < 3; ++c) {
            double v = img.data[p * 3 + c];
            double r;
            if (exponent == 1.0)
                r = v;
            else if (exponent == 0.0)
                r = 1.0; // includes 0^0 = 1
            else if (v == 0.0)
                r = 0.0;
            else if (v == 1.0)
                r = 1.0;
            else
                r = std::pow(v, exponent);
            out.data[p * 3 + c] = std::clamp(r, 0.0, 1.0);
        }
    }
    return out;
}

Image adjust_sky_mean(const Image& img, const SkyMask& sky, double target_mean, SkyMeanOutcome* outcome) {
    check_same_dims(img.width, img.height, sky.width, sky.height, "adjust_sky_mean");
    if (target_mean <= 0.0 || target_mean > 1.0)
        fail(ErrorCode::InvalidArgument, "sky target mean must be in (0,1]");

    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t p = 0; p < img.pixel_count(); ++p) {
        if (!sky.data[p]) continue;
        sum += luminance(img.data[p * 3], img.data[p * 3 + 1], img.data[p * 3 + 2]);
        ++count;
    }
    if (count == 0) {
        if (outcome) *outcome = SkyMeanOutcome::EmptySky;
        return img;
    }
    double mean = sum / static_cast<double>(count);
    if (mean == 0.0) {
        if (outcome) *outcome = SkyMeanOutcome::ZeroMean;
        return img;
    }

    double scale = target_mean / mean;
    Image out = img;
    for (std::size_t p = 0; p < img.pixel_count(); ++p) {
        if (!sky.data[p]) continue;
        for (int c = 0; c < 3; ++c)
            out.data[p * 3 + c] = std::clamp(img.data[p * 3 + c] * scale, 0.0, 1.0);
    }
    if (outcome) *outcome = SkyMeanOutcome::Adjusted;
    return out;
}

} // namespace nightforge
