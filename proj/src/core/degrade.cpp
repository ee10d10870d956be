#include "core/degrade.hpp"

#include <cstddef>

#include "core/error.hpp"

namespace nightforge {

NoiseField make_noise(RngStream& rng, int height, int width, double sigma) {
    if (height <= 0 || width <= 0) fail(ErrorCode::InvalidArgument, "make_noise: empty raster");
    if (sigma < 0.0) fail(ErrorCode::InvalidArgument, "make_noise: negative sigma");
    NoiseField noise;
    noise.width = width;
    noise.height = height;
    noise.data.resize(static_cast<std::size_t>(width) * height * 3);
    if (sigma == 0.0) return noise;
    for (double& v : noise.data) v = rng.next_gaussian() * sigma;
    return noise;
}

Image compose_hazy(const Image& base, const std::vector<GlowLayer>& glows, const NoiseField& noise) {
    base.validate();
    for (const GlowLayer& glow : glows) {
        if (glow.width != base.width || glow.height != base.height)
            fail(ErrorCode::InvalidArgument, "compose_hazy: glow dimensions mismatch");
    }
    if (noise.width != base.width || noise.height != base.height)
        fail(ErrorCode::InvalidArgument, "compose_hazy: noise dimensions mismatch");

    Image out = base;
    for (const GlowLayer& glow : glows) {
        for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] += glow.data[i];
    }
    for (std::size_t i = 0; i < out.data.size(); ++i) {
        double v = out.data[i] + noise.data[i];
        if (v < 0.0) v = 0.0;
        if (v > 1.0) v = 1.0;
        out.data[i] = v;
    }
    return out;
}

} // namespace nightforge
