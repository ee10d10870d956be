#include "core/raster.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace nightforge {

namespace {

void check_dims(int width, int height) {
    if (width <= 0 || height <= 0)
        fail(ErrorCode::InvalidArgument, "raster dimensions must be positive, got " + std::to_string(width) + "x" + std::to_string(height));
}

} // namespace

Image Image::create(int width, int height, double fill) {
    check_dims(width, height);
    Image img;
    img.width = width;
    img.height = height;
    img.data.assign(static_cast<std::size_t>(width) * height * 3, fill);
    return img;
}

void Image::validate() const {
    check_dims(width, height);
    if (data.size() != static_cast<std::size_t>(width) * height * 3)
        fail(ErrorCode::InvalidArgument, "image buffer size does not match dimensions");
    for (double v : data)
        if (!std::isfinite(v) || v < 0.0 || v > 1.0)
            fail(ErrorCode::InvalidArgument, "image element out of [0,1] range");
}

DepthMap DepthMap::create(int width, int height, double fill) {
    check_dims(width, height);
    DepthMap d;
    d.width = width;
    d.height = height;
    d.data.assign(static_cast<std::size_t>(width) * height, fill);
    return d;
}

void DepthMap::validate() const {
    check_dims(width, height);
    if (data.size() != static_cast<std::size_t>(width) * height)
        fail(ErrorCode::InvalidArgument, "depth buffer size does not match dimensions");
    for (double v : data)
        if (!std::isfinite(v) || v < 0.0 || v > 1.0)
            fail(ErrorCode::InvalidArgument, "depth element out of [0,1] range");
}

SkyMask SkyMask::create(int width, int height, bool fill) {
    check_dims(width, height);
    SkyMask m;
    m.width = width;
    m.height = height;
    m.data.assign(static_cast<std::size_t>(width) * height, fill ? 1 : 0);
    return m;
}

std::size_t SkyMask::sky_count() const {
    std::size_t n = 0;
    for (std::uint8_t v : data)
        n += v != 0;
    return n;
}

double SkyMask::sky_fraction() const {
    if (data.empty()) return 0.0;
    return static_cast<double>(sky_count()) / static_cast<double>(data.size());
}

double pixel_luminance(const Image& img, int row, int col) {
    return luminance(img.at(row, col, 0), img.at(row, col, 1), img.at(row, col, 2));
}

double mean_luminance(const Image& img) {
    double sum = 0.0;
    for (double v : img.data)
        sum += v;
    return sum / static_cast<double>(img.data.size());
}

namespace {

// Shared bilinear kernel over an arbitrary channel count.
std::vector<double> resize_bilinear_buffer(const std::vector<double>& src, int w, int h, int ch, int nw, int nh) {
    std::vector<double> out(static_cast<std::size_t>(nw) * nh * ch);
    const double sx = static_cast<double>(w) / nw;
    const double sy = static_cast<double>(h) / nh;
    for (int r = 0; r < nh; ++r) {
        double fy = (r + 0.5) * sy - 0.5;
        int y0 = static_cast<int>(std::floor(fy));
        double ty = fy - y0;
        int y1 = std::min(y0 + 1, h - 1);
        y0 = std::max(y0, 0);
        for (int c = 0; c < nw; ++c) {
            double fx = (c + 0.5) * sx - 0.5;
            int x0 = static_cast<int>(std::floor(fx));
            double tx = fx - x0;
            int x1 = std::min(x0 + 1, w - 1);
            x0 = std::max(x0, 0);
            for (int k = 0; k < ch; ++k) {
                double v00 = src[(static_cast<std::size_t>(y0) * w + x0) * ch + k];
                double v01 = src[(static_cast<std::size_t>(y0) * w + x1) * ch + k];
                double v10 = src[(static_cast<std::size_t>(y1) * w + x0) * ch + k];
                double v11 = src[(static_cast<std::size_t>(y1) * w + x1) * ch + k];
                double top = v00 + (v01 - v00) * tx;
                double bot = v10 + (v11 - v10) * tx;
                out[(static_cast<std::size_t>(r) * nw + c) * ch + k] = std::clamp(top + (bot - top) * ty, 0.0, 1.0);
            }
        }
    }
    return out;
}

} // namespace

Image resize_bilinear(const Image& img, int new_width, int new_height) {
    check_dims(new_width, new_height);
    Image out;
    out.width = new_width;
    out.height = new_height;
    out.data = resize_bilinear_buffer(img.data, img.width, img.height, 3, new_width, new_height);
    return out;
}

DepthMap resize_bilinear(const DepthMap& depth, int new_width, int new_height) {
    check_dims(new_width, new_height);
    DepthMap out;
    out.width = new_width;
    out.height = new_height;
    out.data = resize_bilinear_buffer(depth.data, depth.width, depth.height, 1, new_width, new_height);
    return out;
}

SkyMask resize_nearest(const SkyMask& mask, int new_width, int new_height) {
    check_dims(new_width, new_height);
    SkyMask out = SkyMask::create(new_width, new_height);
    for (int r = 0; r < new_height; ++r) {
        int sr = static_cast<int>(static_cast<std::int64_t>(r) * mask.height / new_height);
        for (int c = 0; c < new_width; ++c) {
            int sc = static_cast<int>(static_cast<std::int64_t>(c) * mask.width / new_width);
            out.set(r, c, mask.sky(sr, sc));
        }
    }
    return out;
}

std::vector<std::uint8_t> quantize8(const std::vector<double>& values) {
    std::vector<std::uint8_t> bytes(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        double v = std::clamp(values[i], 0.0, 1.0);
        bytes[i] = static_cast<std::uint8_t>(std::lround(v * 255.0));
    }
    return bytes;
}

std::vector<std::uint8_t> quantize8(const Image& img) {
    return quantize8(img.data);
}

} // namespace nightforge
