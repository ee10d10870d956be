#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace nightforge {

/// 3-channel raster with normalized intensities in [0,1], row-major RGB interleaved.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<double> data; // size = width * height * 3

    static Image create(int width, int height, double fill = 0.0);

    double& at(int row, int col, int ch) { return data[(static_cast<std::size_t>(row) * width + col) * 3 + ch]; }
    double at(int row, int col, int ch) const { return data[(static_cast<std::size_t>(row) * width + col) * 3 + ch]; }

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
    bool same_shape(const Image& other) const { return width == other.width && height == other.height; }

    /// Throws unless dimensions are positive, the buffer has the right size and
    /// every element is finite and within [0,1].
    void validate() const;
};

/// Single-channel depth raster in [0,1], disparity convention (1 = nearest, 0 = farthest).
struct DepthMap {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    static DepthMap create(int width, int height, double fill = 0.0);

    double& at(int row, int col) { return data[static_cast<std::size_t>(row) * width + col]; }
    double at(int row, int col) const { return data[static_cast<std::size_t>(row) * width + col]; }

    void validate() const;
};

/// Boolean per-pixel mask, true = sky.
struct SkyMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    static SkyMask create(int width, int height, bool fill = false);

    bool sky(int row, int col) const { return data[static_cast<std::size_t>(row) * width + col] != 0; }
    void set(int row, int col, bool v) { data[static_cast<std::size_t>(row) * width + col] = v ? 1 : 0; }

    std::size_t sky_count() const;
    double sky_fraction() const;
};

inline double luminance(double r, double g, double b) { return (r + g + b) / 3.0; }

double pixel_luminance(const Image& img, int row, int col);
double mean_luminance(const Image& img);

Image resize_bilinear(const Image& img, int new_width, int new_height);
DepthMap resize_bilinear(const DepthMap& depth, int new_width, int new_height);
SkyMask resize_nearest(const SkyMask& mask, int new_width, int new_height);

/// round(v * 255) per element, the byte layout written to 8-bit PNG.
std::vector<std::uint8_t> quantize8(const Image& img);
std::vector<std::uint8_t> quantize8(const std::vector<double>& values);

} // namespace nightforge
