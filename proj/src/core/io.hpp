#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "core/raster.hpp"

namespace nightforge {

/// Reads an 8-bit PNG as a normalized Image (byte / 255). Grayscale is promoted
/// to RGB by replication, palettes are expanded, alpha is dropped. 16-bit files
/// are rejected.
Image load_image(const std::filesystem::path& path);

/// Writes an 8-bit RGB PNG, byte = round(value * 255). Round-tripping through
/// load_image changes each element by at most 1/510.
void save_image(const Image& img, const std::filesystem::path& path);

/// Reads a depth raster from a grayscale PFM (".pfm") or a grayscale PNG
/// (anything else), then min-max normalizes to [0,1]. A constant input maps to
/// all zeros. PFM values must be finite.
DepthMap load_depth(const std::filesystem::path& path);

/// Writes raw (unnormalized) values as a little-endian grayscale PFM,
/// bottom-to-top row order.
void save_pfm(const std::vector<float>& values, int width, int height, const std::filesystem::path& path);

/// Writes values in [0,1] as an 8-bit grayscale PNG.
void save_gray8(const std::vector<double>& values, int width, int height, const std::filesystem::path& path);

/// Writes values in [0,1] as a 16-bit grayscale PNG, word = round(value * 65535).
void save_gray16(const std::vector<double>& values, int width, int height, const std::filesystem::path& path);

/// Reads an 8-bit grayscale PNG as a sky mask: pixel is sky iff byte >= 128.
SkyMask load_mask(const std::filesystem::path& path);

} // namespace nightforge
