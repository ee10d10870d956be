#include "core/io.hpp"

#include <png.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "core/error.hpp"

namespace nightforge {

namespace {

struct FileHandle {
    std::FILE* fp = nullptr;

    FileHandle(const std::filesystem::path& path, const char* mode) {
        fp = std::fopen(path.string().c_str(), mode);
    }
    ~FileHandle() {
        if (fp) std::fclose(fp);
    }
    FileHandle(const FileHandle&) = delete;
    FileHandle& operator=(const FileHandle&) = delete;
};

struct PngReader {
    png_structp png = nullptr;
    png_infop info = nullptr;

    PngReader() {
        png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
        if (png) info = png_create_info_struct(png);
    }
    ~PngReader() { png_destroy_read_struct(&png, &info, nullptr); }
};

struct PngWriter {
    png_structp png = nullptr;
    png_infop info = nullptr;

    PngWriter() {
        png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
        if (png) info = png_create_info_struct(png);
    }
    ~PngWriter() { png_destroy_write_struct(&png, &info); }
};

// Decodes rows of `channels` samples per pixel at the requested bit depth.
// All libpng calls that can longjmp happen inside this function.
std::vector<std::uint8_t> read_png_rows(const std::filesystem::path& path, int expect_bit_depth, bool to_rgb,
                                        int* out_width, int* out_height, int* out_channels) {
    FileHandle file(path, "rb");
    if (!file.fp)
        fail(ErrorCode::Io, "cannot open " + path.string());

    PngReader reader;
    if (!reader.png || !reader.info)
        fail(ErrorCode::Runtime, "libpng initialization failed");

    if (setjmp(png_jmpbuf(reader.png)))
        fail(ErrorCode::Format, "not a valid PNG file: " + path.string());

    png_init_io(reader.png, file.fp);
    png_read_info(reader.png, reader.info);

    png_uint_32 width = png_get_image_width(reader.png, reader.info);
    png_uint_32 height = png_get_image_height(reader.png, reader.info);
    int bit_depth = png_get_bit_depth(reader.png, reader.info);
    int color_type = png_get_color_type(reader.png, reader.info);

    if (width == 0 || height == 0)
        fail(ErrorCode::Format, "zero-dimension PNG: " + path.string());

    if (to_rgb) {
        if (bit_depth == 16)
            fail(ErrorCode::Format, "expected 8-bit PNG, got 16-bit: " + path.string());
        if (color_type == PNG_COLOR_TYPE_PALETTE)
            png_set_palette_to_rgb(reader.png);
        if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
            png_set_expand_gray_1_2_4_to_8(reader.png);
        if (png_get_valid(reader.png, reader.info, PNG_INFO_tRNS))
            png_set_tRNS_to_alpha(reader.png);
        if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
            png_set_gray_to_rgb(reader.png);
        png_set_strip_alpha(reader.png);
    } else {
        if (color_type != PNG_COLOR_TYPE_GRAY)
            fail(ErrorCode::Format, "expected grayscale PNG: " + path.string());
        if (bit_depth != 8 && bit_depth != 16)
            fail(ErrorCode::Format, "expected 8- or 16-bit grayscale PNG: " + path.string());
        if (bit_depth != expect_bit_depth && expect_bit_depth == 8)
            fail(ErrorCode::Format, "expected 8-bit grayscale PNG: " + path.string());
    }

    png_set_interlace_handling(reader.png);
    png_read_update_info(reader.png, reader.info);

    int channels = png_get_channels(reader.png, reader.info);
    std::size_t rowbytes = png_get_rowbytes(reader.png, reader.info);
    std::vector<std::uint8_t> buffer(rowbytes * height);
    std::vector<png_bytep> rows(height);
    for (png_uint_32 r = 0; r < height; ++r)
        rows[r] = buffer.data() + rowbytes * r;
    png_read_image(reader.png, rows.data());
    png_read_end(reader.png, nullptr);

    *out_width = static_cast<int>(width);
    *out_height = static_cast<int>(height);
    *out_channels = channels;
    return buffer;
}

void write_png(const std::filesystem::path& path, const std::uint8_t* bytes, int width, int height, int color_type,
               int bit_depth) {
    FileHandle file(path, "wb");
    if (!file.fp)
        fail(ErrorCode::Io, "cannot write " + path.string());

    PngWriter writer;
    if (!writer.png || !writer.info)
        fail(ErrorCode::Runtime, "libpng initialization failed");

    if (setjmp(png_jmpbuf(writer.png)))
        fail(ErrorCode::Io, "PNG write failed: " + path.string());

    png_init_io(writer.png, file.fp);
    png_set_IHDR(writer.png, writer.info, width, height, bit_depth, color_type, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(writer.png, writer.info);

    int samples = (color_type == PNG_COLOR_TYPE_RGB) ? 3 : 1;
    std::size_t rowbytes = static_cast<std::size_t>(width) * samples * (bit_depth / 8);
    std::vector<png_bytep> rows(height);
    for (int r = 0; r < height; ++r)
        rows[r] = const_cast<png_bytep>(bytes + rowbytes * r);
    png_write_image(writer.png, rows.data());
    png_write_end(writer.png, nullptr);
}

DepthMap normalize_depth(std::vector<double> raw, int width, int height) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double v : raw) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    DepthMap depth;
    depth.width = width;
    depth.height = height;
    depth.data.resize(raw.size());
    if (hi > lo) {
        const double span = hi - lo;
        for (std::size_t i = 0; i < raw.size(); ++i)
            depth.data[i] = (raw[i] - lo) / span;
    }
    // constant input: all zeros (whole frame reads as farthest)
    return depth;
}

float swap_float_bytes(float v) {
    std::uint32_t u;
    std::memcpy(&u, &v, 4);
    u = ((u & 0x000000ffu) << 24) | ((u & 0x0000ff00u) << 8) | ((u & 0x00ff0000u) >> 8) | ((u & 0xff000000u) >> 24);
    std::memcpy(&v, &u, 4);
    return v;
}

DepthMap load_pfm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorCode::Io, "cannot open " + path.string());

    std::string magic;
    int width = 0, height = 0;
    double scale = 0.0;
    in >> magic >> width >> height >> scale;
    if (!in || (magic != "Pf" && magic != "PF"))
        fail(ErrorCode::Format, "not a PFM file: " + path.string());
    if (magic == "PF")
        fail(ErrorCode::Format, "color PFM not supported, expected grayscale \"Pf\": " + path.string());
    if (width <= 0 || height <= 0 || scale == 0.0)
        fail(ErrorCode::Format, "malformed PFM header: " + path.string());
    in.get(); // single whitespace separating header from samples

    const bool file_little = scale < 0.0;
    const bool host_little = (std::endian::native == std::endian::little);

    std::vector<float> samples(static_cast<std::size_t>(width) * height);
    in.read(reinterpret_cast<char*>(samples.data()), static_cast<std::streamsize>(samples.size() * sizeof(float)));
    if (!in)
        fail(ErrorCode::Format, "truncated PFM data: " + path.string());

    std::vector<double> raw(samples.size());
    for (int r = 0; r < height; ++r) {
        // PFM rows are stored bottom-to-top
        int src_row = height - 1 - r;
        for (int c = 0; c < width; ++c) {
            float v = samples[static_cast<std::size_t>(src_row) * width + c];
            if (file_little != host_little)
                v = swap_float_bytes(v);
            if (!std::isfinite(v))
                fail(ErrorCode::Format, "non-finite value in PFM: " + path.string());
            raw[static_cast<std::size_t>(r) * width + c] = v;
        }
    }
    return normalize_depth(std::move(raw), width, height);
}

} // namespace

Image load_image(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path))
        fail(ErrorCode::Io, "no such file: " + path.string());
    int width = 0, height = 0, channels = 0;
    std::vector<std::uint8_t> bytes = read_png_rows(path, 8, true, &width, &height, &channels);
    if (channels != 3)
        fail(ErrorCode::Format, "could not decode to RGB: " + path.string());

    Image img;
    img.width = width;
    img.height = height;
    img.data.resize(bytes.size());
    for (std::size_t i = 0; i < bytes.size(); ++i)
        img.data[i] = bytes[i] / 255.0;
    return img;
}

void save_image(const Image& img, const std::filesystem::path& path) {
    img.validate();
    std::vector<std::uint8_t> bytes = quantize8(img);
    write_png(path, bytes.data(), img.width, img.height, PNG_COLOR_TYPE_RGB, 8);
}

DepthMap load_depth(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path))
        fail(ErrorCode::Io, "no such file: " + path.string());
    if (path.extension() == ".pfm" || path.extension() == ".PFM")
        return load_pfm(path);

    int width = 0, height = 0, channels = 0;
    std::vector<std::uint8_t> bytes = read_png_rows(path, 16, false, &width, &height, &channels);
    std::size_t count = static_cast<std::size_t>(width) * height;
    std::vector<double> raw(count);
    if (bytes.size() == count * 2) {
        for (std::size_t i = 0; i < count; ++i)
            raw[i] = static_cast<double>((bytes[2 * i] << 8) | bytes[2 * i + 1]); // PNG samples are big-endian
    } else {
        for (std::size_t i = 0; i < count; ++i)
            raw[i] = static_cast<double>(bytes[i]);
    }
    return normalize_depth(std::move(raw), width, height);
}

void save_pfm(const std::vector<float>& values, int width, int height, const std::filesystem::path& path) {
    if (width <= 0 || height <= 0 || values.size() != static_cast<std::size_t>(width) * height)
        fail(ErrorCode::InvalidArgument, "PFM buffer size does not match dimensions");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        fail(ErrorCode::Io, "cannot write " + path.string());
    out << "Pf\n" << width << " " << height << "\n-1.0\n";
    const bool host_little = (std::endian::native == std::endian::little);
    for (int r = height - 1; r >= 0; --r) {
        for (int c = 0; c < width; ++c) {
            float v = values[static_cast<std::size_t>(r) * width + c];
            if (!host_little)
                v = swap_float_bytes(v);
            out.write(reinterpret_cast<const char*>(&v), sizeof(float));
        }
    }
    if (!out)
        fail(ErrorCode::Io, "PFM write failed: " + path.string());
}

void save_gray8(const std::vector<double>& values, int width, int height, const std::filesystem::path& path) {
    if (width <= 0 || height <= 0 || values.size() != static_cast<std::size_t>(width) * height)
        fail(ErrorCode::InvalidArgument, "gray buffer size does not match dimensions");
    std::vector<std::uint8_t> bytes = quantize8(values);
    write_png(path, bytes.data(), width, height, PNG_COLOR_TYPE_GRAY, 8);
}

void save_gray16(const std::vector<double>& values, int width, int height, const std::filesystem::path& path) {
    if (width <= 0 || height <= 0 || values.size() != static_cast<std::size_t>(width) * height)
        fail(ErrorCode::InvalidArgument, "gray buffer size does not match dimensions");
    std::vector<std::uint8_t> bytes(values.size() * 2);
    for (std::size_t i = 0; i < values.size(); ++i) {
        double v = std::clamp(values[i], 0.0, 1.0);
        auto word = static_cast<std::uint16_t>(std::lround(v * 65535.0));
        bytes[2 * i] = static_cast<std::uint8_t>(word >> 8); // network byte order
        bytes[2 * i + 1] = static_cast<std::uint8_t>(word & 0xff);
    }
    write_png(path, bytes.data(), width, height, PNG_COLOR_TYPE_GRAY, 16);
}

SkyMask load_mask(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path))
        fail(ErrorCode::Io, "no such file: " + path.string());
    int width = 0, height = 0, channels = 0;
    std::vector<std::uint8_t> bytes = read_png_rows(path, 8, false, &width, &height, &channels);
    SkyMask mask = SkyMask::create(width, height);
    for (std::size_t i = 0; i < mask.data.size(); ++i)
        mask.data[i] = bytes[i] >= 128 ? 1 : 0;
    return mask;
}

} // namespace nightforge
