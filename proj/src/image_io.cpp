#include "lbpseg/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

namespace lbpseg {

namespace {

RasterImage read_png(const std::string& path, bool want_gray) {
    png_image png;
    std::memset(&png, 0, sizeof(png));
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&png, path.c_str()))
        throw Error(ErrorCode::Io, "read_image: cannot open PNG " + path + ": " + png.message);

    png.format = want_gray ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
    RasterImage img(static_cast<int>(png.width), static_cast<int>(png.height), want_gray ? 1 : 3);
    if (!png_image_finish_read(&png, nullptr, img.data.data(), 0, nullptr))
        throw Error(ErrorCode::Io, "read_image: cannot decode PNG " + path + ": " + png.message);
    return img;
}

std::uint16_t rd16(const std::uint8_t* p) { return static_cast<std::uint16_t>(p[0] | (p[1] << 8)); }
std::uint32_t rd32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

RasterImage read_bmp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::vector<std::uint8_t> buf((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    if (buf.size() < 54 || buf[0] != 'B' || buf[1] != 'M')
        throw Error(ErrorCode::Io, "read_image: not a BMP file: " + path);

    const std::uint32_t data_offset = rd32(&buf[10]);
    const std::uint32_t header_size = rd32(&buf[14]);
    if (header_size < 40)
        throw Error(ErrorCode::Io, "read_image: unsupported BMP header in " + path);
    const std::int32_t w = static_cast<std::int32_t>(rd32(&buf[18]));
    const std::int32_t h_raw = static_cast<std::int32_t>(rd32(&buf[22]));
    const std::uint16_t bpp = rd16(&buf[28]);
    const std::uint32_t compression = rd32(&buf[30]);
    if (compression != 0 || (bpp != 8 && bpp != 24 && bpp != 32))
        throw Error(ErrorCode::Io, "read_image: unsupported BMP format (" + std::to_string(bpp) +
                                       " bpp, compression " + std::to_string(compression) + ") in " + path);

    const bool bottom_up = h_raw > 0;
    const int h = bottom_up ? h_raw : -h_raw;
    if (w <= 0 || h <= 0)
        throw Error(ErrorCode::Io, "read_image: bad BMP dimensions in " + path);

    // Palette for 8-bit files (BGRA quads right after the info header).
    const std::uint8_t* palette = nullptr;
    std::uint32_t palette_entries = 0;
    if (bpp == 8) {
        palette_entries = rd32(&buf[46]);
        if (palette_entries == 0)
            palette_entries = 256;
        palette = &buf[14 + header_size];
    }

    const std::size_t row_stride = ((static_cast<std::size_t>(w) * bpp + 31) / 32) * 4;
    if (buf.size() < data_offset + row_stride * h)
        throw Error(ErrorCode::Io, "read_image: truncated BMP " + path);

    RasterImage img(w, h, 3);
    for (int y = 0; y < h; ++y) {
        const int src_y = bottom_up ? (h - 1 - y) : y;
        const std::uint8_t* row = &buf[data_offset + row_stride * static_cast<std::size_t>(src_y)];
        for (int x = 0; x < w; ++x) {
            std::uint8_t r, g, b;
            if (bpp == 8) {
                const std::uint8_t idx = row[x];
                if (idx >= palette_entries)
                    throw Error(ErrorCode::Io, "read_image: palette index out of range in " + path);
                b = palette[4 * idx + 0];
                g = palette[4 * idx + 1];
                r = palette[4 * idx + 2];
            } else {
                const std::uint8_t* px = row + x * (bpp / 8);
                b = px[0];
                g = px[1];
                r = px[2];
            }
            img.at(x, y, 0) = r;
            img.at(x, y, 1) = g;
            img.at(x, y, 2) = b;
        }
    }
    return img;
}

void write_png_bytes(const std::string& path, int w, int h, int channels, const std::uint8_t* bytes) {
    png_image png;
    std::memset(&png, 0, sizeof(png));
    png.version = PNG_IMAGE_VERSION;
    png.width = static_cast<png_uint_32>(w);
    png.height = static_cast<png_uint_32>(h);
    png.format = channels == 1 ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
    if (!png_image_write_to_file(&png, path.c_str(), 0, bytes, 0, nullptr))
        throw Error(ErrorCode::Io, "write_png: cannot write " + path + ": " + png.message);
}

} // namespace

RasterImage read_image(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw Error(ErrorCode::Io, "read_image: cannot open " + path);
    std::uint8_t magic[2] = {0, 0};
    f.read(reinterpret_cast<char*>(magic), 2);
    f.close();
    if (magic[0] == 'B' && magic[1] == 'M')
        return read_bmp(path);
    if (magic[0] == 0x89 && magic[1] == 'P')
        return read_png(path, false);
    throw Error(ErrorCode::Io, "read_image: unrecognized image format in " + path);
}

BinaryMask image_to_mask(const RasterImage& img) {
    BinaryMask mask(img.width, img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            mask.at(x, y) = img.at(x, y, 0) > 127 ? 1 : 0;
    return mask;
}

BinaryMask read_mask(const std::string& path) { return image_to_mask(read_image(path)); }

void write_gray_png(const std::string& path, const ScalarMap& map) {
    std::vector<std::uint8_t> bytes(map.size());
    for (std::size_t i = 0; i < map.size(); ++i) {
        const double v = std::lround(map.data[i]);
        bytes[i] = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
    }
    write_png_bytes(path, map.width, map.height, 1, bytes.data());
}

void write_mask_png(const std::string& path, const BinaryMask& mask) {
    std::vector<std::uint8_t> bytes(mask.size());
    for (std::size_t i = 0; i < mask.size(); ++i)
        bytes[i] = mask.bits[i] ? 255 : 0;
    write_png_bytes(path, mask.width, mask.height, 1, bytes.data());
}

void write_rgb_png(const std::string& path, const RasterImage& img) {
    if (img.channels != 3)
        throw Error(ErrorCode::ChannelMismatch, "write_rgb_png: expected RGB image");
    write_png_bytes(path, img.width, img.height, 3, img.data.data());
}

} // namespace lbpseg
