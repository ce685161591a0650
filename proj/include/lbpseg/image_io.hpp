#pragma once

#include <string>

#include "lbpseg/raster.hpp"

namespace lbpseg {

// Reads a PNG or BMP file (dispatched on magic bytes). PNG is decoded to
// 8-bit gray or RGB; BMP supports uncompressed 8-bit palette, 24-bit and
// 32-bit files, top-down or bottom-up.
RasterImage read_image(const std::string& path);

// Thresholds an image at >127 into a {0,1} mask (RGB input uses the first
// channel; ground-truth masks are black/white either way).
BinaryMask image_to_mask(const RasterImage& img);

BinaryMask read_mask(const std::string& path);

// 8-bit grayscale PNG. Samples are clamped to [0,255] and rounded.
void write_gray_png(const std::string& path, const ScalarMap& map);

// Mask as grayscale PNG, 0 = background, 255 = foreground.
void write_mask_png(const std::string& path, const BinaryMask& mask);

void write_rgb_png(const std::string& path, const RasterImage& img);

} // namespace lbpseg
