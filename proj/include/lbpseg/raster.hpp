#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lbpseg {

enum class ErrorCode {
    ChannelMismatch,
    Parameter,
    Size,
    Range,
    DegenerateVariance,
    DegenerateData,
    DegenerateReference,
    DegenerateGt,
    DegenerateMask,
    EmptyMask,
    InsufficientData,
    UndefinedCv,
    Manifest,
    Io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

// 8-bit pixel grid, row-major, interleaved channels (1 = gray, 3 = RGB).
struct RasterImage {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<std::uint8_t> data;

    RasterImage() = default;
    RasterImage(int w, int h, int c) : width(w), height(h), channels(c) {
        if (w <= 0 || h <= 0 || (c != 1 && c != 3))
            throw Error(ErrorCode::Parameter, "RasterImage: invalid dimensions " + std::to_string(w) +
                                                  "x" + std::to_string(h) + "x" + std::to_string(c));
        data.assign(static_cast<std::size_t>(w) * h * c, 0);
    }

    std::uint8_t& at(int x, int y, int c = 0) {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    std::uint8_t at(int x, int y, int c = 0) const {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
};

// Per-pixel floating-point grid, row-major.
struct ScalarMap {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    ScalarMap() = default;
    ScalarMap(int w, int h, double fill = 0.0) : width(w), height(h) {
        if (w <= 0 || h <= 0)
            throw Error(ErrorCode::Parameter, "ScalarMap: invalid dimensions");
        data.assign(static_cast<std::size_t>(w) * h, fill);
    }

    double& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
    std::size_t size() const { return data.size(); }
};

// Per-pixel {0,1} grid.
struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;

    BinaryMask() = default;
    BinaryMask(int w, int h, std::uint8_t fill = 0) : width(w), height(h) {
        if (w <= 0 || h <= 0)
            throw Error(ErrorCode::Parameter, "BinaryMask: invalid dimensions");
        bits.assign(static_cast<std::size_t>(w) * h, fill);
    }

    std::uint8_t& at(int x, int y) { return bits[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t at(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x]; }
    std::size_t size() const { return bits.size(); }
    std::size_t count() const;
};

// Deterministic sum: fixed-size chunks accumulated independently, partials
// combined in chunk order. The result does not depend on the number of
// threads that processed the chunks.
double chunked_sum(const double* values, std::size_t n);

// ITU weights 0.2989 R + 0.5870 G + 0.1140 B, kept as floating point.
ScalarMap to_luminance(const RasterImage& img);

// Truncated Gaussian (radius ceil(3*sigma), renormalized), separable passes,
// replicate padding at the borders. sigma == 0 returns the input unchanged.
ScalarMap gaussian_smooth(const ScalarMap& map, double sigma);

// Affine map of [min,max] onto [0,255]; a constant map yields all zeros.
ScalarMap rescale_minmax(const ScalarMap& map);

} // namespace lbpseg
