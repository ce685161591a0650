#include "lbpseg/raster.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace lbpseg {

std::size_t BinaryMask::count() const {
    std::size_t n = 0;
    for (std::uint8_t b : bits)
        n += b;
    return n;
}

double chunked_sum(const double* values, std::size_t n) {
    constexpr std::size_t kChunk = 4096;
    const std::int64_t nchunks = static_cast<std::int64_t>((n + kChunk - 1) / kChunk);
    if (nchunks <= 1) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            s += values[i];
        return s;
    }
    std::vector<double> partial(static_cast<std::size_t>(nchunks), 0.0);
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < nchunks; ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
        const std::size_t hi = std::min(lo + kChunk, n);
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
            s += values[i];
        partial[static_cast<std::size_t>(c)] = s;
    }
    double total = 0.0;
    for (double p : partial)
        total += p;
    return total;
}

ScalarMap to_luminance(const RasterImage& img) {
    if (img.channels != 3)
        throw Error(ErrorCode::ChannelMismatch,
                    "to_luminance: expected 3 channels, got " + std::to_string(img.channels));
    ScalarMap out(img.width, img.height);
    const std::uint8_t* src = img.data.data();
    double* dst = out.data.data();
    const std::int64_t n = static_cast<std::int64_t>(img.pixel_count());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        const std::uint8_t* p = src + 3 * i;
        dst[i] = 0.2989 * p[0] + 0.5870 * p[1] + 0.1140 * p[2];
    }
    return out;
}

namespace {

std::vector<double> gaussian_taps(double sigma) {
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        const double v = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
        taps[static_cast<std::size_t>(i + radius)] = v;
        sum += v;
    }
    for (double& t : taps)
        t /= sum;
    return taps;
}

inline int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

} // namespace

ScalarMap gaussian_smooth(const ScalarMap& map, double sigma) {
    if (sigma < 0.0)
        throw Error(ErrorCode::Parameter, "gaussian_smooth: negative sigma");
    if (sigma == 0.0)
        return map;

    const std::vector<double> taps = gaussian_taps(sigma);
    const int radius = static_cast<int>(taps.size() / 2);
    const int w = map.width, h = map.height;

    // Horizontal pass.
    ScalarMap tmp(w, h);
#pragma omp parallel for schedule(static)
    for (std::int64_t y = 0; y < h; ++y) {
        const double* row = map.data.data() + y * w;
        double* out = tmp.data.data() + y * w;
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k)
                acc += taps[static_cast<std::size_t>(k + radius)] * row[clampi(x + k, 0, w - 1)];
            out[x] = acc;
        }
    }

    // Vertical pass.
    ScalarMap out(w, h);
#pragma omp parallel for schedule(static)
    for (std::int64_t y = 0; y < h; ++y) {
        double* dst = out.data.data() + y * w;
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k)
                acc += taps[static_cast<std::size_t>(k + radius)] *
                       tmp.data[static_cast<std::size_t>(clampi(static_cast<int>(y) + k, 0, h - 1)) * w + x];
            dst[x] = acc;
        }
    }
    return out;
}

ScalarMap rescale_minmax(const ScalarMap& map) {
    double lo = map.data[0], hi = map.data[0];
    const std::int64_t n = static_cast<std::int64_t>(map.size());
#pragma omp parallel for schedule(static) reduction(min : lo) reduction(max : hi)
    for (std::int64_t i = 0; i < n; ++i) {
        lo = std::min(lo, map.data[static_cast<std::size_t>(i)]);
        hi = std::max(hi, map.data[static_cast<std::size_t>(i)]);
    }

    ScalarMap out(map.width, map.height);
    if (hi == lo)
        return out; // flat map carries no signal
    const double scale = 255.0 / (hi - lo);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
        out.data[static_cast<std::size_t>(i)] = (map.data[static_cast<std::size_t>(i)] - lo) * scale;
    return out;
}

} // namespace lbpseg
