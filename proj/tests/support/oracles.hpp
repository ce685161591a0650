#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "lbpseg/features.hpp"
#include "lbpseg/raster.hpp"

// Independent oracles used to pin expected values. These deliberately avoid
// the library's implementation paths: the convolution is dense 2D, the
// k-means optimum comes from enumerating every 2-partition, and the
// colorimetry is a second transcription of the standard formulas.
namespace oracle {

// Dense 2D convolution with a truncated, renormalized Gaussian (radius
// ceil(3*sigma)) and replicate padding.
inline lbpseg::ScalarMap gaussian_dense(const lbpseg::ScalarMap& map, double sigma) {
    if (sigma == 0.0)
        return map;
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    const int k = 2 * radius + 1;
    std::vector<double> kernel(static_cast<std::size_t>(k) * k);
    double sum = 0.0;
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx) {
            const double v = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
            kernel[static_cast<std::size_t>(dy + radius) * k + (dx + radius)] = v;
            sum += v;
        }
    for (double& v : kernel)
        v /= sum;

    lbpseg::ScalarMap out(map.width, map.height);
    auto clamp = [](int v, int hi) { return v < 0 ? 0 : (v > hi ? hi : v); };
    for (int y = 0; y < map.height; ++y)
        for (int x = 0; x < map.width; ++x) {
            double acc = 0.0;
            for (int dy = -radius; dy <= radius; ++dy)
                for (int dx = -radius; dx <= radius; ++dx)
                    acc += kernel[static_cast<std::size_t>(dy + radius) * k + (dx + radius)] *
                           map.at(clamp(x + dx, map.width - 1), clamp(y + dy, map.height - 1));
            out.at(x, y) = acc;
        }
    return out;
}

// Globally optimal 2-means SSE by enumerating all 2^(n-1)-1 splits.
// Practical for n <= ~20.
inline double best_two_partition_sse(const std::vector<lbpseg::Vec2>& pts) {
    const std::size_t n = pts.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t assign = 1; assign + 1 < (1u << n); ++assign) {
        double sx[2] = {0, 0}, sy[2] = {0, 0};
        int count[2] = {0, 0};
        for (std::size_t i = 0; i < n; ++i) {
            const int g = (assign >> i) & 1;
            sx[g] += pts[i].x;
            sy[g] += pts[i].y;
            ++count[g];
        }
        if (count[0] == 0 || count[1] == 0)
            continue;
        const double mx[2] = {sx[0] / count[0], sx[1] / count[1]};
        const double my[2] = {sy[0] / count[0], sy[1] / count[1]};
        double sse = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const int g = (assign >> i) & 1;
            sse += (pts[i].x - mx[g]) * (pts[i].x - mx[g]) + (pts[i].y - my[g]) * (pts[i].y - my[g]);
        }
        best = std::min(best, sse);
    }
    return best;
}

// Reference sRGB (8-bit scale) -> CIE 1976 L*a*b* under D65, 2 degree
// observer. Returns {L*, a*, b*}.
inline std::array<double, 3> srgb_to_lab(double r8, double g8, double b8) {
    auto expand = [](double v) {
        v /= 255.0;
        return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
    };
    const double r = expand(r8), g = expand(g8), b = expand(b8);
    const double xyz[3] = {
        0.4124564 * r + 0.3575761 * g + 0.1804375 * b,
        0.2126729 * r + 0.7151522 * g + 0.0721750 * b,
        0.0193339 * r + 0.1191920 * g + 0.9503041 * b,
    };
    const double white[3] = {0.95047, 1.0, 1.08883};
    double f[3];
    for (int i = 0; i < 3; ++i) {
        const double t = xyz[i] / white[i];
        f[i] = t > 216.0 / 24389.0 ? std::cbrt(t) : (24389.0 / 27.0 * t + 16.0) / 116.0;
    }
    return {116.0 * f[1] - 16.0, 500.0 * (f[0] - f[1]), 200.0 * (f[1] - f[2])};
}

// Sobel/8 derivative pair with replicate padding, written as an explicit
// dense correlation.
inline void sobel_dense(const lbpseg::ScalarMap& m, int x, int y, double& gx, double& gy) {
    static const int kx[3][3] = {{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}};
    static const int ky[3][3] = {{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}};
    auto clamp = [](int v, int hi) { return v < 0 ? 0 : (v > hi ? hi : v); };
    gx = gy = 0.0;
    for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
            const double v = m.at(clamp(x + dx, m.width - 1), clamp(y + dy, m.height - 1));
            gx += kx[dy + 1][dx + 1] * v;
            gy += ky[dy + 1][dx + 1] * v;
        }
    gx /= 8.0;
    gy /= 8.0;
}

} // namespace oracle
