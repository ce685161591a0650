#include "lbpseg/features.hpp"

#include <cmath>
#include <cstdio>

namespace lbpseg {

ScalarMap znormalize(const ScalarMap& map) {
    const std::size_t n = map.size();
    const double mean = chunked_sum(map.data.data(), n) / static_cast<double>(n);

    std::vector<double> sq(n);
    const std::int64_t ni = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < ni; ++i) {
        const double d = map.data[static_cast<std::size_t>(i)] - mean;
        sq[static_cast<std::size_t>(i)] = d * d;
    }
    const double variance = chunked_sum(sq.data(), n) / static_cast<double>(n);
    if (variance == 0.0)
        throw Error(ErrorCode::DegenerateVariance, "znormalize: constant map has zero variance");
    const double inv_sigma = 1.0 / std::sqrt(variance);

    ScalarMap out(map.width, map.height);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < ni; ++i)
        out.data[static_cast<std::size_t>(i)] = (map.data[static_cast<std::size_t>(i)] - mean) * inv_sigma;
    return out;
}

namespace {

// sRGB gamma expansion of an 8-bit-scaled value.
inline double gamma_expand(double v255) {
    const double c = v255 / 255.0;
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

// CIE Lab companding function with the exact rational thresholds.
inline double lab_f(double t) {
    constexpr double kEps = 216.0 / 24389.0;
    constexpr double kKappa = 24389.0 / 27.0;
    return t > kEps ? std::cbrt(t) : (kKappa * t + 16.0) / 116.0;
}

// D65 reference white.
constexpr double kXn = 0.95047;
constexpr double kYn = 1.00000;
constexpr double kZn = 1.08883;

} // namespace

Vec2 yl_to_ab(double y, double l) {
    // RGB = (l, y, l): the L map feeds red and blue, luminance feeds green.
    const double r = gamma_expand(l);
    const double g = gamma_expand(y);
    const double b = r;

    const double x_tri = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
    const double y_tri = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
    const double z_tri = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;

    const double fx = lab_f(x_tri / kXn);
    const double fy = lab_f(y_tri / kYn);
    const double fz = lab_f(z_tri / kZn);
    return Vec2{500.0 * (fx - fy), 200.0 * (fy - fz)};
}

std::vector<Vec2> yl_to_ab(const ScalarMap& y, const ScalarMap& l) {
    if (y.width != l.width || y.height != l.height)
        throw Error(ErrorCode::Size, "yl_to_ab: dimension mismatch");
    const std::int64_t n = static_cast<std::int64_t>(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y.data[i] < 0.0 || y.data[i] > 255.0 || l.data[i] < 0.0 || l.data[i] > 255.0)
            throw Error(ErrorCode::Range, "yl_to_ab: sample outside [0,255]");
    }
    std::vector<Vec2> out(y.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = yl_to_ab(y.data[static_cast<std::size_t>(i)], l.data[static_cast<std::size_t>(i)]);
    return out;
}

FeatureCloud build_features(const ScalarMap& y, const ScalarMap& l_smooth, FeatureVariant variant) {
    if (y.width != l_smooth.width || y.height != l_smooth.height)
        throw Error(ErrorCode::Size, "build_features: dimension mismatch");

    FeatureCloud cloud;
    cloud.width = y.width;
    cloud.height = y.height;

    if (variant == FeatureVariant::Ab) {
        cloud.points = yl_to_ab(rescale_minmax(y), rescale_minmax(l_smooth));
    } else {
        const ScalarMap yn = znormalize(y);
        const ScalarMap ln = znormalize(l_smooth);
        cloud.points.resize(y.size());
        const std::int64_t n = static_cast<std::int64_t>(y.size());
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i)
            cloud.points[static_cast<std::size_t>(i)] = Vec2{yn.data[static_cast<std::size_t>(i)], ln.data[static_cast<std::size_t>(i)]};
    }
    return cloud;
}

void write_feature_csv(const std::string& path, const FeatureCloud& cloud) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f)
        throw Error(ErrorCode::Io, "write_feature_csv: cannot open " + path);
    std::fprintf(f, "pixel_x,pixel_y,a,b\n");
    for (int yy = 0; yy < cloud.height; ++yy)
        for (int xx = 0; xx < cloud.width; ++xx) {
            const Vec2& p = cloud.points[static_cast<std::size_t>(yy) * cloud.width + xx];
            std::fprintf(f, "%d,%d,%.6f,%.6f\n", xx, yy, p.x, p.y);
        }
    std::fclose(f);
}

} // namespace lbpseg
