#pragma once

#include <vector>

#include "lbpseg/raster.hpp"

namespace lbpseg {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// Zero-mean, unit-variance normalization with the population standard
// deviation. Errors on a constant map (sigma = 0).
ScalarMap znormalize(const ScalarMap& map);

// Chromatic coordinates of the color (l, y, l) on a [0,255] RGB scale:
// standard RGB gamma expansion, XYZ under D65 (2 degree observer), CIE 1976
// L*a*b*; L* is discarded. High-l/low-y inputs land near magenta (a* > 0),
// low-l/high-y inputs near green (a* < 0), which is what separates lesion
// from skin after clustering.
Vec2 yl_to_ab(double y, double l);

// Elementwise yl_to_ab over two aligned maps with values in [0,255].
std::vector<Vec2> yl_to_ab(const ScalarMap& y, const ScalarMap& l);

enum class FeatureVariant {
    Ab, // min-max rescale both maps, then (l,y,l) -> a*b*
    Zn, // z-normalize both maps and pair them
};

// One feature point per pixel, row-major: points[y * width + x].
struct FeatureCloud {
    int width = 0;
    int height = 0;
    std::vector<Vec2> points;

    std::size_t size() const { return points.size(); }
};

FeatureCloud build_features(const ScalarMap& y, const ScalarMap& l_smooth, FeatureVariant variant);

void write_feature_csv(const std::string& path, const FeatureCloud& cloud);

} // namespace lbpseg
