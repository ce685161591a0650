#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lbpseg/raster.hpp"

namespace lbpseg {

// Per-image segmentation scores. be/tdr/fpr are percentages; g_perp is a
// mean gradient magnitude in luminance units per pixel.
struct MetricsRecord {
    std::string image_id;
    std::string lesion_class; // CN, AN or M
    double be = 0.0;
    double tdr = 0.0;
    double fpr = 0.0;
    double g_perp = 0.0;
};

struct SummaryStats {
    double mean = 0.0;
    double std = 0.0; // sample (n-1)
    double cv = 0.0;  // std / mean
};

// XOR area between the two masks relative to the ground-truth area, in
// percent. Can exceed 100 when the mismatch is larger than the lesion.
double border_error(const BinaryMask& sm, const BinaryMask& gt);

// Lesion pixels correctly detected, in percent of the ground-truth area.
double tdr(const BinaryMask& sm, const BinaryMask& gt);

// Non-lesion pixels wrongly marked lesion, in percent of the ground-truth
// complement.
double fpr(const BinaryMask& sm, const BinaryMask& gt);

// Mean |grad(Y) . n| over the mask boundary: boundary pixels are foreground
// pixels 4-adjacent to background; n is the outward unit normal taken from
// the gradient of a Gaussian-smoothed copy of the mask; grad(Y) comes from
// 3x3 Sobel kernels divided by 8 so a linear ramp of slope s reads back s.
// A contour that sits on a strong tonal edge scores high.
double g_perp(const BinaryMask& mask, const ScalarMap& y);

SummaryStats summarize(const std::vector<double>& values);

// Per-class summaries for each metric; a cell is empty when the class has
// fewer than two records.
struct ClassSummary {
    std::optional<SummaryStats> be, tdr, fpr, g_perp;
};

std::map<std::string, ClassSummary> group_by_class(const std::vector<MetricsRecord>& records);

} // namespace lbpseg
