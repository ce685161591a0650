#include "lbpseg/metrics.hpp"

#include <cmath>
#include <cstdint>

#include "lbpseg/morphology.hpp"

namespace lbpseg {

namespace {

void require_same_size(const BinaryMask& a, const BinaryMask& b, const char* who) {
    if (a.width != b.width || a.height != b.height)
        throw Error(ErrorCode::Size, std::string(who) + ": dimension mismatch");
}

} // namespace

double border_error(const BinaryMask& sm, const BinaryMask& gt) {
    require_same_size(sm, gt, "border_error");
    const std::size_t gt_area = gt.count();
    if (gt_area == 0)
        throw Error(ErrorCode::DegenerateGt, "border_error: empty ground truth");
    std::int64_t mismatch = 0;
    const std::int64_t n = static_cast<std::int64_t>(sm.size());
#pragma omp parallel for schedule(static) reduction(+ : mismatch)
    for (std::int64_t i = 0; i < n; ++i)
        mismatch += sm.bits[static_cast<std::size_t>(i)] != gt.bits[static_cast<std::size_t>(i)];
    return 100.0 * static_cast<double>(mismatch) / static_cast<double>(gt_area);
}

double tdr(const BinaryMask& sm, const BinaryMask& gt) {
    require_same_size(sm, gt, "tdr");
    const std::size_t gt_area = gt.count();
    if (gt_area == 0)
        throw Error(ErrorCode::DegenerateGt, "tdr: empty ground truth");
    std::int64_t hits = 0;
    const std::int64_t n = static_cast<std::int64_t>(sm.size());
#pragma omp parallel for schedule(static) reduction(+ : hits)
    for (std::int64_t i = 0; i < n; ++i)
        hits += sm.bits[static_cast<std::size_t>(i)] & gt.bits[static_cast<std::size_t>(i)];
    return 100.0 * static_cast<double>(hits) / static_cast<double>(gt_area);
}

double fpr(const BinaryMask& sm, const BinaryMask& gt) {
    require_same_size(sm, gt, "fpr");
    const std::size_t skin_area = sm.size() - gt.count();
    if (skin_area == 0)
        throw Error(ErrorCode::DegenerateGt, "fpr: ground truth covers the whole image");
    std::int64_t false_pos = 0;
    const std::int64_t n = static_cast<std::int64_t>(sm.size());
#pragma omp parallel for schedule(static) reduction(+ : false_pos)
    for (std::int64_t i = 0; i < n; ++i)
        false_pos += sm.bits[static_cast<std::size_t>(i)] & static_cast<std::uint8_t>(1 - gt.bits[static_cast<std::size_t>(i)]);
    return 100.0 * static_cast<double>(false_pos) / static_cast<double>(skin_area);
}

namespace {

// Sobel derivative pair at (x,y) with replicate padding, divided by 8.
inline void sobel_at(const ScalarMap& m, int x, int y, double& gx, double& gy) {
    const int w = m.width, h = m.height;
    auto v = [&](int xx, int yy) {
        xx = xx < 0 ? 0 : (xx >= w ? w - 1 : xx);
        yy = yy < 0 ? 0 : (yy >= h ? h - 1 : yy);
        return m.at(xx, yy);
    };
    gx = (v(x + 1, y - 1) + 2.0 * v(x + 1, y) + v(x + 1, y + 1) -
          v(x - 1, y - 1) - 2.0 * v(x - 1, y) - v(x - 1, y + 1)) / 8.0;
    gy = (v(x - 1, y + 1) + 2.0 * v(x, y + 1) + v(x + 1, y + 1) -
          v(x - 1, y - 1) - 2.0 * v(x, y - 1) - v(x + 1, y - 1)) / 8.0;
}

// Smoothing width for the normal field of the mask.
constexpr double kNormalSigma = 2.0;

} // namespace

double g_perp(const BinaryMask& mask, const ScalarMap& y) {
    if (mask.width != y.width || mask.height != y.height)
        throw Error(ErrorCode::Size, "g_perp: dimension mismatch");
    const std::vector<std::size_t> boundary = boundary_pixels(mask);
    if (boundary.empty())
        throw Error(ErrorCode::DegenerateMask, "g_perp: mask has no boundary");

    ScalarMap soft(mask.width, mask.height);
    for (std::size_t i = 0; i < mask.size(); ++i)
        soft.data[i] = mask.bits[i];
    soft = gaussian_smooth(soft, kNormalSigma);

    double sum = 0.0;
    for (const std::size_t i : boundary) {
        const int x = static_cast<int>(i % static_cast<std::size_t>(mask.width));
        const int yy = static_cast<int>(i / static_cast<std::size_t>(mask.width));
        double nx, ny;
        sobel_at(soft, x, yy, nx, ny);
        const double len = std::hypot(nx, ny);
        if (len < 1e-12)
            continue; // flat normal field (isolated pixel); contributes zero
        // The smoothed mask increases toward the interior, so the outward
        // normal is the negated gradient.
        nx = -nx / len;
        ny = -ny / len;
        double gx, gy;
        sobel_at(y, x, yy, gx, gy);
        sum += std::abs(gx * nx + gy * ny);
    }
    return sum / static_cast<double>(boundary.size());
}

SummaryStats summarize(const std::vector<double>& values) {
    const std::size_t n = values.size();
    if (n < 2)
        throw Error(ErrorCode::InsufficientData, "summarize: need at least 2 values, got " + std::to_string(n));
    double sum = 0.0;
    for (double v : values)
        sum += v;
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double v : values)
        ss += (v - mean) * (v - mean);
    SummaryStats s;
    s.mean = mean;
    s.std = std::sqrt(ss / static_cast<double>(n - 1));
    if (mean == 0.0)
        throw Error(ErrorCode::UndefinedCv, "summarize: cv undefined for zero mean");
    s.cv = s.std / mean;
    return s;
}

std::map<std::string, ClassSummary> group_by_class(const std::vector<MetricsRecord>& records) {
    std::map<std::string, std::vector<const MetricsRecord*>> by_class;
    for (const MetricsRecord& r : records)
        by_class[r.lesion_class].push_back(&r);

    std::map<std::string, ClassSummary> out;
    for (const auto& [cls, rows] : by_class) {
        ClassSummary summary;
        if (rows.size() >= 2) {
            std::vector<double> be_v, tdr_v, fpr_v, g_v;
            for (const MetricsRecord* r : rows) {
                be_v.push_back(r->be);
                tdr_v.push_back(r->tdr);
                fpr_v.push_back(r->fpr);
                g_v.push_back(r->g_perp);
            }
            summary.be = summarize(be_v);
            summary.tdr = summarize(tdr_v);
            summary.fpr = summarize(fpr_v);
            summary.g_perp = summarize(g_v);
        }
        out[cls] = summary;
    }
    return out;
}

} // namespace lbpseg
