#include "lbpseg/lbp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

namespace lbpseg {

namespace {
inline int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }
} // namespace

LbpMap lbp_map(const ScalarMap& y) {
    if (y.width < 3 || y.height < 3)
        throw Error(ErrorCode::Size, "lbp_map: image must be at least 3x3, got " +
                                         std::to_string(y.width) + "x" + std::to_string(y.height));
    LbpMap out;
    out.width = y.width;
    out.height = y.height;
    out.codes.resize(y.size());
    out.class_ids.resize(y.size());

    const int w = y.width, h = y.height;
#pragma omp parallel for schedule(static)
    for (std::int64_t row = 0; row < h; ++row) {
        const int yy = static_cast<int>(row);
        for (int xx = 0; xx < w; ++xx) {
            const double center = y.at(xx, yy);
            std::uint8_t code = 0;
            for (int p = 0; p < 8; ++p) {
                const int nx = clampi(xx + kLbpOffsets[static_cast<std::size_t>(p)][0], 0, w - 1);
                const int ny = clampi(yy + kLbpOffsets[static_cast<std::size_t>(p)][1], 0, h - 1);
                if (y.at(nx, ny) > center)
                    code = static_cast<std::uint8_t>(code | (1u << p));
            }
            const std::size_t i = static_cast<std::size_t>(yy) * w + xx;
            out.codes[i] = code;
            out.class_ids[i] = ri_class(code);
        }
    }
    return out;
}

BinaryMask flatness_map(const LbpMap& lbp) {
    BinaryMask mask(lbp.width, lbp.height);
    const std::int64_t n = static_cast<std::int64_t>(lbp.class_ids.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        const std::uint8_t c = lbp.class_ids[static_cast<std::size_t>(i)];
        mask.bits[static_cast<std::size_t>(i)] = (c == 0 || c == 1) ? 0 : 1;
    }
    return mask;
}

std::vector<ClassPresence> presence_analysis(const LbpMap& lbp, const BinaryMask& gt) {
    if (lbp.width != gt.width || lbp.height != gt.height)
        throw Error(ErrorCode::Size, "presence_analysis: dimension mismatch");

    const std::size_t total = lbp.class_ids.size();
    const std::size_t inside_area = gt.count();
    const std::size_t outside_area = total - inside_area;
    if (inside_area == 0 || outside_area == 0)
        throw Error(ErrorCode::DegenerateReference,
                    "presence_analysis: mask covers none or all of the image, reference slope undefined");

    std::array<std::size_t, 256> in_counts{};
    std::array<std::size_t, 256> out_counts{};
    for (std::size_t i = 0; i < total; ++i) {
        if (gt.bits[i])
            ++in_counts[lbp.class_ids[i]];
        else
            ++out_counts[lbp.class_ids[i]];
    }

    // Slope of the reference line: a class distributed proportionally to
    // region area has frac_outside/frac_inside = outside_area/inside_area.
    const double slope = static_cast<double>(outside_area) / static_cast<double>(inside_area);
    const double norm = std::sqrt(1.0 + slope * slope);

    std::vector<ClassPresence> rows;
    for (int c = 0; c < 256; ++c) {
        const std::size_t cnt = in_counts[static_cast<std::size_t>(c)] + out_counts[static_cast<std::size_t>(c)];
        if (cnt == 0)
            continue;
        ClassPresence row;
        row.class_id = c;
        row.frac_inside = static_cast<double>(in_counts[static_cast<std::size_t>(c)]) / static_cast<double>(total);
        row.frac_outside = static_cast<double>(out_counts[static_cast<std::size_t>(c)]) / static_cast<double>(total);
        row.signed_distance = (row.frac_outside - slope * row.frac_inside) / norm;
        rows.push_back(row);
    }
    return rows;
}

void write_presence_csv(const std::string& path, const std::vector<ClassPresence>& rows) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f)
        throw Error(ErrorCode::Io, "write_presence_csv: cannot open " + path);
    std::fprintf(f, "class_id,frac_inside,frac_outside,signed_distance\n");
    for (const ClassPresence& r : rows)
        std::fprintf(f, "%d,%.9f,%.9f,%.9f\n", r.class_id, r.frac_inside, r.frac_outside, r.signed_distance);
    std::fclose(f);
}

} // namespace lbpseg
