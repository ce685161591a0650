#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "lbpseg/raster.hpp"

namespace lbpseg {

// Circular left rotation of an 8-bit code.
inline std::uint8_t rotl8(std::uint8_t code, int k) {
    k &= 7;
    if (k == 0)
        return code;
    return static_cast<std::uint8_t>((code << k) | (code >> (8 - k)));
}

// Rotation-invariant class representative: the minimum over all 8 circular
// rotations of the code. Classes are named by this representative.
inline std::uint8_t ri_class(std::uint8_t code) {
    std::uint8_t best = code;
    for (int k = 1; k < 8; ++k)
        best = std::min(best, rotl8(code, k));
    return best;
}

// Number of circular 0<->1 transitions in the 8-bit sequence. Codes with at
// most 2 transitions are the uniform patterns.
inline int transition_count(std::uint8_t code) {
    return __builtin_popcount(static_cast<unsigned>(code ^ rotl8(code, 1)));
}

inline bool is_uniform(std::uint8_t code) { return transition_count(code) <= 2; }

// Neighbor offsets in bit order p = 0..7: east, then counter-clockwise
// (E, NE, N, NW, W, SW, S, SE). y grows downward, so north is y-1.
inline constexpr std::array<std::array<int, 2>, 8> kLbpOffsets = {{
    {{1, 0}}, {{1, -1}}, {{0, -1}}, {{-1, -1}}, {{-1, 0}}, {{-1, 1}}, {{0, 1}}, {{1, 1}},
}};

// Bit p is set iff neighbor p is strictly greater than the center; equal
// values contribute 0, which drives flat patches to code 0.
inline std::uint8_t lbp_code(double center, const std::array<double, 8>& neighbors) {
    std::uint8_t code = 0;
    for (int p = 0; p < 8; ++p)
        if (neighbors[static_cast<std::size_t>(p)] > center)
            code = static_cast<std::uint8_t>(code | (1u << p));
    return code;
}

// Per-pixel codes plus the rotation-invariant class of each code.
struct LbpMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> codes;
    std::vector<std::uint8_t> class_ids;

    std::uint8_t code_at(int x, int y) const { return codes[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t class_at(int x, int y) const { return class_ids[static_cast<std::size_t>(y) * width + x]; }
};

// Full-resolution LBP map with replicate padding at the image borders.
// Requires at least a 3x3 input.
LbpMap lbp_map(const ScalarMap& y);

// L = 0 where the pixel's class is 0 or 1 (the flat-texture classes that
// dominate healthy skin), L = 1 everywhere else.
BinaryMask flatness_map(const LbpMap& lbp);

struct ClassPresence {
    int class_id = 0;
    double frac_inside = 0.0;  // class pixels inside the mask / all pixels
    double frac_outside = 0.0; // class pixels outside the mask / all pixels
    // Perpendicular signed distance from (frac_inside, frac_outside) to the
    // reference line through the origin with slope outside_area/inside_area.
    // Positive = above the line = dominant outside the lesion.
    double signed_distance = 0.0;
};

// Per-class presence ratios against a ground-truth mask. A class spread
// proportionally to region area sits on the reference line. Errors on an
// all-zeros or all-ones mask (the reference slope is undefined).
std::vector<ClassPresence> presence_analysis(const LbpMap& lbp, const BinaryMask& gt);

void write_presence_csv(const std::string& path, const std::vector<ClassPresence>& rows);

} // namespace lbpseg
