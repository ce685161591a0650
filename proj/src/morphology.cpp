#include "lbpseg/morphology.hpp"

#include <vector>

namespace lbpseg {

namespace {

// Iterative flood fill over a {0,1} grid, writing `label` into `labels`.
// `connectivity` is 4 or 8.
void flood_fill(const std::vector<std::uint8_t>& grid, int w, int h, std::size_t start,
                std::uint8_t match, int connectivity, std::vector<std::int32_t>& labels,
                std::int32_t label, std::size_t* size_out) {
    static constexpr int dx8[8] = {1, -1, 0, 0, 1, 1, -1, -1};
    static constexpr int dy8[8] = {0, 0, 1, -1, 1, -1, 1, -1};

    std::vector<std::size_t> stack;
    stack.push_back(start);
    labels[start] = label;
    std::size_t size = 0;
    while (!stack.empty()) {
        const std::size_t i = stack.back();
        stack.pop_back();
        ++size;
        const int x = static_cast<int>(i % static_cast<std::size_t>(w));
        const int y = static_cast<int>(i / static_cast<std::size_t>(w));
        for (int d = 0; d < connectivity; ++d) {
            const int nx = x + dx8[d];
            const int ny = y + dy8[d];
            if (nx < 0 || nx >= w || ny < 0 || ny >= h)
                continue;
            const std::size_t ni = static_cast<std::size_t>(ny) * static_cast<std::size_t>(w) + static_cast<std::size_t>(nx);
            if (grid[ni] == match && labels[ni] == 0) {
                labels[ni] = label;
                stack.push_back(ni);
            }
        }
    }
    if (size_out)
        *size_out = size;
}

} // namespace

BinaryMask fill_holes(const BinaryMask& mask) {
    const int w = mask.width, h = mask.height;
    std::vector<std::int32_t> reach(mask.size(), 0);

    // 4-connected background flood from every border pixel.
    for (int x = 0; x < w; ++x) {
        for (int y : {0, h - 1}) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            if (mask.bits[i] == 0 && reach[i] == 0)
                flood_fill(mask.bits, w, h, i, 0, 4, reach, 1, nullptr);
        }
    }
    for (int y = 0; y < h; ++y) {
        for (int x : {0, w - 1}) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            if (mask.bits[i] == 0 && reach[i] == 0)
                flood_fill(mask.bits, w, h, i, 0, 4, reach, 1, nullptr);
        }
    }

    BinaryMask out(w, h);
    for (std::size_t i = 0; i < mask.size(); ++i)
        out.bits[i] = (mask.bits[i] == 1 || reach[i] == 0) ? 1 : 0;
    return out;
}

BinaryMask keep_principal_component(const BinaryMask& mask) {
    const int w = mask.width, h = mask.height;
    std::vector<std::int32_t> labels(mask.size(), 0);

    std::int32_t next = 0;
    std::int32_t best_label = 0;
    std::size_t best_size = 0;
    // Row-major scan; a strict size comparison keeps the earliest-anchored
    // component on ties.
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask.bits[i] == 1 && labels[i] == 0) {
            std::size_t size = 0;
            flood_fill(mask.bits, w, h, i, 1, 8, labels, ++next, &size);
            if (size > best_size) {
                best_size = size;
                best_label = next;
            }
        }
    }
    if (next == 0)
        throw Error(ErrorCode::EmptyMask, "keep_principal_component: empty mask");

    BinaryMask out(w, h);
    for (std::size_t i = 0; i < mask.size(); ++i)
        out.bits[i] = labels[i] == best_label ? 1 : 0;
    return out;
}

std::vector<std::size_t> boundary_pixels(const BinaryMask& mask) {
    const int w = mask.width, h = mask.height;
    std::vector<std::size_t> out;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            if (mask.bits[i] != 1)
                continue;
            const bool edge = (x > 0 && mask.bits[i - 1] == 0) || (x + 1 < w && mask.bits[i + 1] == 0) ||
                              (y > 0 && mask.bits[i - static_cast<std::size_t>(w)] == 0) ||
                              (y + 1 < h && mask.bits[i + static_cast<std::size_t>(w)] == 0);
            if (edge)
                out.push_back(i);
        }
    return out;
}

} // namespace lbpseg
