#include "lbpseg/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace lbpseg::reference {

ScalarMap to_luminance(const RasterImage& img) {
    if (img.channels != 3)
        throw Error(ErrorCode::ChannelMismatch, "reference::to_luminance: expected 3 channels");
    ScalarMap out(img.width, img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            out.at(x, y) = 0.2989 * img.at(x, y, 0) + 0.5870 * img.at(x, y, 1) + 0.1140 * img.at(x, y, 2);
    return out;
}

ScalarMap gaussian_smooth(const ScalarMap& map, double sigma) {
    if (sigma < 0.0)
        throw Error(ErrorCode::Parameter, "reference::gaussian_smooth: negative sigma");
    if (sigma == 0.0)
        return map;
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i)
        sum += taps[static_cast<std::size_t>(i + radius)] = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
    for (double& t : taps)
        t /= sum;

    const int w = map.width, h = map.height;
    auto clamp = [](int v, int hi) { return v < 0 ? 0 : (v > hi ? hi : v); };

    ScalarMap tmp(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k)
                acc += taps[static_cast<std::size_t>(k + radius)] * map.at(clamp(x + k, w - 1), y);
            tmp.at(x, y) = acc;
        }
    ScalarMap out(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k)
                acc += taps[static_cast<std::size_t>(k + radius)] * tmp.at(x, clamp(y + k, h - 1));
            out.at(x, y) = acc;
        }
    return out;
}

LbpMap lbp_map(const ScalarMap& y) {
    if (y.width < 3 || y.height < 3)
        throw Error(ErrorCode::Size, "reference::lbp_map: image must be at least 3x3");
    LbpMap out;
    out.width = y.width;
    out.height = y.height;
    out.codes.resize(y.size());
    out.class_ids.resize(y.size());
    auto clamp = [](int v, int hi) { return v < 0 ? 0 : (v > hi ? hi : v); };
    for (int yy = 0; yy < y.height; ++yy)
        for (int xx = 0; xx < y.width; ++xx) {
            std::array<double, 8> neighbors;
            for (int p = 0; p < 8; ++p)
                neighbors[static_cast<std::size_t>(p)] =
                    y.at(clamp(xx + kLbpOffsets[static_cast<std::size_t>(p)][0], y.width - 1),
                         clamp(yy + kLbpOffsets[static_cast<std::size_t>(p)][1], y.height - 1));
            const std::uint8_t code = lbp_code(y.at(xx, yy), neighbors);
            const std::size_t i = static_cast<std::size_t>(yy) * y.width + xx;
            out.codes[i] = code;
            out.class_ids[i] = ri_class(code);
        }
    return out;
}

namespace {

inline double sq_dist(const Vec2& a, const Vec2& b) {
    return (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y);
}

inline double u01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

} // namespace

ClusterResult kmeans2(const std::vector<Vec2>& points, std::uint64_t seed, int restarts, int max_iter,
                      double tol) {
    const std::size_t n = points.size();
    bool has_distinct = false;
    for (std::size_t i = 1; i < n && !has_distinct; ++i)
        has_distinct = points[i].x != points[0].x || points[i].y != points[0].y;
    if (!has_distinct)
        throw Error(ErrorCode::DegenerateData, "reference::kmeans2: need at least 2 distinct points");

    double min_x = points[0].x, max_x = points[0].x, min_y = points[0].y, max_y = points[0].y;
    for (const Vec2& p : points) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const double move_threshold = tol * std::hypot(max_x - min_x, max_y - min_y);

    auto farthest = [&](const Vec2& from) {
        std::size_t best_i = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = sq_dist(points[i], from);
            if (d > best) {
                best = d;
                best_i = i;
            }
        }
        return best_i;
    };

    std::mt19937_64 rng(seed);
    ClusterResult best;
    best.sse = std::numeric_limits<double>::infinity();

    for (int r = 0; r < restarts; ++r) {
        std::array<Vec2, 2> centroids;
        centroids[0] = points[std::min(n - 1, static_cast<std::size_t>(u01(rng) * static_cast<double>(n)))];
        double weight_sum = 0.0;
        std::vector<double> weights(n);
        for (std::size_t i = 0; i < n; ++i)
            weight_sum += weights[i] = sq_dist(points[i], centroids[0]);
        if (weight_sum == 0.0) {
            centroids[1] = points[farthest(centroids[0])];
        } else {
            const double target = u01(rng) * weight_sum;
            double running = 0.0;
            std::size_t pick = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                running += weights[i];
                if (running > target) {
                    pick = i;
                    break;
                }
            }
            centroids[1] = points[pick];
        }

        std::vector<std::uint8_t> labels(n);
        std::vector<double> history;
        int iterations = 0;
        for (int iter = 0; iter < max_iter; ++iter) {
            double sse = 0.0;
            std::array<double, 2> sx{{0, 0}}, sy{{0, 0}};
            std::array<std::size_t, 2> count{{0, 0}};
            for (std::size_t i = 0; i < n; ++i) {
                const double d0 = sq_dist(points[i], centroids[0]);
                const double d1 = sq_dist(points[i], centroids[1]);
                const int label = d1 < d0 ? 1 : 0;
                labels[i] = static_cast<std::uint8_t>(label);
                sx[static_cast<std::size_t>(label)] += points[i].x;
                sy[static_cast<std::size_t>(label)] += points[i].y;
                ++count[static_cast<std::size_t>(label)];
                sse += label ? d1 : d0;
            }
            history.push_back(sse);
            iterations = iter + 1;

            bool repaired = false;
            std::array<Vec2, 2> updated = centroids;
            for (std::size_t j = 0; j < 2; ++j) {
                if (count[j] == 0) {
                    updated[j] = points[farthest(centroids[1 - j])];
                    repaired = true;
                } else {
                    updated[j] = Vec2{sx[j] / static_cast<double>(count[j]), sy[j] / static_cast<double>(count[j])};
                }
            }
            const double moved =
                std::sqrt(std::max(sq_dist(updated[0], centroids[0]), sq_dist(updated[1], centroids[1])));
            centroids = updated;
            if (!repaired && moved <= move_threshold)
                break;
        }

        double sse = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d0 = sq_dist(points[i], centroids[0]);
            const double d1 = sq_dist(points[i], centroids[1]);
            const int label = d1 < d0 ? 1 : 0;
            labels[i] = static_cast<std::uint8_t>(label);
            sse += label ? d1 : d0;
        }
        if (sse < best.sse) {
            best.labels = labels;
            best.centroids = centroids;
            best.sse = sse;
            best.iterations = iterations;
            best.sse_history = history;
        }
    }
    return best;
}

} // namespace lbpseg::reference
