#include "lbpseg/kmeans.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <random>

namespace lbpseg {

namespace {

constexpr std::size_t kChunk = 8192;

inline double sq_dist(const Vec2& a, const Vec2& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// Uniform double in [0,1) from the top 53 bits of the generator output;
// avoids std::uniform_real_distribution, whose stream is not pinned by the
// standard.
inline double u01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct ChunkAccum {
    std::array<double, 2> sum_x{{0.0, 0.0}};
    std::array<double, 2> sum_y{{0.0, 0.0}};
    std::array<std::int64_t, 2> count{{0, 0}};
    double sse = 0.0;
};

// Assignment step: labels, per-cluster sums and SSE against the current
// centroids. Chunked so the reduction order is fixed.
ChunkAccum assign_points(const std::vector<Vec2>& points, const std::array<Vec2, 2>& centroids,
                         std::vector<std::uint8_t>& labels) {
    const std::int64_t n = static_cast<std::int64_t>(points.size());
    const std::int64_t nchunks = (n + static_cast<std::int64_t>(kChunk) - 1) / static_cast<std::int64_t>(kChunk);
    std::vector<ChunkAccum> partial(static_cast<std::size_t>(nchunks));

#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < nchunks; ++c) {
        const std::int64_t lo = c * static_cast<std::int64_t>(kChunk);
        const std::int64_t hi = std::min(lo + static_cast<std::int64_t>(kChunk), n);
        ChunkAccum acc;
        for (std::int64_t i = lo; i < hi; ++i) {
            const Vec2& p = points[static_cast<std::size_t>(i)];
            const double d0 = sq_dist(p, centroids[0]);
            const double d1 = sq_dist(p, centroids[1]);
            const int label = d1 < d0 ? 1 : 0; // tie goes to the lower id
            labels[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(label);
            acc.sum_x[static_cast<std::size_t>(label)] += p.x;
            acc.sum_y[static_cast<std::size_t>(label)] += p.y;
            ++acc.count[static_cast<std::size_t>(label)];
            acc.sse += label ? d1 : d0;
        }
        partial[static_cast<std::size_t>(c)] = acc;
    }

    ChunkAccum total;
    for (const ChunkAccum& acc : partial) {
        for (std::size_t j = 0; j < 2; ++j) {
            total.sum_x[j] += acc.sum_x[j];
            total.sum_y[j] += acc.sum_y[j];
            total.count[j] += acc.count[j];
        }
        total.sse += acc.sse;
    }
    return total;
}

// Index of the point farthest from `from`; ties resolved to the smallest
// index by combining chunk results in order with a strict comparison.
std::size_t farthest_point(const std::vector<Vec2>& points, const Vec2& from) {
    const std::int64_t n = static_cast<std::int64_t>(points.size());
    const std::int64_t nchunks = (n + static_cast<std::int64_t>(kChunk) - 1) / static_cast<std::int64_t>(kChunk);
    std::vector<std::pair<double, std::int64_t>> partial(static_cast<std::size_t>(nchunks), {-1.0, 0});

#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < nchunks; ++c) {
        const std::int64_t lo = c * static_cast<std::int64_t>(kChunk);
        const std::int64_t hi = std::min(lo + static_cast<std::int64_t>(kChunk), n);
        double best = -1.0;
        std::int64_t best_i = lo;
        for (std::int64_t i = lo; i < hi; ++i) {
            const double d = sq_dist(points[static_cast<std::size_t>(i)], from);
            if (d > best) {
                best = d;
                best_i = i;
            }
        }
        partial[static_cast<std::size_t>(c)] = {best, best_i};
    }

    double best = -1.0;
    std::int64_t best_i = 0;
    for (const auto& [d, i] : partial)
        if (d > best) {
            best = d;
            best_i = i;
        }
    return static_cast<std::size_t>(best_i);
}

struct RunResult {
    std::vector<std::uint8_t> labels;
    std::array<Vec2, 2> centroids;
    double sse = 0.0;
    int iterations = 0;
    std::vector<double> sse_history;
};

RunResult run_lloyd(const std::vector<Vec2>& points, std::array<Vec2, 2> centroids, int max_iter,
                    double move_threshold) {
    RunResult run;
    run.labels.resize(points.size());
    double prev_sse = std::numeric_limits<double>::infinity();

    for (int iter = 0; iter < max_iter; ++iter) {
        ChunkAccum acc = assign_points(points, centroids, run.labels);
        run.iterations = iter + 1;
        run.sse_history.push_back(acc.sse);
        assert(acc.sse <= prev_sse * (1.0 + 1e-12) + 1e-12);
        prev_sse = acc.sse;

        bool repaired = false;
        std::array<Vec2, 2> updated = centroids;
        for (std::size_t j = 0; j < 2; ++j) {
            if (acc.count[j] == 0) {
                updated[j] = points[farthest_point(points, centroids[1 - j])];
                repaired = true;
            } else {
                updated[j] = Vec2{acc.sum_x[j] / static_cast<double>(acc.count[j]),
                                  acc.sum_y[j] / static_cast<double>(acc.count[j])};
            }
        }
        const double moved = std::sqrt(std::max(sq_dist(updated[0], centroids[0]), sq_dist(updated[1], centroids[1])));
        centroids = updated;
        if (!repaired && moved <= move_threshold)
            break;
    }

    // Final assignment so labels match the returned centroids exactly and the
    // SSE is recomputable from labels + data.
    ChunkAccum final_acc = assign_points(points, centroids, run.labels);
    run.centroids = centroids;
    run.sse = final_acc.sse;
    return run;
}

} // namespace

ClusterResult kmeans2(const std::vector<Vec2>& points, std::uint64_t seed, int restarts, int max_iter,
                      double tol) {
    const std::size_t n = points.size();
    if (restarts < 1 || max_iter < 1 || tol < 0.0)
        throw Error(ErrorCode::Parameter, "kmeans2: restarts and max_iter must be >= 1, tol >= 0");

    bool has_distinct = false;
    for (std::size_t i = 1; i < n && !has_distinct; ++i)
        has_distinct = points[i].x != points[0].x || points[i].y != points[0].y;
    if (!has_distinct)
        throw Error(ErrorCode::DegenerateData, "kmeans2: need at least 2 distinct points");

    // Bounding-box diagonal as the data diameter for the stopping rule.
    double min_x = points[0].x, max_x = points[0].x, min_y = points[0].y, max_y = points[0].y;
    for (const Vec2& p : points) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const double diameter = std::hypot(max_x - min_x, max_y - min_y);
    const double move_threshold = tol * diameter;

    std::mt19937_64 rng(seed);
    RunResult best;
    best.sse = std::numeric_limits<double>::infinity();

    for (int r = 0; r < restarts; ++r) {
        // k-means++: first centroid uniform, second proportional to the
        // squared distance from the first.
        const std::size_t i0 = std::min(n - 1, static_cast<std::size_t>(u01(rng) * static_cast<double>(n)));
        std::array<Vec2, 2> init;
        init[0] = points[i0];

        std::vector<double> weights(n);
        const std::int64_t ni = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < ni; ++i)
            weights[static_cast<std::size_t>(i)] = sq_dist(points[static_cast<std::size_t>(i)], init[0]);
        const double weight_sum = chunked_sum(weights.data(), n);

        if (weight_sum == 0.0) {
            // all points coincide with the first pick; fall back to the
            // farthest point (a distinct one exists)
            init[1] = points[farthest_point(points, init[0])];
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
            init[1] = points[pick];
        }

        RunResult run = run_lloyd(points, init, max_iter, move_threshold);
        if (run.sse < best.sse)
            best = std::move(run);
    }

    ClusterResult result;
    result.labels = std::move(best.labels);
    result.centroids = best.centroids;
    result.sse = best.sse;
    result.iterations = best.iterations;
    result.sse_history = std::move(best.sse_history);
    return result;
}

BinaryMask lesion_cluster_select(const ClusterResult& result, const ScalarMap& y, const ScalarMap& l_smooth) {
    const std::size_t n = y.size();
    if (result.labels.size() != n || l_smooth.size() != n)
        throw Error(ErrorCode::Size, "lesion_cluster_select: labels and maps must cover every pixel");

    std::array<double, 2> y_sum{{0.0, 0.0}}, l_sum{{0.0, 0.0}};
    std::array<std::int64_t, 2> count{{0, 0}};
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = result.labels[i];
        y_sum[j] += y.data[i];
        l_sum[j] += l_smooth.data[i];
        ++count[j];
    }

    int lesion = 0;
    if (count[0] == 0 || count[1] == 0) {
        lesion = count[0] ? 0 : 1; // single populated cluster
    } else {
        const double y_mean0 = y_sum[0] / static_cast<double>(count[0]);
        const double y_mean1 = y_sum[1] / static_cast<double>(count[1]);
        if (std::abs(y_mean0 - y_mean1) <= 1e-9) {
            const double l_mean0 = l_sum[0] / static_cast<double>(count[0]);
            const double l_mean1 = l_sum[1] / static_cast<double>(count[1]);
            lesion = l_mean1 > l_mean0 ? 1 : 0;
        } else {
            lesion = y_mean1 < y_mean0 ? 1 : 0;
        }
    }

    BinaryMask mask(y.width, y.height);
    for (std::size_t i = 0; i < n; ++i)
        mask.bits[i] = result.labels[i] == lesion ? 1 : 0;
    return mask;
}

} // namespace lbpseg
