#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "lbpseg/features.hpp"
#include "lbpseg/raster.hpp"

namespace lbpseg {

struct ClusterResult {
    std::vector<std::uint8_t> labels; // per-point cluster id in {0,1}
    std::array<Vec2, 2> centroids;
    double sse = 0.0;
    int iterations = 0;
    std::vector<double> sse_history; // per-iteration SSE of the winning restart
};

// Lloyd iterations with k-means++ initialization from a seeded generator.
// Stops when the largest centroid movement falls below tol times the
// bounding-box diagonal of the data, or after max_iter iterations. The best
// of `restarts` runs by SSE is returned. Results are bit-identical for fixed
// inputs and seed regardless of thread count: per-cluster sums are
// accumulated over fixed-size chunks and combined in chunk order.
//
// An empty cluster is repaired by re-seeding its centroid at the point
// farthest from the other centroid. Fewer than 2 distinct points error out.
ClusterResult kmeans2(const std::vector<Vec2>& points, std::uint64_t seed, int restarts, int max_iter,
                      double tol);

// Marks the cluster whose member pixels have the lower mean luminance as the
// lesion; on a tie (within 1e-9) the cluster with higher mean smoothed
// flatness wins. Labels are row-major pixel order.
BinaryMask lesion_cluster_select(const ClusterResult& result, const ScalarMap& y, const ScalarMap& l_smooth);

} // namespace lbpseg
