#pragma once

#include "lbpseg/kmeans.hpp"
#include "lbpseg/lbp.hpp"
#include "lbpseg/raster.hpp"

// Plain single-threaded implementations of the hot kernels. They are kept as
// the comparison baseline for the unit tests (parallel output must match)
// and for the kernel benchmark; none of them share loop code with the
// production paths.
namespace lbpseg::reference {

ScalarMap to_luminance(const RasterImage& img);

// Separable Gaussian, straightforward serial loops, replicate padding.
ScalarMap gaussian_smooth(const ScalarMap& map, double sigma);

// Direct per-pixel evaluation through lbp_code().
LbpMap lbp_map(const ScalarMap& y);

// Lloyd's algorithm with the same seeding scheme as the production kernel
// but plain in-order accumulation.
ClusterResult kmeans2(const std::vector<Vec2>& points, std::uint64_t seed, int restarts, int max_iter,
                      double tol);

} // namespace lbpseg::reference
