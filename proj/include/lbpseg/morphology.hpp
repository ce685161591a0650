#pragma once

#include "lbpseg/raster.hpp"

namespace lbpseg {

// Background regions (4-connected) not reachable from the image border are
// turned into foreground; border-connected background is untouched.
BinaryMask fill_holes(const BinaryMask& mask);

// Keeps only the largest 8-connected foreground component; size ties go to
// the component whose first pixel in row-major order comes first. Errors on
// an empty mask.
BinaryMask keep_principal_component(const BinaryMask& mask);

// Foreground pixels with at least one 4-adjacent background pixel inside the
// image.
std::vector<std::size_t> boundary_pixels(const BinaryMask& mask);

} // namespace lbpseg
