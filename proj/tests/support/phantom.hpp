#pragma once

#include <cmath>
#include <random>

#include "lbpseg/raster.hpp"

// Synthetic scenes with known ground truth: a flat bright background and a
// dark, noise-textured disk.
namespace phantom {

struct Scene {
    lbpseg::RasterImage image;
    lbpseg::BinaryMask truth;
};

inline std::uint8_t noise_sample(std::mt19937_64& rng, int lo, int hi) {
    return static_cast<std::uint8_t>(lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)));
}

// Flat background at luminance `bg`, centered disk of radius r filled with
// i.i.d. uniform noise in [noise_lo, noise_hi]. Gray pixels throughout.
inline Scene disk_scene(int size, double radius, std::uint64_t seed, int bg = 200, int noise_lo = 40,
                        int noise_hi = 120) {
    Scene s{lbpseg::RasterImage(size, size, 3), lbpseg::BinaryMask(size, size)};
    std::mt19937_64 rng(seed);
    const double c = (size - 1) / 2.0;
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
            const bool inside = (x - c) * (x - c) + (y - c) * (y - c) <= radius * radius;
            const std::uint8_t v = inside ? noise_sample(rng, noise_lo, noise_hi) : static_cast<std::uint8_t>(bg);
            s.image.at(x, y, 0) = v;
            s.image.at(x, y, 1) = v;
            s.image.at(x, y, 2) = v;
            s.truth.at(x, y) = inside ? 1 : 0;
        }
    return s;
}

// Disk with a ragged border: the radius is perturbed per angle by a smooth
// pseudo-random ripple of amplitude `ripple`. The returned truth mask follows
// the ragged border; a smooth-circle reference of the nominal radius can be
// built with disk_scene().truth.
inline Scene ragged_disk_scene(int size, double radius, double ripple, std::uint64_t seed) {
    Scene s{lbpseg::RasterImage(size, size, 3), lbpseg::BinaryMask(size, size)};
    std::mt19937_64 rng(seed);
    // random low-order Fourier ripple, smooth in angle
    double a[5], b[5];
    for (int k = 0; k < 5; ++k) {
        a[k] = (static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5) * 2.0;
        b[k] = (static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5) * 2.0;
    }
    const double c = (size - 1) / 2.0;
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
            const double theta = std::atan2(y - c, x - c);
            double wobble = 0.0;
            for (int k = 0; k < 5; ++k)
                wobble += a[k] * std::cos((k + 3) * theta) + b[k] * std::sin((k + 3) * theta);
            const double r_here = radius + ripple * wobble / 3.0;
            const bool inside = std::hypot(x - c, y - c) <= r_here;
            const std::uint8_t v = inside ? noise_sample(rng, 40, 120) : static_cast<std::uint8_t>(200);
            s.image.at(x, y, 0) = v;
            s.image.at(x, y, 1) = v;
            s.image.at(x, y, 2) = v;
            s.truth.at(x, y) = inside ? 1 : 0;
        }
    return s;
}

// Smooth filled circle, for reference masks.
inline lbpseg::BinaryMask circle_mask(int size, double radius) {
    lbpseg::BinaryMask m(size, size);
    const double c = (size - 1) / 2.0;
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x)
            m.at(x, y) = std::hypot(x - c, y - c) <= radius ? 1 : 0;
    return m;
}

} // namespace phantom
