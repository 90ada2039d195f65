#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "switchstab/mat.hpp"

namespace switchstab {

/// Deterministic sampling helpers. Distribution mapping is done by hand so
/// that a fixed seed yields the same stream on every standard library.
namespace rng {

using Engine = std::mt19937_64;

/// Uniform in [0, 1), 53-bit resolution.
inline double uniform01(Engine& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Uniform in [lo, hi).
inline double uniform(Engine& eng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(eng);
}

/// Standard normal via Box-Muller.
inline double gaussian(Engine& eng) {
    double u1 = uniform01(eng);
    while (u1 <= 0.0) u1 = uniform01(eng);
    const double u2 = uniform01(eng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

/// Uniform point on the unit sphere in R^dim.
inline Vec unit_vector(Engine& eng, int dim) {
    Vec x(dim);
    double n = 0.0;
    while (n == 0.0) {
        for (int i = 0; i < dim; ++i) x[i] = gaussian(eng);
        n = x.norm();
    }
    for (int i = 0; i < dim; ++i) x[i] /= n;
    return x;
}

/// `count` unit-sphere samples followed by the +-standard basis vectors.
std::vector<Vec> sphere_samples_with_axes(int dim, int count, std::uint64_t seed);

} // namespace rng

} // namespace switchstab
