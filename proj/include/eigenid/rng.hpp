#pragma once

// Deterministic random scalars on top of std::mt19937_64.  The engine is
// fully specified by the standard; the scalar transforms live here because
// the standard library distributions are not reproducible across platforms.

#include <cmath>
#include <cstdint>
#include <random>

namespace eigenid {

inline double uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return lo + (hi - lo) * uniform01(g);
}

// Standard normal via Marsaglia's polar method; the second deviate is
// discarded to keep the call stateless.
inline double normal(std::mt19937_64& g) {
    for (;;) {
        double u = 2.0 * uniform01(g) - 1.0;
        double v = 2.0 * uniform01(g) - 1.0;
        double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
}

// Uniform integer in [0, bound) by rejection, bias-free.
inline std::uint64_t uniform_index(std::mt19937_64& g, std::uint64_t bound) {
    std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % bound;
    for (;;) {
        std::uint64_t x = g();
        if (x < limit) return x % bound;
    }
}

} // namespace eigenid
