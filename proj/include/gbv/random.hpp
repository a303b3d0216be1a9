#pragma once

#include <cstdint>
#include <random>

namespace gbv {

// std::uniform_*_distribution is implementation-defined; these mappings keep
// seeded streams identical across standard libraries.
using rng_engine = std::mt19937_64;

inline double uniform01(rng_engine& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform_real(rng_engine& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

// Inclusive range.
inline std::int64_t uniform_int(rng_engine& rng, std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(rng() % span);
}

}  // namespace gbv
