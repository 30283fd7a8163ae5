#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace fgarch {

/// Stream tags keep RNG substreams of different subsystems disjoint.
enum class StreamTag : std::uint64_t {
    simulate = 1,
    lyapunov = 2,
    moment = 3,
    coupling = 4,
    fit_start = 5,
    replicate = 6,
};

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}
}  // namespace detail

/// Derives a well-scrambled 64-bit seed for substream (tag, index) of `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, StreamTag tag, std::uint64_t index) {
    constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ull;
    std::uint64_t z = detail::mix64(seed + golden * static_cast<std::uint64_t>(tag));
    return detail::mix64(z + golden * (index + 1));
}

/// Independent, reproducible generator for substream (tag, index) of `seed`.
inline std::mt19937_64 make_rng(std::uint64_t seed, StreamTag tag, std::uint64_t index = 0) {
    return std::mt19937_64(derive_seed(seed, tag, index));
}

/// Uniform draw in the open interval (0,1).
inline double uniform01(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard normal via Box-Muller. Hand-rolled so that streams are
/// bit-reproducible independently of the standard library implementation.
inline double gaussian(std::mt19937_64& rng) {
    const double u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

inline double uniform(std::mt19937_64& rng, double a, double b) {
    return a + (b - a) * uniform01(rng);
}

}  // namespace fgarch
