#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "cakebandit/errors.hpp"

namespace cakebandit {

// splitmix64 finalizer (Steele, Lea & Flood). Used only for seed derivation.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Fixed seed-splitting rule: every (horizon index, replicate index) pair gets an
// independent stream from one base seed. Reports echo this rule so results can
// be reproduced on any machine.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = splitmix64(base);
    x = splitmix64(x ^ a);
    x = splitmix64(x ^ b);
    return x;
}

// Stream tag for per-horizon schedule generation (replicate indices start at 0).
inline constexpr std::uint64_t kScheduleStream = ~std::uint64_t{0};

// Uniform double in [0,1) from the top 53 bits of the engine. mt19937_64 output
// is fully specified by the standard, so draws are identical across platforms.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

// Inverse-CDF draw from a probability vector given u in [0,1). The final index
// absorbs any floating-point residue.
inline int sample_categorical(std::span<const double> probs, double u) {
    if (probs.empty()) throw InvalidParameter("sample_categorical: empty distribution");
    double cum = 0.0;
    for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
        cum += probs[i];
        if (u < cum) return static_cast<int>(i);
    }
    return static_cast<int>(probs.size() - 1);
}

}  // namespace cakebandit
