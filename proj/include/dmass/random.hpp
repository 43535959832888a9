#pragma once

#include <cstdint>
#include <random>

namespace dmass {

inline constexpr std::uint64_t kDefaultSeed = 20240601;

// Uniform draw from [0, n) by rejection; the result depends only on the
// engine's output sequence, so it is identical across standard libraries.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return x % n;
}

}  // namespace dmass
