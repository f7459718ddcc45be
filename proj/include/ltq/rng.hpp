#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ltq {

// std::mt19937_64's output sequence is fixed by the standard, unlike the
// standard distributions, so all sampling goes through these helpers to keep
// results identical across standard libraries.
using Rng = std::mt19937_64;

// Uniform integer in [0, bound), bound > 0, by rejection.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

// Fisher-Yates.
template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform_below(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

} // namespace ltq
