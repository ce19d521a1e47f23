#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ccdn::rng {

// std::mt19937_64 has a standardized sequence, but the standard
// distributions do not. Everything below is pinned so that a seed produces
// the same draws on every platform and standard library.

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed) {
    return Engine{seed};
}

// Unbiased integer in [lo, hi] via rejection sampling.
inline std::int64_t uniform_int(Engine& g, std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(g()); // full 64-bit range
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t v;
    do {
        v = g();
    } while (v >= limit);
    return lo + static_cast<std::int64_t>(v % span);
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Engine& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline double uniform_real(Engine& g, double lo, double hi) {
    return lo + (hi - lo) * uniform01(g);
}

template <typename T>
void shuffle(std::vector<T>& items, Engine& g) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform_int(g, 0, static_cast<std::int64_t>(i) - 1));
        std::swap(items[i - 1], items[j]);
    }
}

// First k entries of a seeded permutation of [0, n).
inline std::vector<int> sample_indices(int n, int k, Engine& g) {
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    shuffle(idx, g);
    idx.resize(static_cast<std::size_t>(k < n ? k : n));
    return idx;
}

} // namespace ccdn::rng
