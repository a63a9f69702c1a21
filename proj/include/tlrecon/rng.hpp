#pragma once

// Deterministic sampling helpers on top of std::mt19937_64. The engine
// itself is fully specified by the standard, but std::uniform_int_distribution
// is not, so bounded draws are implemented here with masked rejection to keep
// seeded runs byte-identical across toolchains.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>

#include "graph.hpp"

namespace tlrecon {

// Uniform integer in [0, n). Masked rejection: unbiased and portable.
inline std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("rand_below: empty range");
    if (n == 1) return 0;
    std::uint64_t mask = ~std::uint64_t{0} >> __builtin_clzll(n - 1);
    std::uint64_t r;
    do {
        r = rng() & mask;
    } while (r >= n);
    return r;
}

inline Vertex rand_element(std::mt19937_64& rng, const VertexSet& s) {
    if (s.empty()) throw std::invalid_argument("rand_element: empty set");
    return s[static_cast<std::size_t>(rand_below(rng, s.size()))];
}

// Uniform unordered pair of distinct elements of s (|s| >= 2).
inline std::pair<Vertex, Vertex> rand_distinct_pair(std::mt19937_64& rng, const VertexSet& s) {
    if (s.size() < 2) throw std::invalid_argument("rand_distinct_pair: need at least 2 elements");
    std::uint64_t i = rand_below(rng, s.size());
    std::uint64_t j = rand_below(rng, s.size() - 1);
    if (j >= i) ++j;
    return {s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(j)]};
}

// splitmix64 step; handy for deriving independent stream seeds.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace tlrecon
