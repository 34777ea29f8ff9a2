#pragma once

#include <cstdint>
#include <random>

namespace birdsong {

/// splitmix64 finalizer; used to derive well-mixed sub-seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Sub-seed for stream `i` of a parent seed. Distinct streams (folds, trees,
/// fixture files) must not overlap the parent's own draw sequence.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t i) {
    return splitmix64(seed + 0x9e3779b97f4a7c15ull * (i + 1));
}

/// Uniform double in [0, 1). Hand-rolled from raw engine output so results do
/// not depend on the standard library's distribution implementations.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform index in [0, n). n must be > 0.
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
    return static_cast<std::size_t>(rng() % n);
}

}  // namespace birdsong
