#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace freshmarket::rng {

// Uniform double in [0, 1) from the top 53 bits of one mt19937_64 draw.
inline double uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Uniform index in [0, n). The floor(u*n) reduction has bias O(n/2^53).
inline std::size_t uniform_index(std::mt19937_64& g, std::size_t n) {
    return static_cast<std::size_t>(uniform01(g) * static_cast<double>(n));
}

// Exponential waiting time with the given rate.
inline double exponential(std::mt19937_64& g, double rate) {
    return -std::log(1.0 - uniform01(g)) / rate;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Per-cell seed derivation for parameter sweeps: one splitmix64 round of the
// base seed xored with the golden-ratio multiple of the cell index. Keeps
// sweep results independent of execution order and thread count.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) {
    return splitmix64(base ^ (0x9E3779B97F4A7C15ull * (index + 1)));
}

}  // namespace freshmarket::rng
