#pragma once

#include <cstdint>
#include <random>

namespace rgd {

/// Every sampler takes one of these by reference.
using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent stream for task `index` under a run seed. Streams for the same
// (seed, index) pair are identical on every platform.
inline Rng make_stream(std::uint64_t seed, std::uint64_t index = 0) {
    std::uint64_t a = splitmix64(seed);
    std::uint64_t b = splitmix64(a ^ splitmix64(index + 0x632be59bd9b4e019ULL));
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return Rng(seq);
}

template <class R>
std::size_t uniform_index(std::size_t n, R& rng) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace rgd
