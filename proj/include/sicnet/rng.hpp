#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace sicnet {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of the stream owned by one replicate; a pure function of its inputs.
constexpr std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t replicate_index)
{
    return mix64(mix64(master_seed) ^ mix64(replicate_index + 0x632be59bd9b4e019ULL));
}

inline std::mt19937_64 make_stream(std::uint64_t master_seed, std::uint64_t replicate_index)
{
    return std::mt19937_64(stream_seed(master_seed, replicate_index));
}

/// Uniform on [0, 1) with 53 random bits. Defined here rather than through
/// std::uniform_real_distribution so that outputs are identical across
/// standard library implementations.
inline double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

/// Unit-mean exponential variate.
inline double exp1(std::mt19937_64& rng) { return -std::log1p(-uniform01(rng)); }

}  // namespace sicnet
