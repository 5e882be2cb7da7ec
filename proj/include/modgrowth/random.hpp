#pragma once

#include <cstdint>
#include <random>

namespace modgrowth::detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31U);
}

/// Generator for sample j of a run seeded with `seed`, independent of how
/// samples are split across threads.
inline std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t j) {
  return std::mt19937_64(splitmix64(seed * 0x100000001b3ULL + j));
}

// Uniform in [0, 1) from the top 53 bits; mt19937_64 output is fully
// specified, so samples are identical across standard libraries.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11U) * 0x1.0p-53; }

}  // namespace modgrowth::detail
