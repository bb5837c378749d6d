#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "minkdev/market.hpp"

namespace minkdev {

// SplitMix64 finalizer; used to derive independent per-trial seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for trial `index` of a stream rooted at `seed`.  Reports replay a
// failing trial from (seed, index) alone.
constexpr std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  return mix_seed(mix_seed(seed) ^ (index * 0xd1b54a32d192ed03ULL));
}

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Entries drawn uniformly from [-range, range].
Position random_position(Rng& rng, std::size_t n, double range);

// Random space with probabilities bounded away from zero.
MarketSpace random_space(Rng& rng, std::size_t n);

}  // namespace minkdev
