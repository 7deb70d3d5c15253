#pragma once

#include <cstdint>
#include <random>

#include "genent/types.hpp"

namespace genent {

// splitmix64 finalizer over (seed, index). Gives every task in a batch its
// own decorrelated stream, so parallel scans reproduce the sequential result.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::mt19937_64 make_rng(RngSeed seed) { return std::mt19937_64(seed); }

}  // namespace genent
