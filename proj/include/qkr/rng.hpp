#pragma once

#include <cstdint>
#include <random>

namespace qkr {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of trajectory `trajectory` at grid point `grid_index`:
//   splitmix64(splitmix64(splitmix64(master) ^ grid) ^ trajectory)
// Each trajectory is reproducible in isolation from these three numbers.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t grid_index,
                                    std::uint64_t trajectory) {
  return splitmix64(splitmix64(splitmix64(master) ^ grid_index) ^ trajectory);
}

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace qkr
