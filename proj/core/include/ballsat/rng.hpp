#pragma once

#include <cstdint>
#include <random>

namespace ballsat {

/// All randomized components draw from std::mt19937_64 seeded through
/// derive_seed, so a (seed, counter) pair fully identifies a stream.
using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed for the counter-th independent stream under `base`.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t counter) {
  return splitmix64(base ^ splitmix64(counter));
}

}  // namespace ballsat
