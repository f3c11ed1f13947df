#pragma once

#include <cstdint>
#include <random>

namespace gmrfig {

using Rng = std::mt19937_64;

/// Purpose tags for seed splitting. Every random stream in a run is keyed by
/// (root seed, purpose, counter), so adding or removing one consumer never
/// shifts the draws seen by another.
enum class Stream : std::uint64_t {
  initial_field = 1,
  sweep = 2,
  replica = 3,
  oracle = 4,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t root, Stream purpose,
                                    std::uint64_t counter) noexcept {
  std::uint64_t h = splitmix64(root);
  h = splitmix64(h ^ static_cast<std::uint64_t>(purpose));
  return splitmix64(h ^ counter);
}

inline Rng make_rng(std::uint64_t root, Stream purpose, std::uint64_t counter) {
  return Rng(derive_seed(root, purpose, counter));
}

}  // namespace gmrfig
