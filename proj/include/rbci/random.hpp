#pragma once

#include <cstdint>
#include <random>

namespace rbci {

using Rng = std::mt19937_64;
inline constexpr const char* kGeneratorName = "mt19937_64";

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based seed splitting: child seed for (stream, index) under `master`.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t index) noexcept {
  return splitmix64(splitmix64(master ^ splitmix64(stream)) + index);
}

/// Uniform integer in [0, bound) by rejection; identical output on every
/// standard library, unlike std::uniform_int_distribution.
template <class Generator>
std::uint64_t uniform_below(Generator& rng, std::uint64_t bound) {
  static_assert(Generator::min() == 0 && Generator::max() == ~std::uint64_t{0},
                "expects a full-range 64-bit generator");
  const std::uint64_t limit = Generator::max() - Generator::max() % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

}  // namespace rbci
