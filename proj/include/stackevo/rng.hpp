#pragma once

#include <cassert>
#include <cstdint>
#include <random>
#include <vector>

namespace stackevo {

/// All randomized components draw from one mt19937_64 stream through the
/// helpers below, so a seed fully determines every decision of a run on any
/// platform.
using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

/// Uniform draw from [0, n). Rejection sampling keeps the draw unbiased.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  assert(n > 0);
  if (n == 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return static_cast<std::size_t>(v % n);
}

/// Uniform draw from [0, 1) with 53 bits of precision.
inline double uniform_real01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform draw from [lo, hi).
inline double uniform_real(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform_real01(rng);
}

/// Fisher-Yates shuffle driven by uniform_index, for reproducible ordering.
template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[uniform_index(rng, i)]);
  }
}

/// Draws k distinct indices from [0, n), uniformly ordered.
std::vector<std::size_t> sample_distinct(Rng& rng, std::size_t n, std::size_t k);

/// Per-run seed derivation: adding games or runs to a config never shifts the
/// seeds of other cells.
inline std::uint64_t derive_seed(std::uint64_t base_seed, const std::string& game_id,
                                 std::uint64_t run_index) {
  return splitmix64(splitmix64(base_seed ^ fnv1a64(game_id)) ^ run_index);
}

}  // namespace stackevo
