#pragma once

#include <cstdint>
#include <vector>

namespace linkpred {

/// Finalizer of the splitmix64 generator. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Derive the seed of a child stream (trial, worker, ...) from a master
/// seed and a counter. Fixed mixing function so trials can be generated
/// independently and concurrently while staying reproducible.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master ^ mix64(index + 1));
}

/// Small deterministic PRNG (splitmix64). Used everywhere instead of the
/// standard distributions, whose output is implementation-defined; byte
/// reproducibility of result files depends on it.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Unbiased uniform integer in [0, n). n must be nonzero.
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t threshold = -n % n;  // 2^64 mod n
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

 private:
  std::uint64_t state_;
};

/// Fisher-Yates of the first k positions; the prefix [0, k) ends up a
/// uniform k-subset of the vector in uniform random order.
template <class T>
void partial_shuffle(std::vector<T>& v, std::size_t k, SplitMix64& rng) {
  const std::size_t n = v.size();
  if (k > n) k = n;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.next_below(n - i));
    if (j != i) std::swap(v[i], v[j]);
  }
}

}  // namespace linkpred
