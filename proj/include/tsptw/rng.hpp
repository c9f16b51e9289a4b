#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace tsptw {

// SplitMix64 finalizer. Used for seed derivation so that nearby seeds map to
// unrelated engine states.
std::uint64_t splitmix64(std::uint64_t x);

// Deterministic random source. mt19937_64 output is fully specified by the
// standard; the derived draws below avoid std::uniform_*_distribution, whose
// sequences are implementation-defined, so identical seeds give identical
// results on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Unbiased uniform draw from [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  // Uniform on the inclusive range [lo, hi].
  int uniform_int(int lo, int hi);

  // Uniform real in [lo, hi). 53-bit resolution.
  double uniform_real(double lo, double hi);

  bool coin() { return (next_u64() >> 63) != 0; }

  // Fisher-Yates shuffle.
  void shuffle(std::vector<int>& values);

  // Random permutation of {0..n-1}.
  std::vector<int> permutation(int n);

  // k distinct values from {0..n-1}, in draw order (partial Fisher-Yates).
  std::vector<int> sample(int n, int k);

 private:
  std::mt19937_64 engine_;
};

}  // namespace tsptw
