#pragma once

#include <cstdint>

namespace strucnet {

/// Deterministic 64-bit generator (splitmix64). Used everywhere instead of
/// <random> engines so that identical seeds give identical streams on every
/// platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound). bound >= 1. Rejection sampling keeps the
  /// distribution exact and the stream reproducible.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % bound;
  }

  /// Uniform integer in [lo, hi] inclusive.
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double real01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Bernoulli(p).
  bool chance(double p) { return real01() < p; }

 private:
  std::uint64_t state_;
};

/// Stable per-trial seed derivation: mixes a base seed with a trial index so
/// trials can run in any order (or in parallel) and still reproduce.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  Rng r(seed ^ (0xa24baed4963ee407ull * (index + 1)));
  return r.next();
}

}  // namespace strucnet
