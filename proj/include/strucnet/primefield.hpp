#pragma once

#include "strucnet/matrix.hpp"

#include <cstdint>

namespace strucnet::gfp {

/// The field GF(p) with p = 2^31 - 1. Products of two reduced elements fit in
/// 62 bits, so plain uint64 arithmetic suffices. With free parameters drawn
/// uniformly from GF(p)*, a polynomial identity of degree d vanishes on a
/// random point with probability at most d / (p - 1), so ranks computed here
/// witness generic ranks with error below ~1e-6 even for degree ~10^3.
inline constexpr std::uint64_t kPrime = 2147483647ull;

inline std::uint64_t add(std::uint64_t a, std::uint64_t b) { return (a + b) % kPrime; }
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return (a + kPrime - b) % kPrime; }
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) { return (a * b) % kPrime; }

inline std::uint64_t pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t acc = 1;
  base %= kPrime;
  while (exp) {
    if (exp & 1) acc = mul(acc, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return acc;
}

inline std::uint64_t inv(std::uint64_t a) { return pow(a, kPrime - 2); }

using MatP = Mat<std::uint64_t>;

/// Row-reduction rank over GF(p). Destroys its copy of the argument.
int rank(MatP m);

/// Controllability-style block matrix [b, a b, a^2 b, ..., a^(steps-1) b].
MatP krylov(const MatP& a, const MatP& b, int steps);

}  // namespace strucnet::gfp
