#include "strucnet/primefield.hpp"

namespace strucnet::gfp {

int rank(MatP m) {
  const int rows = m.rows();
  const int cols = m.cols();
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pivot = -1;
    for (int i = r; i < rows; ++i) {
      if (m(i, c) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != r)
      for (int j = c; j < cols; ++j) std::swap(m(pivot, j), m(r, j));
    const std::uint64_t piv_inv = inv(m(r, c));
    for (int i = r + 1; i < rows; ++i) {
      if (m(i, c) == 0) continue;
      const std::uint64_t f = mul(m(i, c), piv_inv);
      for (int j = c; j < cols; ++j) m(i, j) = sub(m(i, j), mul(f, m(r, j)));
    }
    ++r;
  }
  return r;
}

MatP krylov(const MatP& a, const MatP& b, int steps) {
  const int n = a.rows();
  const int m = b.cols();
  MatP out(n, m * steps);
  MatP block = b;
  for (int s = 0; s < steps; ++s) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) out(i, s * m + j) = block(i, j);
    if (s + 1 < steps) {
      MatP next(n, m);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
          if (a(i, k) == 0) continue;
          for (int j = 0; j < m; ++j)
            next(i, j) = add(next(i, j), mul(a(i, k), block(k, j)));
        }
      block = next;
    }
  }
  return out;
}

}  // namespace strucnet::gfp
