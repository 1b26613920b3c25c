#include "strucnet/rational_linalg.hpp"

#include "strucnet/errors.hpp"

#include <algorithm>

namespace strucnet::exactla {

namespace {

using Int = boost::multiprecision::cpp_int;

// Forward elimination in place; returns pivot columns. Works on any shape.
std::vector<int> eliminate(MatQ& m) {
  const int rows = m.rows();
  const int cols = m.cols();
  std::vector<int> pivots;
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
      for (int j = 0; j < cols; ++j) std::swap(m(pivot, j), m(r, j));
    const Rat inv_piv = Rat(1) / m(r, c);
    for (int j = c; j < cols; ++j) m(r, j) *= inv_piv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rat f = m(i, c);
      for (int j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

int rank(MatQ a) { return static_cast<int>(eliminate(a).size()); }

MatQ rref(MatQ a, std::vector<int>* pivots) {
  auto p = eliminate(a);
  if (pivots) *pivots = std::move(p);
  return a;
}

MatQ kernel_basis(const MatQ& a) {
  const int n = a.cols();
  std::vector<int> pivots;
  MatQ r = rref(a, &pivots);
  std::vector<char> is_pivot(n, 0);
  for (int c : pivots) is_pivot[c] = 1;
  std::vector<int> free_cols;
  for (int c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  MatQ k(n, static_cast<int>(free_cols.size()));
  for (int fi = 0; fi < static_cast<int>(free_cols.size()); ++fi) {
    const int fc = free_cols[fi];
    k(fc, fi) = 1;
    for (int pi = 0; pi < static_cast<int>(pivots.size()); ++pi)
      k(pivots[pi], fi) = -r(pi, fc);
  }
  return k;
}

MatQ column_space_basis(const MatQ& a) {
  std::vector<int> pivots;
  rref(a, &pivots);
  MatQ basis(a.rows(), static_cast<int>(pivots.size()));
  for (int j = 0; j < static_cast<int>(pivots.size()); ++j)
    for (int i = 0; i < a.rows(); ++i) basis(i, j) = a(i, pivots[j]);
  return basis;
}

bool contains_columns(const MatQ& a, const MatQ& b) {
  if (b.cols() == 0) return true;
  const int ra = rank(a);
  return rank(hstack(a, b)) == ra;
}

MatQ intersect_column_spaces(const MatQ& u, const MatQ& v) {
  // x in both spaces  <=>  x = u a = v b  <=>  [u  -v] [a; b] = 0.
  if (u.cols() == 0 || v.cols() == 0) return MatQ(u.rows(), 0);
  MatQ neg_v = v * Rat(-1);
  MatQ combined = hstack(u, neg_v);
  MatQ null_basis = kernel_basis(combined);
  MatQ result(u.rows(), null_basis.cols());
  for (int j = 0; j < null_basis.cols(); ++j)
    for (int i = 0; i < u.rows(); ++i) {
      Rat acc = 0;
      for (int k = 0; k < u.cols(); ++k) acc += u(i, k) * null_basis(k, j);
      result(i, j) = acc;
    }
  return column_space_basis(result);
}

MatQ solve(const MatQ& a, const MatQ& b) {
  if (a.rows() != a.cols() || a.rows() != b.rows())
    throw PreconditionError("solve: shape mismatch");
  std::vector<int> pivots;
  MatQ aug = rref(hstack(a, b), &pivots);
  if (static_cast<int>(pivots.size()) != a.cols() || (!pivots.empty() && pivots.back() >= a.cols()))
    throw PreconditionError("solve: singular matrix");
  MatQ x(a.cols(), b.cols());
  for (int i = 0; i < a.cols(); ++i)
    for (int j = 0; j < b.cols(); ++j) x(i, j) = aug(i, a.cols() + j);
  return x;
}

MatQ krylov(const MatQ& a, const MatQ& b, int steps) {
  MatQ out(a.rows(), 0);
  MatQ block = b;
  for (int s = 0; s < steps; ++s) {
    out = hstack(out, block);
    if (s + 1 < steps) block = a * block;
  }
  return out;
}

// --------------------------------------------------------------------------
// Polynomials.
// --------------------------------------------------------------------------

namespace {
void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}
}  // namespace

int degree(const Poly& p) {
  int d = static_cast<int>(p.size()) - 1;
  while (d >= 0 && p[d] == 0) --d;
  return d;
}

Poly derivative(const Poly& p) {
  Poly d;
  for (int i = 1; i < static_cast<int>(p.size()); ++i) d.push_back(p[i] * Rat(i));
  trim(d);
  return d;
}

Rat eval(const Poly& p, const Rat& x) {
  Rat acc = 0;
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) acc = acc * x + p[i];
  return acc;
}

Poly deflate(const Poly& p, const Rat& root) {
  // Synthetic division by (x - root); remainder must vanish.
  const int d = degree(p);
  Poly q(static_cast<std::size_t>(d), Rat(0));
  Rat carry = 0;
  for (int i = d; i >= 1; --i) {
    carry = p[i] + carry * root;
    q[i - 1] = carry;
  }
  // remainder = p[0] + carry * root
  return q;
}

Poly poly_gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (degree(b) >= 0) {
    // a mod b
    Poly r = a;
    const int db = degree(b);
    while (degree(r) >= db && degree(r) >= 0) {
      const int dr = degree(r);
      const Rat f = r[dr] / b[db];
      for (int i = 0; i <= db; ++i) r[dr - db + i] -= f * b[i];
      trim(r);
      if (db == 0) break;  // dividing by a constant: remainder is zero
    }
    if (db == 0) r.clear();
    a = std::move(b);
    b = std::move(r);
  }
  trim(a);
  if (!a.empty()) {
    const Rat lead = a[degree(a)];
    for (auto& c : a) c /= lead;
  }
  return a;
}

Poly charpoly(const MatQ& a) {
  // Faddeev-LeVerrier: exact, O(n^4), fine at desk scale.
  const int n = a.rows();
  Poly c(static_cast<std::size_t>(n) + 1, Rat(0));
  c[n] = 1;
  MatQ m(n, n);  // M_0 = 0
  for (int k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I
    m = a * m;
    const Rat prev = c[n - k + 1];
    for (int i = 0; i < n; ++i) m(i, i) += prev;
    // c_{n-k} = -tr(A M_k) / k
    MatQ am = a * m;
    Rat tr = 0;
    for (int i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / Rat(k);
  }
  return c;
}

Poly minimal_poly(const MatQ& a) {
  const int n = a.rows();
  const int dim = n * n;
  // Incrementally reduce vec(A^k) against the span of earlier powers.
  std::vector<std::vector<Rat>> basis;          // reduced rows
  std::vector<int> lead;                        // leading index per basis row
  std::vector<std::vector<Rat>> combo;          // coordinates in terms of powers
  MatQ power = MatQ::identity(n);
  for (int k = 0;; ++k) {
    std::vector<Rat> v(static_cast<std::size_t>(dim));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(i) * n + j] = power(i, j);
    std::vector<Rat> coeff(static_cast<std::size_t>(k) + 1, Rat(0));
    coeff[k] = 1;
    // Reduce v against the basis, tracking the expression in powers of A.
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const int l = lead[b];
      if (v[l] == 0) continue;
      const Rat f = v[l];
      for (int i = 0; i < dim; ++i) v[i] -= f * basis[b][i];
      for (std::size_t i = 0; i < combo[b].size(); ++i) coeff[i] -= f * combo[b][i];
    }
    int l = -1;
    for (int i = 0; i < dim; ++i) {
      if (v[i] != 0) {
        l = i;
        break;
      }
    }
    if (l < 0) {
      // A^k = sum of lower powers: coeff (negated below the top) is minimal.
      Poly mp(coeff.begin(), coeff.end());
      // coeff currently encodes A^k - sum(...) = 0, i.e. the poly itself.
      return mp;
    }
    const Rat f = Rat(1) / v[l];
    for (int i = 0; i < dim; ++i) v[i] *= f;
    for (auto& c : coeff) c *= f;
    basis.push_back(std::move(v));
    lead.push_back(l);
    combo.push_back(std::move(coeff));
    power = power * a;
  }
}

namespace {

// Divisors of |x| up to a search budget; empty when the budget is exceeded.
std::vector<Int> bounded_divisors(Int x, bool* ok) {
  if (x < 0) x = -x;
  std::vector<Int> divs;
  if (x == 0) {
    *ok = true;
    return divs;  // never queried: zero roots are stripped first
  }
  const Int kTrialLimit = 1000000;  // trial division bound
  std::vector<std::pair<Int, int>> factors;
  Int rem = x;
  for (Int d = 2; d * d <= rem && d <= kTrialLimit; ++d) {
    if (rem % d == 0) {
      int e = 0;
      while (rem % d == 0) {
        rem /= d;
        ++e;
      }
      factors.emplace_back(d, e);
    }
  }
  if (rem > 1) {
    if (rem > kTrialLimit * kTrialLimit) {
      // rem has no factor below the trial limit, so it is prime or a product
      // of two primes above it; we cannot tell cheaply, and treating it as
      // prime could silently miss roots. Give up instead.
      *ok = false;
      return {};
    }
    factors.emplace_back(rem, 1);  // certified prime by the trial bound
  }
  divs.push_back(1);
  for (auto& [prime, count] : factors) {
    const std::size_t base = divs.size();
    Int pk = 1;
    for (int e = 1; e <= count; ++e) {
      pk *= prime;
      for (std::size_t i = 0; i < base; ++i) {
        divs.push_back(divs[i] * pk);
        if (divs.size() > 20000) {
          *ok = false;
          return {};
        }
      }
    }
  }
  std::sort(divs.begin(), divs.end());
  *ok = true;
  return divs;
}

}  // namespace

RootSplit rational_roots(Poly p) {
  RootSplit out;
  trim(p);
  if (p.empty()) return out;  // zero polynomial: treat as rootless
  // Strip zero roots.
  int zero_mult = 0;
  while (degree(p) >= 1 && p[0] == 0) {
    p.erase(p.begin());
    ++zero_mult;
  }
  if (zero_mult > 0) out.roots.emplace_back(Rat(0), zero_mult);
  while (degree(p) >= 1) {
    if (degree(p) == 1) {  // linear factor: root is immediate, no divisor search
      out.roots.emplace_back(-p[0] / p[1], 1);
      p = {p[1]};
      break;
    }
    // Primitive integer form.
    Int denom_lcm = 1;
    for (const auto& c : p)
      denom_lcm = boost::multiprecision::lcm(denom_lcm, boost::multiprecision::denominator(c));
    std::vector<Int> ip;
    for (const auto& c : p)
      ip.push_back(boost::multiprecision::numerator(c) * (denom_lcm / boost::multiprecision::denominator(c)));
    const int d = degree(p);
    bool ok0 = false, okl = false;
    const std::vector<Int> num_divs = bounded_divisors(ip[0], &ok0);
    const std::vector<Int> den_divs = bounded_divisors(ip[d], &okl);
    if (!ok0 || !okl) {
      out.budget_ok = false;
      out.leftover_degree = d;
      return out;
    }
    bool found = false;
    for (const Int& a : num_divs) {
      for (const Int& b : den_divs) {
        for (int sign = 0; sign < 2 && !found; ++sign) {
          Rat cand(sign == 0 ? a : -a, b);
          if (eval(p, cand) == 0) {
            int mult = 0;
            while (eval(p, cand) == 0 && degree(p) >= 1) {
              p = deflate(p, cand);
              ++mult;
            }
            out.roots.emplace_back(cand, mult);
            found = true;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) break;
  }
  out.leftover_degree = std::max(0, degree(p));
  return out;
}

}  // namespace strucnet::exactla
