#pragma once

#include "strucnet/matrix.hpp"

#include <utility>
#include <vector>

namespace strucnet::exactla {

// ---------------------------------------------------------------------------
// Exact linear algebra over the rationals. Everything here is deterministic
// and tolerance-free; it backs the algebraic controllability certificates.
// ---------------------------------------------------------------------------

/// Rank by Gaussian elimination.
int rank(MatQ a);

/// Reduced row echelon form. If `pivots` is given it receives the pivot
/// column indices in order.
MatQ rref(MatQ a, std::vector<int>* pivots = nullptr);

/// Columns form a basis of the null space of `a` (n x k, k = n - rank).
MatQ kernel_basis(const MatQ& a);

/// Columns form a basis of the column space of `a` (subset of a's columns).
MatQ column_space_basis(const MatQ& a);

/// True iff every column of `b` lies in the column space of `a`.
bool contains_columns(const MatQ& a, const MatQ& b);

/// Basis of (column space of u) intersected with (column space of v).
MatQ intersect_column_spaces(const MatQ& u, const MatQ& v);

/// Solve a x = b exactly (a square nonsingular). Throws on singular a.
MatQ solve(const MatQ& a, const MatQ& b);

/// Krylov block matrix [b, a b, ..., a^(steps-1) b].
MatQ krylov(const MatQ& a, const MatQ& b, int steps);

// ---------------------------------------------------------------------------
// Exact univariate polynomials over Q, coefficients ascending by degree.
// ---------------------------------------------------------------------------

using Poly = std::vector<Rat>;

int degree(const Poly& p);
Poly derivative(const Poly& p);
Rat eval(const Poly& p, const Rat& x);
/// Divides out (x - root); the root must actually be a root.
Poly deflate(const Poly& p, const Rat& root);
/// Monic gcd over Q.
Poly poly_gcd(Poly a, Poly b);

/// Characteristic polynomial of a square matrix (Faddeev-LeVerrier, exact).
Poly charpoly(const MatQ& a);

/// Minimal polynomial via the first linear dependence among I, a, a^2, ...
Poly minimal_poly(const MatQ& a);

/// Rational roots with multiplicities plus the degree of the (root-free)
/// remaining factor. `budget_ok` is false when divisor enumeration was
/// abandoned (huge coefficients), in which case roots may be incomplete.
struct RootSplit {
  std::vector<std::pair<Rat, int>> roots;
  int leftover_degree = 0;
  bool budget_ok = true;
};
RootSplit rational_roots(Poly p);

}  // namespace strucnet::exactla
