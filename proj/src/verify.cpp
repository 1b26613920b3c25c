#include "strucnet/verify.hpp"

#include "strucnet/errors.hpp"
#include "strucnet/primefield.hpp"
#include "strucnet/rational_linalg.hpp"
#include "strucnet/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <thread>

namespace strucnet {

std::string to_string(FieldKind f) {
  switch (f) {
    case FieldKind::PrimeField: return "prime_field";
    case FieldKind::Float64: return "float64";
    case FieldKind::Rational: return "rational";
  }
  return "?";
}

std::string to_string(PbhMode m) {
  return m == PbhMode::Float64 ? "float64" : "rational";
}
std::string to_string(PbhHypothesis h) {
  switch (h) {
    case PbhHypothesis::Holds: return "holds";
    case PbhHypothesis::Violated: return "violated";
    case PbhHypothesis::Unknown: return "unknown";
  }
  return "?";
}
std::string to_string(PbhVerdict v) {
  switch (v) {
    case PbhVerdict::OutputControllable: return "output_controllable";
    case PbhVerdict::NotOutputControllable: return "not_output_controllable";
    case PbhVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}
std::string to_string(PbhWhichTest t) {
  switch (t) {
    case PbhWhichTest::Theorem4Block: return "eigenvector_block_rank";
    case PbhWhichTest::SingleEigenvalue: return "single_uncontrollable_eigenvalue";
    case PbhWhichTest::DirectRank: return "direct_rank";
    case PbhWhichTest::None: return "none";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Structured pattern of an extended network.
// ---------------------------------------------------------------------------

namespace {

struct Pattern {
  int total = 0;  // n_hat
  std::vector<int> offset;
  std::vector<std::vector<char>> a_free;   // n_hat x n_hat
  std::vector<std::vector<char>> b_free;   // n_hat x m
  std::vector<std::vector<char>> c_free;   // n x n_hat
  std::vector<std::vector<char>> c_fixed;  // n x n_hat (the constant-1 weights)
};

Pattern build_pattern(const ExtendedNetwork& net) {
  validate(net);
  const int n = net.base.n;
  Pattern pat;
  pat.offset.assign(n + 1, 0);
  for (int i = 0; i < n; ++i) pat.offset[i + 1] = pat.offset[i] + net.orders[i];
  pat.total = pat.offset[n];
  pat.a_free.assign(pat.total, std::vector<char>(pat.total, 0));
  pat.b_free.assign(pat.total, std::vector<char>(net.base.m, 0));
  pat.c_free.assign(n, std::vector<char>(pat.total, 0));
  pat.c_fixed.assign(n, std::vector<char>(pat.total, 0));

  for (auto [from, to] : net.base.state_edges)
    for (int a = 0; a < net.orders[to]; ++a)
      for (int b = 0; b < net.orders[from]; ++b)
        pat.a_free[pat.offset[to] + a][pat.offset[from] + b] = 1;
  for (int i = 0; i < n; ++i) {
    if (!net.heterogeneous[i]) continue;
    for (int a = 0; a < net.orders[i]; ++a)
      for (int b = 0; b < net.orders[i]; ++b)
        pat.a_free[pat.offset[i] + a][pat.offset[i] + b] = 1;
  }
  for (auto [input, to] : net.base.input_edges)
    for (int a = 0; a < net.orders[to]; ++a) pat.b_free[pat.offset[to] + a][input] = 1;
  for (int i = 0; i < n; ++i) {
    if (net.orders[i] == 1)
      pat.c_fixed[i][pat.offset[i]] = 1;  // weight pinned to 1
    else
      for (int a = 0; a < net.orders[i]; ++a) pat.c_free[i][pat.offset[i] + a] = 1;
  }
  return pat;
}

Rat draw_value(Rng& rng, FieldKind field) {
  switch (field) {
    case FieldKind::PrimeField:
      return Rat(static_cast<std::int64_t>(rng.below(gfp::kPrime - 1) + 1));
    case FieldKind::Float64: {
      double x = 0;
      do {
        x = rng.real01() * 2.0 - 1.0;
      } while (std::abs(x) < 0.05);
      return Rat(x);  // dyadic, exact
    }
    case FieldKind::Rational: {
      std::int64_t v = 0;
      do {
        v = rng.range(-99, 99);
      } while (v == 0);
      return Rat(v);
    }
  }
  return Rat(0);
}

}  // namespace

RealizationSample sample_realization(const ExtendedNetwork& net, FieldKind field,
                                     std::uint64_t seed) {
  const Pattern pat = build_pattern(net);
  RealizationSample sample;
  sample.field = field;
  sample.prime = field == FieldKind::PrimeField ? gfp::kPrime : 0;
  sample.seed = seed;
  sample.A = MatQ(pat.total, pat.total);
  sample.B = MatQ(pat.total, net.base.m);
  sample.C = MatQ(net.base.n, pat.total);
  Rng rng(seed);
  // Row-major draw order over A, then B, then C: the stream is part of the
  // reproducibility contract.
  for (int r = 0; r < pat.total; ++r)
    for (int c = 0; c < pat.total; ++c)
      if (pat.a_free[r][c]) sample.A(r, c) = draw_value(rng, field);
  for (int r = 0; r < pat.total; ++r)
    for (int c = 0; c < net.base.m; ++c)
      if (pat.b_free[r][c]) sample.B(r, c) = draw_value(rng, field);
  for (int r = 0; r < net.base.n; ++r)
    for (int c = 0; c < pat.total; ++c) {
      if (pat.c_fixed[r][c]) sample.C(r, c) = 1;
      else if (pat.c_free[r][c]) sample.C(r, c) = draw_value(rng, field);
    }
  return sample;
}

bool pattern_admissible(const RealizationSample& sample, const ExtendedNetwork& net) {
  const Pattern pat = build_pattern(net);
  if (sample.A.rows() != pat.total || sample.A.cols() != pat.total) return false;
  if (sample.B.rows() != pat.total || sample.B.cols() != net.base.m) return false;
  if (sample.C.rows() != net.base.n || sample.C.cols() != pat.total) return false;
  for (int r = 0; r < pat.total; ++r)
    for (int c = 0; c < pat.total; ++c)
      if (sample.A(r, c) != 0 && !pat.a_free[r][c]) return false;
  for (int r = 0; r < pat.total; ++r)
    for (int c = 0; c < net.base.m; ++c)
      if (sample.B(r, c) != 0 && !pat.b_free[r][c]) return false;
  for (int r = 0; r < net.base.n; ++r)
    for (int c = 0; c < pat.total; ++c) {
      if (pat.c_fixed[r][c]) {
        if (sample.C(r, c) != 1) return false;
      } else if (sample.C(r, c) != 0 && !pat.c_free[r][c]) {
        return false;
      }
    }
  return true;
}

// ---------------------------------------------------------------------------
// Generic ranks over the prime field.
// ---------------------------------------------------------------------------

namespace {

gfp::MatP to_prime_field(const MatQ& m) {
  gfp::MatP out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      const Rat& v = m(r, c);
      // Samples drawn over the prime field hold integer representatives.
      const auto num = boost::multiprecision::numerator(v);
      const auto den = boost::multiprecision::denominator(v);
      std::int64_t ni = num.convert_to<std::int64_t>();
      std::int64_t di = den.convert_to<std::int64_t>();
      std::uint64_t nm = ni >= 0 ? static_cast<std::uint64_t>(ni) % gfp::kPrime
                                 : gfp::kPrime - (static_cast<std::uint64_t>(-ni) % gfp::kPrime);
      if (nm == gfp::kPrime) nm = 0;
      out(r, c) = gfp::mul(nm, gfp::inv(static_cast<std::uint64_t>(di) % gfp::kPrime));
    }
  return out;
}

RankVerification run_trials(const ExtendedNetwork& net, int trials, std::uint64_t seed, int jobs,
                            bool output_rank) {
  validate(net);
  if (trials < 1) throw PreconditionError("trials must be >= 1");
  const int n_hat = net.total_order();
  RankVerification out;
  out.seed = seed;
  out.target = output_rank ? net.base.n : n_hat;
  out.per_trial.assign(trials, 0);

  auto run_one = [&net, seed, n_hat, output_rank](int t) {
    const RealizationSample sample =
        sample_realization(net, FieldKind::PrimeField, derive_seed(seed, t));
    const gfp::MatP a = to_prime_field(sample.A);
    const gfp::MatP b = to_prime_field(sample.B);
    gfp::MatP reach = gfp::krylov(a, b, n_hat);
    if (!output_rank) return gfp::rank(std::move(reach));
    const gfp::MatP c = to_prime_field(sample.C);
    gfp::MatP cr(c.rows(), reach.cols());
    for (int i = 0; i < c.rows(); ++i)
      for (int k = 0; k < c.cols(); ++k) {
        if (c(i, k) == 0) continue;
        for (int j = 0; j < reach.cols(); ++j)
          cr(i, j) = gfp::add(cr(i, j), gfp::mul(c(i, k), reach(k, j)));
      }
    return gfp::rank(std::move(cr));
  };

  jobs = std::max(1, jobs);
  if (jobs == 1 || trials == 1) {
    for (int t = 0; t < trials; ++t) out.per_trial[t] = run_one(t);
  } else {
    std::vector<std::thread> workers;
    const int stride = jobs;
    for (int w = 0; w < jobs; ++w)
      workers.emplace_back([&out, &run_one, w, stride, trials]() {
        for (int t = w; t < trials; t += stride) out.per_trial[t] = run_one(t);
      });
    for (auto& th : workers) th.join();
  }
  out.rank = *std::max_element(out.per_trial.begin(), out.per_trial.end());
  out.full_rank = out.rank == out.target;
  return out;
}

}  // namespace

RankVerification generic_rank_controllability(const ExtendedNetwork& net, int trials,
                                              std::uint64_t seed, int jobs) {
  return run_trials(net, trials, seed, jobs, false);
}

RankVerification generic_rank_output_controllability(const ExtendedNetwork& net, int trials,
                                                     std::uint64_t seed, int jobs) {
  return run_trials(net, trials, seed, jobs, true);
}

// ---------------------------------------------------------------------------
// Eigenvector-based output controllability test, exact rational mode.
// ---------------------------------------------------------------------------

namespace {

using exactla::Poly;

double rat_to_double(const Rat& v) { return v.convert_to<double>(); }

// Extends a column basis to a full square invertible matrix using standard
// basis vectors.
MatQ extend_to_square(const MatQ& basis, int n) {
  MatQ p = basis;
  int r = exactla::rank(p);
  for (int i = 0; i < n && p.cols() < n; ++i) {
    MatQ e(n, 1);
    e(i, 0) = 1;
    MatQ candidate = hstack(p, e);
    if (exactla::rank(candidate) > r) {
      p = std::move(candidate);
      ++r;
    }
  }
  return p;
}

struct RationalSpectrum {
  std::vector<PbhEigenvalue> eigenvalues;  // distinct rational ones
  int leftover_degree = 0;                 // irrational / unresolved part
  bool complete = false;
};

RationalSpectrum split_spectrum(const MatQ& a) {
  RationalSpectrum out;
  if (a.rows() == 0) {
    out.complete = true;
    return out;
  }
  const exactla::RootSplit roots = exactla::rational_roots(exactla::charpoly(a));
  for (const auto& [value, mult] : roots.roots) {
    PbhEigenvalue e;
    e.approx = {rat_to_double(value), 0.0};
    e.multiplicity = mult;
    e.is_rational = true;
    e.exact = value;
    out.eigenvalues.push_back(std::move(e));
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(),
            [](const PbhEigenvalue& x, const PbhEigenvalue& y) { return x.exact < y.exact; });
  out.leftover_degree = roots.leftover_degree;
  out.complete = roots.leftover_degree == 0 && roots.budget_ok;
  return out;
}

// [lambda I - A, B] as one matrix.
MatQ pencil(const MatQ& a, const MatQ& b, const Rat& lambda) {
  const int n = a.rows();
  MatQ lhs(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) lhs(i, j) = (i == j ? lambda : Rat(0)) - a(i, j);
  return hstack(lhs, b);
}

PbhReport pbh_rational(const MatQ& A, const MatQ& B, const MatQ& C, PbhReport report) {
  const int n = report.n;
  const int p = report.p;

  // Controllable subspace and its quotient spectrum.
  const MatQ reach = exactla::krylov(A, B, n);
  report.controllable_rank = exactla::rank(reach);
  RationalSpectrum unc;
  if (report.controllable_rank == n) {
    unc.complete = true;
  } else {
    const MatQ basis = exactla::column_space_basis(reach);
    const MatQ p_full = extend_to_square(basis, n);
    const MatQ a_sim = exactla::solve(p_full, A * p_full);  // P^-1 A P
    const int r = basis.cols();
    for (int i = r; i < n; ++i)
      for (int j = 0; j < r; ++j)
        if (a_sim(i, j) != 0) throw Error("internal: controllable subspace not invariant");
    MatQ a22(n - r, n - r);
    for (int i = 0; i < n - r; ++i)
      for (int j = 0; j < n - r; ++j) a22(i, j) = a_sim(r + i, r + j);
    unc = split_spectrum(a22);
  }
  report.uncontrollable = unc.eigenvalues;
  report.uncontrollable_complete = unc.complete;

  // Full spectrum (for the report and the naive diagnostic).
  const RationalSpectrum spectrum = split_spectrum(A);
  report.eigenvalues = spectrum.eigenvalues;
  report.irrational_spectrum_degree = spectrum.leftover_degree;

  // Jordan structure: defective eigenvalues are the repeated roots of the
  // minimal polynomial; N stacks ker(lI - A^T) ∩ im(lI - A^T) over them.
  const Poly minimal = exactla::minimal_poly(A);
  const Poly repeated = exactla::poly_gcd(minimal, exactla::derivative(minimal));
  report.diagonalizable = exactla::degree(repeated) == 0;
  if (report.diagonalizable) {
    report.n_basis = MatQ(n, 0);
    report.hypothesis = PbhHypothesis::Holds;
  } else {
    const exactla::RootSplit defective = exactla::rational_roots(repeated);
    if (defective.leftover_degree > 0 || !defective.budget_ok) {
      report.hypothesis = PbhHypothesis::Unknown;
      report.note = "defective eigenvalues are not all rational; N is unavailable";
    } else {
      const MatQ at = A.transpose();
      MatQ n_basis(n, 0);
      for (const auto& [lambda, mult] : defective.roots) {
        MatQ shifted(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) shifted(i, j) = (i == j ? lambda : Rat(0)) - at(i, j);
        const MatQ heads = exactla::intersect_column_spaces(exactla::kernel_basis(shifted),
                                                            exactla::column_space_basis(shifted));
        n_basis = hstack(n_basis, heads);
      }
      n_basis = exactla::column_space_basis(n_basis);
      const MatQ blocked = exactla::intersect_column_spaces(
          n_basis, exactla::kernel_basis(B.transpose()));
      report.hypothesis = exactla::contains_columns(C.transpose(), blocked)
                              ? PbhHypothesis::Holds
                              : PbhHypothesis::Violated;
      report.n_basis = std::move(n_basis);
    }
  }

  // Naive per-eigenvalue diagnostic (exact only when the spectrum splits).
  if (spectrum.complete) {
    bool all_pass = true;
    for (const auto& e : report.eigenvalues)
      if (exactla::rank(C * pencil(A, B, e.exact)) != p) all_pass = false;
    report.naive_per_eigenvalue_pass = all_pass;
  }

  // Verdict.
  if (report.controllable_rank == n) {
    report.which_test = PbhWhichTest::DirectRank;
    report.certificate_rank = exactla::rank(C * reach);
    report.certificate_target = p;
    report.verdict = report.certificate_rank == p ? PbhVerdict::OutputControllable
                                                  : PbhVerdict::NotOutputControllable;
    return report;
  }
  if (!report.uncontrollable_complete) {
    report.verdict = PbhVerdict::Inconclusive;
    report.note = "uncontrollable spectrum is not fully rational";
    return report;
  }
  if (report.hypothesis == PbhHypothesis::Violated) {
    report.verdict = PbhVerdict::Inconclusive;
    report.note = "subspace hypothesis violated; the block test does not apply";
    return report;
  }
  if (report.hypothesis == PbhHypothesis::Unknown) {
    report.verdict = PbhVerdict::Inconclusive;
    return report;
  }
  if (report.uncontrollable.size() == 1) {
    report.which_test = PbhWhichTest::SingleEigenvalue;
    report.certificate_rank = exactla::rank(C * pencil(A, B, report.uncontrollable[0].exact));
    report.certificate_target = p;
    report.verdict = report.certificate_rank == p ? PbhVerdict::OutputControllable
                                                  : PbhVerdict::NotOutputControllable;
    return report;
  }
  // Block test over all distinct eigenvalues when the whole spectrum is
  // rational (the controllable ones contribute full-rank blocks), otherwise
  // over the uncontrollable eigenvalues only — an equivalent reduction.
  std::vector<Rat> block_eigs;
  if (spectrum.complete)
    for (const auto& e : report.eigenvalues) block_eigs.push_back(e.exact);
  else
    for (const auto& e : report.uncontrollable) block_eigs.push_back(e.exact);
  const MatQ kc = exactla::kernel_basis(C);
  const int r_blocks = static_cast<int>(block_eigs.size());
  const int m = report.m;
  MatQ big(r_blocks * n, r_blocks * (n + m) + kc.cols());
  for (int bi = 0; bi < r_blocks; ++bi) {
    const MatQ block = pencil(A, B, block_eigs[bi]);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n + m; ++j) big(bi * n + i, bi * (n + m) + j) = block(i, j);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < kc.cols(); ++j)
        big(bi * n + i, r_blocks * (n + m) + j) = kc(i, j);
  }
  report.which_test = PbhWhichTest::Theorem4Block;
  report.certificate_rank = exactla::rank(big);
  report.certificate_target = r_blocks * n;
  report.verdict = report.certificate_rank == report.certificate_target
                       ? PbhVerdict::OutputControllable
                       : PbhVerdict::NotOutputControllable;
  return report;
}

// ---------------------------------------------------------------------------
// Float mode: SVD ranks with the documented tolerance.
// ---------------------------------------------------------------------------

int svd_rank(const Eigen::MatrixXcd& m, int tol_exp) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cutoff =
      static_cast<double>(std::max(m.rows(), m.cols())) * sv(0) * std::ldexp(1.0, tol_exp);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  return rank;
}

PbhReport pbh_float(const MatQ& Aq, const MatQ& Bq, const MatQ& Cq, PbhReport report,
                    const PbhOptions& options) {
  const int n = report.n;
  const int m = report.m;
  const int p = report.p;
  Eigen::MatrixXd A(n, n), B(n, m), C(p, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = rat_to_double(Aq(i, j));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) B(i, j) = rat_to_double(Bq(i, j));
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < n; ++j) C(i, j) = rat_to_double(Cq(i, j));

  Eigen::EigenSolver<Eigen::MatrixXd> es(A);
  std::vector<std::complex<double>> eigs(es.eigenvalues().data(),
                                         es.eigenvalues().data() + n);
  std::sort(eigs.begin(), eigs.end(), [](const auto& x, const auto& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  double scale = 1.0;
  for (const auto& e : eigs) scale = std::max(scale, std::abs(e));
  const double tol = options.eig_cluster_tol * scale;
  for (std::size_t i = 0; i < eigs.size();) {
    std::size_t j = i;
    std::complex<double> sum = 0;
    while (j < eigs.size() && std::abs(eigs[j] - eigs[i]) <= tol) sum += eigs[j++];
    PbhEigenvalue e;
    e.approx = sum / static_cast<double>(j - i);
    e.multiplicity = static_cast<int>(j - i);
    report.eigenvalues.push_back(e);
    i = j;
  }

  // Controllability and per-eigenvalue input ranks.
  Eigen::MatrixXd reach(n, n * m);
  Eigen::MatrixXd block = B;
  for (int s = 0; s < n; ++s) {
    reach.middleCols(s * m, m) = block;
    if (s + 1 < n) block = A * block;
  }
  report.controllable_rank = svd_rank(reach.cast<std::complex<double>>(), options.rank_tol_exp);

  auto pencil_c = [&](const std::complex<double>& lambda) {
    Eigen::MatrixXcd pm(n, n + m);
    pm << (lambda * Eigen::MatrixXcd::Identity(n, n) - A.cast<std::complex<double>>()),
        B.cast<std::complex<double>>();
    return pm;
  };
  const Eigen::MatrixXcd c_cplx = C.cast<std::complex<double>>();
  bool naive_all = true;
  for (const auto& e : report.eigenvalues) {
    if (svd_rank(pencil_c(e.approx), options.rank_tol_exp) < n)
      report.uncontrollable.push_back(e);
    if (svd_rank(c_cplx * pencil_c(e.approx), options.rank_tol_exp) != p) naive_all = false;
  }
  report.naive_per_eigenvalue_pass = naive_all;
  report.uncontrollable_complete = true;

  // Numeric diagonalizability: eigenvector matrix numerically full rank.
  const Eigen::MatrixXcd v = es.eigenvectors();
  Eigen::JacobiSVD<Eigen::MatrixXcd> vsvd(v);
  const auto& sv = vsvd.singularValues();
  report.eigvec_condition = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1)
                                                  : std::numeric_limits<double>::infinity();
  report.diagonalizable = svd_rank(v, options.rank_tol_exp) == n;

  if (report.controllable_rank == n) {
    report.which_test = PbhWhichTest::DirectRank;
    report.certificate_rank =
        svd_rank((C * reach).cast<std::complex<double>>(), options.rank_tol_exp);
    report.certificate_target = p;
    report.hypothesis = report.diagonalizable ? PbhHypothesis::Holds : PbhHypothesis::Unknown;
    report.verdict = report.certificate_rank == p ? PbhVerdict::OutputControllable
                                                  : PbhVerdict::NotOutputControllable;
    return report;
  }
  if (!report.diagonalizable) {
    report.hypothesis = PbhHypothesis::Unknown;
    report.verdict = PbhVerdict::Inconclusive;
    report.note = "not numerically diagonalizable; float mode cannot certify the hypothesis";
    return report;
  }
  report.hypothesis = PbhHypothesis::Holds;  // diagonalizable => N = 0
  if (report.uncontrollable.size() == 1) {
    report.which_test = PbhWhichTest::SingleEigenvalue;
    report.certificate_rank =
        svd_rank(c_cplx * pencil_c(report.uncontrollable[0].approx), options.rank_tol_exp);
    report.certificate_target = p;
    report.verdict = report.certificate_rank == p ? PbhVerdict::OutputControllable
                                                  : PbhVerdict::NotOutputControllable;
    return report;
  }
  Eigen::MatrixXcd kc_full = Eigen::MatrixXcd::Zero(n, n);
  {
    // Kernel of C via SVD: right singular vectors past the rank.
    Eigen::JacobiSVD<Eigen::MatrixXcd> csvd(c_cplx, Eigen::ComputeFullV);
    const int rank_c = svd_rank(c_cplx, options.rank_tol_exp);
    kc_full = csvd.matrixV().rightCols(n - rank_c);
  }
  const int r_blocks = static_cast<int>(report.eigenvalues.size());
  Eigen::MatrixXcd big =
      Eigen::MatrixXcd::Zero(r_blocks * n, r_blocks * (n + m) + kc_full.cols());
  for (int bi = 0; bi < r_blocks; ++bi) {
    big.block(bi * n, bi * (n + m), n, n + m) = pencil_c(report.eigenvalues[bi].approx);
    big.block(bi * n, r_blocks * (n + m), n, kc_full.cols()) = kc_full;
  }
  report.which_test = PbhWhichTest::Theorem4Block;
  report.certificate_rank = svd_rank(big, options.rank_tol_exp);
  report.certificate_target = r_blocks * n;
  report.verdict = report.certificate_rank == report.certificate_target
                       ? PbhVerdict::OutputControllable
                       : PbhVerdict::NotOutputControllable;
  return report;
}

}  // namespace

PbhReport pbh_output_test(const MatQ& A, const MatQ& B, const MatQ& C, PbhMode mode,
                          const PbhOptions& options) {
  if (A.rows() != A.cols()) throw PreconditionError("A must be square");
  if (B.rows() != A.rows()) throw PreconditionError("B row count must match A");
  if (C.cols() != A.rows()) throw PreconditionError("C column count must match A");
  PbhReport report;
  report.mode = mode;
  report.n = A.rows();
  report.m = B.cols();
  report.p = C.rows();
  if (report.p >= report.n)
    throw PreconditionError("the output map must be a strict projection (p < n)");
  if (exactla::rank(C) != report.p)
    throw PreconditionError("C must have full row rank");
  return mode == PbhMode::Rational ? pbh_rational(A, B, C, std::move(report))
                                   : pbh_float(A, B, C, std::move(report), options);
}

// ---------------------------------------------------------------------------
// Closed-form witness realizations.
// ---------------------------------------------------------------------------

RealizationSample proposition3_witness(int h) {
  if (h < 1) throw PreconditionError("tree witness needs height >= 1");
  const int n = (1 << (h + 1)) - 1;
  const int inner = (1 << h) - 1;
  const int total = 2 * inner + (n - inner);
  RealizationSample s;
  s.field = FieldKind::Rational;
  s.seed = 0;
  s.A = MatQ(total, total);
  s.B = MatQ(total, 1);
  s.C = MatQ(n, total);
  // Subsystem k (1-based, k <= inner) owns copies 2k-1, 2k; leaf j owns j+inner.
  auto first_copy = [inner](int node_1b) {
    return node_1b <= inner ? 2 * node_1b - 1 : node_1b + inner;
  };
  for (int k = 1; k <= inner; ++k) {
    s.A(2 * k - 2, 2 * k - 1) = k + 1;  // internal [[0, k+1], [1, 0]]
    s.A(2 * k - 1, 2 * k - 2) = 1;
  }
  for (int parent = 1; parent <= inner; ++parent) {
    const int lo = 2 * parent, hi = 2 * parent + 1;
    // Smaller child listens to the first copy, larger child to the second.
    s.A(first_copy(lo) - 1, (2 * parent - 1) - 1) = 1;
    s.A(first_copy(hi) - 1, (2 * parent) - 1) = 1;
  }
  s.B(0, 0) = 1;
  for (int node = 1; node <= n; ++node) s.C(node - 1, first_copy(node) - 1) = 1;
  return s;
}

RealizationSample proposition4_witness(int h) {
  if (h < 2 || h % 2 != 0) throw PreconditionError("bifurcation witness needs even height >= 2");
  const int n = 2 * h + 1;
  const int blocks = h / 2;
  const int total = (h + 1) + 3 * blocks;
  RealizationSample s;
  s.field = FieldKind::Rational;
  s.seed = 0;
  s.A = MatQ(total, total);
  s.B = MatQ(total, 1);
  s.C = MatQ(n, total);
  // Driven chain 1 -> 2 -> ... -> h+1 stays first order.
  for (int i = 1; i <= h; ++i) s.A(i, i - 1) = 1;
  // Block k (k = 1..h/2): copies a,b of subsystem h+2k and the next
  // first-order node c; globals a = h+2+3(k-1), b = a+1, c = a+2.
  for (int k = 1; k <= blocks; ++k) {
    const int a = h + 2 + 3 * (k - 1);
    const int b = a + 1, c = a + 2;
    s.A(a - 1, b - 1) = k + 1;  // internal [[0, k+1], [1, 0]]
    s.A(b - 1, a - 1) = 1;
    s.A(c - 1, b - 1) = 1;
    if (k == 1)
      s.A(b - 1, 0) = 1;  // root drives the second copy
    else
      s.A(b - 1, (a - 1) - 1) = 1;  // previous block's chain node
  }
  s.B(0, 0) = 1;
  for (int i = 1; i <= h + 1; ++i) s.C(i - 1, i - 1) = 1;
  for (int k = 1; k <= blocks; ++k) {
    const int a = h + 2 + 3 * (k - 1);
    s.C((h + 2 * k) - 1, (a + 1) - 1) = 1;  // order-2 subsystem reads copy 2
    s.C((h + 2 * k + 1) - 1, (a + 2) - 1) = 1;
  }
  return s;
}

}  // namespace strucnet
