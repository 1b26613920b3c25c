#pragma once

#include "strucnet/matrix.hpp"
#include "strucnet/network.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace strucnet {

// ---------------------------------------------------------------------------
// Numeric verification: random realizations of a structured pattern, generic
// ranks over a large prime field, and an eigenvector-based output
// controllability test (exact rational or floating point).
// ---------------------------------------------------------------------------

enum class FieldKind { PrimeField, Float64, Rational };

std::string to_string(FieldKind f);

/// One concrete realization (A_hat, B_hat, C_hat) of an extended network's
/// zero pattern. Entries are stored exactly as rationals in every mode:
/// prime-field elements as their integer representatives, float64 draws as
/// the (exact) dyadic rationals of the doubles.
struct RealizationSample {
  FieldKind field = FieldKind::PrimeField;
  std::uint64_t prime = 0;  // set iff field == PrimeField
  std::uint64_t seed = 0;
  MatQ A, B, C;
};

/// Draws every free entry iid: uniform over nonzero field elements (prime
/// field), uniform on [-1,1] excluding (-0.05,0.05) (float64), or uniform
/// nonzero integers in [-99,99] (rational). Structural zeros are exact; a
/// first-order subsystem's output weight is the constant 1, higher-order
/// output rows are generic on their own copies only.
RealizationSample sample_realization(const ExtendedNetwork& net, FieldKind field,
                                     std::uint64_t seed);

struct RankVerification {
  std::uint64_t seed = 0;
  int target = 0;                // full-rank threshold (total order, or n)
  std::vector<int> per_trial;    // rank of each trial's realization
  int rank = 0;                  // max over trials (the generic rank witness)
  bool full_rank = false;        // rank == target
};

/// Generic rank of the controllability matrix of the expanded system over
/// GF(2^31-1): max over `trials` independent realizations. Deterministic in
/// (seed, trials); `jobs` only parallelizes the trials.
RankVerification generic_rank_controllability(const ExtendedNetwork& net, int trials,
                                              std::uint64_t seed, int jobs = 1);

/// Same for the output-controllability matrix C_hat * [B_hat, ..., A^(k)B_hat]
/// whose full rank (= n) is the property the extensions are synthesized for.
RankVerification generic_rank_output_controllability(const ExtendedNetwork& net, int trials,
                                                     std::uint64_t seed, int jobs = 1);

// ---------------------------------------------------------------------------
// Eigenvector test for output controllability of a concrete realization.
//
// Hypothesis: N ∩ ker(B^T) ⊆ im(C^T), where N is spanned by the eigenvectors
// of A^T that head non-trivial Jordan chains (N = 0 for diagonalizable A).
// Under it, the system is output controllable iff a single block rank
// condition holds; with exactly one uncontrollable eigenvalue lambda the
// condition collapses to rank C*[lambda I - A, B] = p.
// ---------------------------------------------------------------------------

enum class PbhMode { Float64, Rational };
enum class PbhHypothesis { Holds, Violated, Unknown };
enum class PbhVerdict { OutputControllable, NotOutputControllable, Inconclusive };
enum class PbhWhichTest { Theorem4Block, SingleEigenvalue, DirectRank, None };

std::string to_string(PbhMode);
std::string to_string(PbhHypothesis);
std::string to_string(PbhVerdict);
std::string to_string(PbhWhichTest);

struct PbhOptions {
  /// Float SVD rank cutoff: sigma_k counts iff sigma_k > max(dim) * sigma_1 * 2^tol_exp.
  int rank_tol_exp = -40;
  /// Eigenvalue clustering radius (float mode), relative to max(1, |A|_max).
  double eig_cluster_tol = 1e-8;
};

struct PbhEigenvalue {
  std::complex<double> approx;  // display value
  int multiplicity = 1;
  bool is_rational = false;
  Rat exact;  // meaningful iff is_rational
};

struct PbhReport {
  PbhMode mode = PbhMode::Rational;
  int n = 0, m = 0, p = 0;

  std::vector<PbhEigenvalue> eigenvalues;     // distinct eigenvalues of A
  int irrational_spectrum_degree = 0;         // rational mode: char-poly factor left unsplit
  std::vector<PbhEigenvalue> uncontrollable;  // eigenvalues failing the input rank test
  bool uncontrollable_complete = true;        // false when part of the spectrum was unreachable

  int controllable_rank = 0;  // rank of the controllability matrix of (A, B)
  bool diagonalizable = false;
  double eigvec_condition = 0.0;  // float evidence; 0 in rational mode
  std::optional<MatQ> n_basis;    // rational mode: columns span N (when computed)

  PbhHypothesis hypothesis = PbhHypothesis::Unknown;
  PbhWhichTest which_test = PbhWhichTest::None;
  int certificate_rank = -1;    // rank of the decisive block matrix
  int certificate_target = -1;  // required rank for output controllability
  PbhVerdict verdict = PbhVerdict::Inconclusive;

  /// Diagnostic: does the naive per-eigenvalue test rank C[lI-A, B] = p pass
  /// for every eigenvalue? (Known to be insufficient; reported to expose it.)
  std::optional<bool> naive_per_eigenvalue_pass;
  std::string note;  // human-readable reason for inconclusive verdicts
};

/// Runs the test on a realization. Preconditions: C has full row rank and
/// p < n (throws PreconditionError otherwise). Rational mode is exact but
/// declares the verdict inconclusive when the required spectra are not
/// rational; float mode uses SVD ranks with the documented tolerance.
PbhReport pbh_output_test(const MatQ& A, const MatQ& B, const MatQ& C, PbhMode mode,
                          const PbhOptions& options = {});

// ---------------------------------------------------------------------------
// Closed-form witness realizations for the two case-study families. Both are
// exact rational samples of the corresponding extended patterns; both have 0
// as the only uncontrollable eigenvalue and pass the single-eigenvalue test.
// ---------------------------------------------------------------------------

/// Extended complete binary tree of height h >= 1 (inner subsystems order 2,
/// heterogeneous; leaves first order).
RealizationSample proposition3_witness(int h);

/// Extended single-bifurcation network of even height h >= 2 (every second
/// subsystem on the non-driven branch order 2, heterogeneous).
RealizationSample proposition4_witness(int h);

/// True iff the sample's zero pattern is admissible for net: nonzeros only
/// where the extended pattern has free entries (or fixed ones), and the
/// fixed first-order output weights are exactly 1.
bool pattern_admissible(const RealizationSample& sample, const ExtendedNetwork& net);

}  // namespace strucnet
