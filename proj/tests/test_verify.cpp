#include <doctest.h>

#include <cstdlib>
#include <vector>

#include "strucnet/cases.hpp"
#include "strucnet/errors.hpp"
#include "strucnet/matrix.hpp"
#include "strucnet/network.hpp"
#include "strucnet/verify.hpp"
#include "test_support.hpp"

using namespace strucnet;

namespace {

MatQ matq(std::initializer_list<std::initializer_list<int>> rows) {
  MatQ m(static_cast<int>(rows.size()), static_cast<int>(rows.begin()->size()));
  int r = 0;
  for (const auto& row : rows) {
    int c = 0;
    for (int v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

int count_nonzero(const MatQ& m) {
  int k = 0;
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0) ++k;
  return k;
}

ExtendedNetwork first_order_het_star() {
  ExtendedNetwork ext = identity_extension(ts::fig(CaseFamily::Fig1a));
  ext.heterogeneous = {0, 0, 1};
  return ext;
}

ExtendedNetwork order2_homogeneous_star() {
  ExtendedNetwork ext = identity_extension(ts::fig(CaseFamily::Fig1a));
  ext.orders = {1, 1, 2};
  return ext;
}

}  // namespace

TEST_CASE("sampled realizations respect the extended sparsity pattern") {
  SUBCASE("first-order heterogeneous replacement adds exactly the self-entry") {
    const auto s = sample_realization(first_order_het_star(), FieldKind::PrimeField, 1);
    CHECK(s.A.rows() == 3);
    CHECK(count_nonzero(s.A) == 3);
    CHECK(s.A(1, 0) != 0);
    CHECK(s.A(2, 0) != 0);
    CHECK(s.A(2, 2) != 0);
    CHECK(count_nonzero(s.B) == 1);
    CHECK(s.B(0, 0) != 0);
    CHECK(s.C == MatQ::identity(3));
    CHECK(pattern_admissible(s, first_order_het_star()));
  }

  SUBCASE("homogeneous order-2 replacement stays internally trivial") {
    const auto ext = order2_homogeneous_star();
    const auto s = sample_realization(ext, FieldKind::PrimeField, 7);
    CHECK(s.A.rows() == 4);
    CHECK(count_nonzero(s.A) == 3);
    CHECK(s.A(1, 0) != 0);
    CHECK(s.A(2, 0) != 0);
    CHECK(s.A(3, 0) != 0);
    CHECK(s.C.rows() == 3);
    CHECK(s.C.cols() == 4);
    CHECK(s.C(0, 0) == 1);  // first-order output weights are pinned
    CHECK(s.C(1, 1) == 1);
    CHECK(s.C(2, 2) != 0);  // higher-order output row is generic
    CHECK(s.C(2, 3) != 0);
    CHECK(s.C(0, 1) == 0);
    CHECK(pattern_admissible(s, ext));
  }
}

TEST_CASE("sampling is deterministic in the seed") {
  const auto ext = order2_homogeneous_star();
  const auto a = sample_realization(ext, FieldKind::PrimeField, 99);
  const auto b = sample_realization(ext, FieldKind::PrimeField, 99);
  CHECK(a.A == b.A);
  CHECK(a.B == b.B);
  CHECK(a.C == b.C);
  const auto c = sample_realization(ext, FieldKind::PrimeField, 100);
  CHECK(!(a.A == c.A));
}

TEST_CASE("draw ranges per field") {
  const auto ext = order2_homogeneous_star();
  const auto prime = sample_realization(ext, FieldKind::PrimeField, 5);
  for (int r = 0; r < prime.A.rows(); ++r)
    for (int c = 0; c < prime.A.cols(); ++c)
      if (prime.A(r, c) != 0) {
        CHECK(boost::multiprecision::denominator(prime.A(r, c)) == 1);
        CHECK(prime.A(r, c) > 0);
        CHECK(prime.A(r, c) < Rat(prime.prime));
      }

  const auto real = sample_realization(ext, FieldKind::Float64, 5);
  for (int r = 0; r < real.A.rows(); ++r)
    for (int c = 0; c < real.A.cols(); ++c)
      if (real.A(r, c) != 0) {
        const double v = std::abs(static_cast<double>(real.A(r, c)));
        CHECK(v >= 0.05);
        CHECK(v <= 1.0);
      }

  const auto rat = sample_realization(ext, FieldKind::Rational, 5);
  for (int r = 0; r < rat.A.rows(); ++r)
    for (int c = 0; c < rat.A.cols(); ++c)
      if (rat.A(r, c) != 0) {
        CHECK(boost::multiprecision::denominator(rat.A(r, c)) == 1);
        CHECK(rat.A(r, c) >= -99);
        CHECK(rat.A(r, c) <= 99);
      }
}

TEST_CASE("pattern admissibility rejects off-pattern entries") {
  const auto ext = order2_homogeneous_star();
  auto s = sample_realization(ext, FieldKind::PrimeField, 3);

  SUBCASE("extra state coupling") {
    s.A(1, 2) = 1;
    CHECK(!pattern_admissible(s, ext));
  }
  SUBCASE("tampered fixed output weight") {
    s.C(0, 0) = 2;
    CHECK(!pattern_admissible(s, ext));
  }
  SUBCASE("forbidden internal edge") {
    s.A(2, 3) = 1;
    CHECK(!pattern_admissible(s, ext));
  }
}

TEST_CASE("generic ranks over the prime field") {
  const auto plain = identity_extension(ts::fig(CaseFamily::Fig1a));

  const auto ctrb = generic_rank_controllability(plain, 5, 11);
  CHECK(ctrb.target == 3);
  CHECK(ctrb.rank == 2);  // one stem of two nodes is the best cover
  CHECK(!ctrb.full_rank);
  CHECK(ctrb.per_trial.size() == 5);

  const auto out = generic_rank_output_controllability(plain, 5, 11);
  CHECK(out.target == 3);
  CHECK(out.rank == 2);
}

TEST_CASE("the pinned rewrites verify numerically") {
  const auto fig3b = generate_extended({CaseFamily::Fig3b, 0, true});
  const auto ctrb = generic_rank_controllability(fig3b, 3, 17);
  CHECK(ctrb.target == 7);
  CHECK(ctrb.full_rank);

  const auto out = generic_rank_output_controllability(fig3b, 3, 17);
  CHECK(out.target == 6);  // one output per original subsystem
  CHECK(out.full_rank);
}

TEST_CASE("trial parallelism does not change the outcome") {
  const auto fig3a = generate_extended({CaseFamily::Fig3a, 0, true});
  const auto serial = generic_rank_output_controllability(fig3a, 4, 23, 1);
  const auto threaded = generic_rank_output_controllability(fig3a, 4, 23, 3);
  CHECK(serial.per_trial == threaded.per_trial);
  CHECK(serial.rank == threaded.rank);
}

TEST_CASE("an unmodified branching network stays rank deficient") {
  const auto plain = identity_extension(ts::fig(CaseFamily::Fig2d));
  const auto out = generic_rank_output_controllability(plain, 3, 29);
  CHECK(out.target == 7);
  CHECK(out.rank == 4);
  CHECK(!out.full_rank);
}

TEST_CASE("homogeneous growth never rescues the branching network") {
  ExtendedNetwork ext = identity_extension(ts::fig(CaseFamily::Fig2d));
  ext.orders = {3, 1, 2, 1, 2, 1, 1};
  const auto out = generic_rank_output_controllability(ext, 5, 31);
  CHECK(!out.full_rank);
}

TEST_CASE("closed-form tree witness") {
  for (int h : {1, 2}) {
    CAPTURE(h);
    const auto w = proposition3_witness(h);
    const auto ext = generate_extended({CaseFamily::BinaryTree, h, true});
    CHECK(w.A.rows() == ext.total_order());
    CHECK(pattern_admissible(w, ext));

    const auto report = pbh_output_test(w.A, w.B, w.C, PbhMode::Rational);
    CHECK(report.verdict == PbhVerdict::OutputControllable);
    REQUIRE(report.uncontrollable.size() == 1);
    CHECK(report.uncontrollable[0].exact == 0);
    CHECK(report.uncontrollable_complete);
  }
}

TEST_CASE("closed-form bifurcation witness") {
  for (int h : {2, 4}) {
    CAPTURE(h);
    const auto w = proposition4_witness(h);
    const auto ext = generate_extended({CaseFamily::Bifurcation, h, true});
    CHECK(w.A.rows() == ext.total_order());
    CHECK(pattern_admissible(w, ext));

    const auto report = pbh_output_test(w.A, w.B, w.C, PbhMode::Rational);
    CHECK(report.verdict == PbhVerdict::OutputControllable);
    CHECK(report.which_test == PbhWhichTest::SingleEigenvalue);
    REQUIRE(report.uncontrollable.size() == 1);
    CHECK(report.uncontrollable[0].exact == 0);
  }
}

TEST_CASE("controllable pairs take the direct rank route") {
  const auto report = pbh_output_test(matq({{0, 1}, {0, 0}}), matq({{0}, {1}}),
                                      matq({{1, 0}}), PbhMode::Rational);
  CHECK(report.which_test == PbhWhichTest::DirectRank);
  CHECK(report.verdict == PbhVerdict::OutputControllable);
  CHECK(report.controllable_rank == 2);
}

TEST_CASE("single uncontrollable eigenvalue can still fail the output test") {
  const auto report = pbh_output_test(matq({{0, 1}, {0, 0}}), matq({{1}, {0}}),
                                      matq({{0, 1}}), PbhMode::Rational);
  CHECK(report.which_test == PbhWhichTest::SingleEigenvalue);
  CHECK(report.verdict == PbhVerdict::NotOutputControllable);
}

TEST_CASE("violated subspace hypothesis is reported, not silently decided") {
  const auto report = pbh_output_test(matq({{0, 1}, {0, 0}}), matq({{1}, {0}}),
                                      matq({{1, 0}}), PbhMode::Rational);
  CHECK(report.hypothesis == PbhHypothesis::Violated);
  CHECK(report.verdict == PbhVerdict::Inconclusive);
  CHECK(!report.note.empty());
  CHECK(!report.diagonalizable);
}

TEST_CASE("irrational uncontrollable spectrum yields inconclusive in exact mode") {
  const auto report = pbh_output_test(matq({{0, 1}, {2, 0}}), matq({{0}, {0}}),
                                      matq({{1, 0}}), PbhMode::Rational);
  CHECK(report.verdict == PbhVerdict::Inconclusive);
  CHECK(!report.uncontrollable_complete);
  CHECK(report.irrational_spectrum_degree == 2);
  CHECK(!report.note.empty());
}

TEST_CASE("block test separates the joint condition from the naive one") {
  // Classic counterexample: every per-eigenvalue rank test passes, yet the
  // system is not output controllable.
  const MatQ A = matq({{1, 0}, {0, 0}});
  const MatQ B = MatQ(2, 1);
  const MatQ C = matq({{1, 1}});

  for (const auto mode : {PbhMode::Rational, PbhMode::Float64}) {
    CAPTURE(to_string(mode));
    const auto report = pbh_output_test(A, B, C, mode);
    CHECK(report.which_test == PbhWhichTest::Theorem4Block);
    CHECK(report.verdict == PbhVerdict::NotOutputControllable);
    REQUIRE(report.naive_per_eigenvalue_pass.has_value());
    CHECK(*report.naive_per_eigenvalue_pass);
    CHECK(report.uncontrollable.size() == 2);
  }
}

TEST_CASE("float mode agrees with exact mode on the tree witness") {
  const auto w = proposition3_witness(1);
  const auto report = pbh_output_test(w.A, w.B, w.C, PbhMode::Float64);
  CHECK(report.mode == PbhMode::Float64);
  CHECK(report.verdict == PbhVerdict::OutputControllable);
  CHECK(report.uncontrollable.size() == 1);
  CHECK(report.diagonalizable);
  CHECK(report.eigvec_condition > 0.0);
}

TEST_CASE("eigenvector test preconditions") {
  CHECK_THROWS_AS(pbh_output_test(matq({{1, 0}, {0, 1}}), matq({{1}, {0}}),
                                  MatQ::identity(2), PbhMode::Rational),
                  PreconditionError);  // p must be < n
  CHECK_THROWS_AS(pbh_output_test(matq({{1, 0}, {0, 1}}), matq({{1}, {0}}),
                                  matq({{1, 1}, {2, 2}}), PbhMode::Rational),
                  PreconditionError);  // C must have full row rank
  CHECK_THROWS_AS(pbh_output_test(matq({{1, 0, 0}, {0, 1, 0}}), matq({{1}, {0}}),
                                  matq({{1, 0, 0}}), PbhMode::Rational),
                  PreconditionError);  // square A
}

TEST_CASE("witness constructors validate their height") {
  CHECK_THROWS_AS(proposition3_witness(0), PreconditionError);
  CHECK_THROWS_AS(proposition4_witness(3), PreconditionError);
  CHECK_THROWS_AS(proposition4_witness(0), PreconditionError);
}
