#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "schur/almost_hadamard.hpp"
#include "schur/equivalence.hpp"
#include "schur/error.hpp"
#include "schur/hadamard.hpp"
#include "schur/parallel.hpp"

using namespace schur;

TEST(TraceNormSdp, SmallCases) {
  const auto one = nu_A(SignMatrix(1));
  EXPECT_NEAR(one.value, 1.0, 1e-9);
  const auto h2 = nu_A(SignMatrix{{1, 1}, {1, -1}});
  EXPECT_NEAR(h2.value, 2.0 * std::sqrt(2.0), 1e-9);
  EXPECT_LE(h2.lower, h2.upper + 1e-12);
  EXPECT_LE(oracle::operator_norm(h2.x), 1.0 + 1e-12);
}

TEST(TraceNormSdp, AgreesWithSingularValueOracle) {
  std::mt19937_64 rng(606);
  for (int t = 0; t < 24; ++t) {
    const auto a = oracle::random_sign_matrix(1 + t % 8, rng);
    const auto r = nu_A(a);
    const double want = oracle::trace_norm(a.to_dense());
    EXPECT_NEAR(r.value, want, 1e-7);
    EXPECT_LE(r.lower, want + 1e-9);
    EXPECT_GE(r.upper, want - 1e-9);
  }
}

TEST(TraceNormSdp, InvariantUnderEquivalence) {
  std::mt19937_64 rng(707);
  const auto a = oracle::random_sign_matrix(6, rng);
  const double base = nu_A(a).value;
  for (int t = 0; t < 5; ++t)
    EXPECT_NEAR(nu_A(EquivalenceTransform::random(6, rng).apply(a)).value, base, 1e-7);
}

TEST(OneNorm, ExactSmallOrders) {
  const double want[] = {1.0, 2.0 * std::sqrt(2.0), 5.0, 8.0, 11.0, 8.0 + 2.0 * std::sqrt(10.0)};
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto r = max_one_norm_exact(n);
    EXPECT_NEAR(r.value, want[n - 1], 1e-7) << "n=" << n;
    EXPECT_LT(oracle::orthogonality_defect(r.orthogonal_matrix), 1e-10);
    EXPECT_NEAR(entrywise_one_norm(r.orthogonal_matrix), r.value, 1e-12);
    EXPECT_EQ(SignMatrix::sign_of(r.orthogonal_matrix), r.sign_pattern);
    EXPECT_LE(r.value, r.upper_bound + 1e-8);
  }
  EXPECT_THROW(max_one_norm_exact(8), Error);
}

TEST(OneNorm, SearchFindsHadamardAtFour) {
  const auto r = max_one_norm_search(4, default_restarts(4), 20240611);
  EXPECT_NEAR(r.value, 8.0, 1e-9);
  EXPECT_TRUE(is_hadamard(r.sign_pattern));
  ASSERT_TRUE(r.seed.has_value());
  EXPECT_EQ(*r.seed, 20240611u);
  EXPECT_EQ(r.restarts, 800u);
}

TEST(OneNorm, SearchIsDeterministicAcrossThreadCounts) {
  set_thread_count(1);
  const auto a = max_one_norm_search(9, 40, 99);
  set_thread_count(4);
  const auto b = max_one_norm_search(9, 40, 99);
  set_thread_count(0);
  EXPECT_EQ(a.sign_pattern, b.sign_pattern);
  EXPECT_DOUBLE_EQ(a.value, b.value);
}

TEST(OneNorm, LocalSearchNeverDecreasesTraceNorm) {
  std::mt19937_64 rng(808);
  for (int t = 0; t < 10; ++t) {
    const auto a = oracle::random_sign_matrix(6, rng);
    const auto b = detail::polar_sign_local_search(a);
    EXPECT_GE(oracle::trace_norm(b.to_dense()), oracle::trace_norm(a.to_dense()) - 1e-9);
  }
}

TEST(OneNorm, UpperBounds) {
  EXPECT_NEAR(one_norm_upper_bound(9), 27.0, 1e-12);
  EXPECT_NEAR(one_norm_upper_bound(6), 8.0 + 2.0 * std::sqrt(10.0), 1e-8);
  EXPECT_NEAR(one_norm_upper_bound(1), 1.0, 1e-12);
  EXPECT_NEAR(one_norm_upper_bound(8), 16.0 * std::sqrt(2.0), 1e-12);
}

TEST(OneNorm, SixBySixDualIsScaledOrthogonal) {
  const DenseMatrix q = fixtures::r6_dual_x() * 6.0;
  EXPECT_LT(oracle::orthogonality_defect(q), 1e-12);
  EXPECT_NEAR(entrywise_one_norm(q), 8.0 + 2.0 * std::sqrt(10.0), 1e-12);
}

TEST(OneNorm, RejectsBadArguments) {
  EXPECT_THROW(max_one_norm_search(1, 10, 1), Error);
  EXPECT_THROW(max_one_norm_search(5, 0, 1), Error);
  EXPECT_THROW(one_norm_upper_bound(0), Error);
}
