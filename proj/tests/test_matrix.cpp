#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "schur/error.hpp"
#include "schur/linalg.hpp"
#include "schur/matrix.hpp"

using namespace schur;

TEST(DenseMatrix, LiteralShapeAndAccess) {
  const DenseMatrix m{{1, 2, 3}, {4, 5, 6}};
  EXPECT_EQ(m.rows(), 2u);
  EXPECT_EQ(m.cols(), 3u);
  EXPECT_EQ(m(1, 2), 6.0);
  EXPECT_FALSE(m.is_square());
  EXPECT_EQ(m.transposed()(2, 1), 6.0);
}

TEST(DenseMatrix, RaggedLiteralIsRejected) {
  try {
    DenseMatrix m{{1, 2}, {3}};
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_input);
  }
}

TEST(DenseMatrix, ProductMatchesOracle) {
  const DenseMatrix a{{1, 2}, {3, 4}, {5, 6}};
  const DenseMatrix b{{1, -1, 0}, {2, 0.5, 1}};
  EXPECT_EQ(a * b, oracle::matmul(a, b));
  EXPECT_THROW(a * a, Error);
}

TEST(DenseMatrix, SchurProductIsEntrywise) {
  const DenseMatrix a{{1, 2}, {3, 4}};
  const DenseMatrix b{{-1, 0.5}, {2, 0}};
  const DenseMatrix c = schur_product(a, b);
  EXPECT_EQ(c, (DenseMatrix{{-1, 1}, {6, 0}}));
  EXPECT_THROW(schur_product(a, DenseMatrix(3, 3)), Error);
}

TEST(DenseMatrix, NormsAndInnerProduct) {
  const DenseMatrix a{{3, -4}, {0, 0}};
  EXPECT_DOUBLE_EQ(frobenius_norm(a), 5.0);
  EXPECT_DOUBLE_EQ(entrywise_one_norm(a), 7.0);
  EXPECT_DOUBLE_EQ(max_abs(a), 4.0);
  EXPECT_DOUBLE_EQ(inner(a, a), 25.0);
  EXPECT_DOUBLE_EQ(trace(DenseMatrix::identity(4)), 4.0);
  EXPECT_THROW(frobenius_norm(DenseMatrix()), Error);
}

TEST(DenseMatrix, KroneckerProductOfIdentityBlocks) {
  const DenseMatrix a{{1, 2}, {3, 4}};
  const DenseMatrix k = kronecker(a, DenseMatrix::identity(2));
  EXPECT_EQ(k.rows(), 4u);
  EXPECT_EQ(k(2, 0), 3.0);
  EXPECT_EQ(k(3, 1), 3.0);
  EXPECT_EQ(k(2, 1), 0.0);
}

TEST(DenseMatrix, CirculantShiftsRight) {
  const std::vector<double> top{1, 2, 3};
  const DenseMatrix c = circulant(top);
  EXPECT_EQ(c, (DenseMatrix{{1, 2, 3}, {3, 1, 2}, {2, 3, 1}}));
}

TEST(SignMatrix, RejectsNonSignEntries) {
  EXPECT_THROW(SignMatrix::from_dense(DenseMatrix{{1, 0}, {1, 1}}), Error);
  EXPECT_THROW((SignMatrix{{1, 2}, {1, 1}}), Error);
  SignMatrix m(2);
  EXPECT_THROW(m.set(0, 0, 0), Error);
}

TEST(SignMatrix, SignOfMapsZeroToPlus) {
  const SignMatrix s = SignMatrix::sign_of(DenseMatrix{{0.0, -0.5}, {-2.0, 3.0}});
  EXPECT_EQ(s, (SignMatrix{{1, -1}, {-1, 1}}));
}

TEST(SignMatrix, OrderPutsPlusBeforeMinus) {
  const SignMatrix a{{1, 1}, {1, -1}};
  const SignMatrix b{{1, 1}, {-1, 1}};
  EXPECT_LT(a, b);
  EXPECT_EQ(a.to_strings(), (std::vector<std::string>{"++", "+-"}));
}

TEST(SignMatrix, KroneckerOfHadamardsIsHadamard) {
  const SignMatrix h{{1, 1}, {1, -1}};
  EXPECT_TRUE(oracle::is_hadamard(kronecker(h, h)));
  EXPECT_TRUE(oracle::is_hadamard(kronecker(kronecker(h, h), h)));
}

TEST(ComplexMatrix, FourierRealificationPreservesNorm) {
  const auto f = ComplexMatrix::fourier(5);
  // unnormalized Fourier matrix is sqrt(n) times a unitary
  EXPECT_NEAR(oracle::operator_norm(f.realification()), std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(operator_norm(f), std::sqrt(5.0), 1e-12);
  const auto g = schur_product(f, f.conj());
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) EXPECT_NEAR(std::abs(g(i, j) - 1.0), 0.0, 1e-12);
}
