#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "schur/error.hpp"
#include "schur/sdp.hpp"

using namespace schur;
using namespace schur::sdp;

namespace {

// min <C, X> s.t. tr X = 1, X PSD has value lambda_min(C).
SdpProblem min_eigen_problem(const DenseMatrix& c) {
  SdpProblem p;
  const std::size_t n = c.rows();
  p.blocks = {{ConeKind::psd, n}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) p.objective.add(0, i, j, c(i, j));
  SparseSymMatrix tr;
  for (std::size_t i = 0; i < n; ++i) tr.add(0, i, i, 1.0);
  p.constraints.push_back(tr);
  p.rhs.push_back(1.0);
  return p;
}

DenseMatrix random_symmetric(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = g(rng);
  return a;
}

}  // namespace

TEST(SdpSolver, LinearProgramOnOrthant) {
  // min x1 + 2 x2 s.t. x1 + x2 = 1, x >= 0
  SdpProblem p;
  p.blocks = {{ConeKind::nonnegative, 2}};
  p.objective.add(0, 0, 0, 1.0).add(0, 1, 1, 2.0);
  SparseSymMatrix a;
  a.add(0, 0, 0, 1.0).add(0, 1, 1, 1.0);
  p.constraints.push_back(a);
  p.rhs.push_back(1.0);
  const auto sol = solve(p);
  ASSERT_EQ(sol.status, Status::optimal);
  EXPECT_NEAR(sol.primal_value, 1.0, 1e-8);
  EXPECT_NEAR(sol.dual_value, 1.0, 1e-8);
  EXPECT_NEAR(sol.x.block(0)(0, 0), 1.0, 1e-7);
}

TEST(SdpSolver, MinimumEigenvalueMatchesOracle) {
  std::mt19937_64 rng(42);
  for (std::size_t n : {2u, 4u, 7u}) {
    const DenseMatrix c = random_symmetric(n, rng);
    const auto p = min_eigen_problem(c);
    const auto sol = solve(p);
    ASSERT_EQ(sol.status, Status::optimal);
    const double want = oracle::sym_eigenvalues(c).front();
    EXPECT_NEAR(sol.primal_value, want, 1e-8);
    EXPECT_NEAR(sol.dual_value, want, 1e-8);
    EXPECT_LE(primal_residual(p, sol.x), 1e-8);
    EXPECT_LE(dual_residual(p, sol.y, sol.s), 1e-8);
    EXPECT_GE(oracle::min_eigenvalue(sol.x.block(0)), -1e-9);
    EXPECT_GE(oracle::min_eigenvalue(sol.s.block(0)), -1e-9);
  }
}

TEST(SdpSolver, MixedBlocks) {
  // min <C, X> + t  s.t. tr X + t = 1 with X PSD, t >= 0: value min(lambda_min(C), 1)
  std::mt19937_64 rng(1);
  const DenseMatrix c = random_symmetric(3, rng);
  SdpProblem p;
  p.blocks = {{ConeKind::psd, 3}, {ConeKind::nonnegative, 1}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j) p.objective.add(0, i, j, c(i, j));
  p.objective.add(1, 0, 0, 1.0);
  SparseSymMatrix a;
  for (std::size_t i = 0; i < 3; ++i) a.add(0, i, i, 1.0);
  a.add(1, 0, 0, 1.0);
  p.constraints.push_back(a);
  p.rhs.push_back(1.0);
  const auto sol = solve(p);
  ASSERT_EQ(sol.status, Status::optimal);
  EXPECT_NEAR(sol.primal_value, std::min(1.0, oracle::sym_eigenvalues(c).front()), 1e-8);
}

TEST(SdpSolver, WeakDualityOnFeasibleIterates) {
  std::mt19937_64 rng(3);
  const auto p = min_eigen_problem(random_symmetric(5, rng));
  SdpSettings settings;
  const auto sol = solve(p, settings);
  ASSERT_FALSE(sol.history.empty());
  int checked = 0;
  for (const auto& it : sol.history) {
    if (it.primal_infeasibility > settings.feas_tol || it.dual_infeasibility > settings.feas_tol) continue;
    EXPECT_GE(it.primal_value - it.dual_value, -1e-9 * (1.0 + std::abs(it.primal_value)));
    ++checked;
  }
  EXPECT_GT(checked, 0);
  EXPECT_GE(sol.primal_value - sol.dual_value, -1e-9);
}

TEST(SdpSolver, InfeasibleProblemIsNotReportedOptimal) {
  // tr X = -1 has no PSD solution
  SdpProblem p;
  p.blocks = {{ConeKind::psd, 2}};
  p.objective.add(0, 0, 0, 1.0);
  SparseSymMatrix a;
  a.add(0, 0, 0, 1.0).add(0, 1, 1, 1.0);
  p.constraints.push_back(a);
  p.rhs.push_back(-1.0);
  const auto sol = solve(p);
  EXPECT_NE(sol.status, Status::optimal);
}

TEST(SdpSolver, ValidationRejectsBadData) {
  SdpProblem p;
  p.blocks = {{ConeKind::psd, 2}};
  SparseSymMatrix a;
  a.add(0, 0, 5, 1.0);
  p.constraints.push_back(a);
  p.rhs.push_back(1.0);
  try {
    solve(p);
    FAIL() << "expected invalid-input";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_input);
  }
  SdpProblem q;
  q.blocks = {{ConeKind::nonnegative, 2}};
  SparseSymMatrix off;
  off.add(0, 0, 1, 1.0);
  q.constraints.push_back(off);
  q.rhs.push_back(0.0);
  EXPECT_THROW(solve(q), Error);
}
