#pragma once

// Largest entrywise 1-norm of an n x n real orthogonal matrix. For a sign
// pattern A, max Tr(A X) over contractions equals the trace norm of A and is
// attained at an orthogonal X; maximizing over A gives the 1-norm maximum.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "schur/equivalence.hpp"
#include "schur/error.hpp"
#include "schur/linalg.hpp"
#include "schur/matrix.hpp"
#include "schur/parallel.hpp"
#include "schur/sdp.hpp"
#include "schur/spectrum.hpp"

namespace schur {

enum class OneNormMode { exact, search };

inline const char* to_string(OneNormMode m) { return m == OneNormMode::exact ? "exact" : "search"; }

struct OneNormResult {
  std::size_t n = 0;
  double value = 0.0;             // sum |x_ij| of orthogonal_matrix
  DenseMatrix orthogonal_matrix;  // sign pattern equals sign_pattern
  SignMatrix sign_pattern;
  OneNormMode mode = OneNormMode::exact;
  double upper_bound = 0.0;
  std::optional<std::uint64_t> seed;
  std::size_t restarts = 0;
};

struct NuResult {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  DenseMatrix x;  // maximizer of Tr(A X), a contraction
  int iterations = 0;
};

/// SDP for max Tr(A X) subject to [[I, X], [X^T, I]] PSD, in the solver's
/// dual form with one variable per entry of X.
inline sdp::SdpProblem nu_sdp(const SignMatrix& a) {
  const std::size_t n = a.n();
  require(n >= 1, ErrorKind::invalid_input, "empty sign matrix");
  sdp::SdpProblem p;
  p.blocks = {{sdp::ConeKind::psd, 2 * n}};
  for (std::size_t k = 0; k < 2 * n; ++k) p.objective.add(0, k, k, 1.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      sdp::SparseSymMatrix e;
      e.add(0, i, n + j, -1.0);
      p.constraints.push_back(std::move(e));
      p.rhs.push_back(a(j, i));
    }
  return p;
}

/// nu_A = max Tr(A X) over contractions X, by the SDP solver. Both bounds
/// are certified: lower from a rescaled feasible X, upper from a repaired
/// PSD primal matrix.
inline NuResult nu_A(const SignMatrix& a, double tol = 1e-9) {
  const std::size_t n = a.n();
  sdp::SdpSettings settings;
  settings.gap_tol = std::min(1e-10, 0.1 * tol);
  settings.feas_tol = settings.gap_tol;
  const auto sol = sdp::solve(nu_sdp(a), settings);

  NuResult r;
  r.iterations = sol.iterations;
  r.x = DenseMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r.x(i, j) = sol.y[i * n + j];
  const double nrm = operator_norm(r.x);
  if (nrm > 1.0) r.x *= 1.0 / nrm;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r.lower += a(j, i) * r.x(i, j);

  // primal: trace of W with W12 = -A^T / 2, diagonal blocks from the solver
  DenseMatrix w = sol.x.block(0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) w(i, n + j) = w(n + j, i) = -0.5 * a(j, i);
  const double lmin = min_eigenvalue(w);
  if (lmin < 0.0)
    for (std::size_t k = 0; k < 2 * n; ++k) w(k, k) -= lmin;
  r.upper = trace(w);

  if (sol.status != sdp::Status::optimal && r.upper - r.lower > tol)
    throw NonConvergence("trace-norm SDP did not converge", r.lower, r.upper);
  r.value = 0.5 * (r.lower + r.upper);
  return r;
}

/// min(n sqrt(n), n * upper bound on r_n).
inline double one_norm_upper_bound(std::size_t n) {
  require(n >= 1, ErrorKind::invalid_input, "n must be positive");
  const double nn = static_cast<double>(n);
  return std::min(nn * std::sqrt(nn), nn * r_n_upper_bound(n));
}

namespace detail {

inline OneNormResult one_norm_from_pattern(const SignMatrix& a, OneNormMode mode) {
  OneNormResult r;
  r.n = a.n();
  r.mode = mode;
  r.sign_pattern = a;
  r.orthogonal_matrix = polar_factor(a.to_dense());
  r.value = entrywise_one_norm(r.orthogonal_matrix);
  return r;
}

// Alternates X = polar(A) and A = sign(X) (zeros to +1) until A is fixed;
// <A, polar(A)> never decreases along the way.
inline SignMatrix polar_sign_fixed_point(SignMatrix a, int max_steps = 1000) {
  for (int step = 0; step < max_steps; ++step) {
    DenseMatrix x = polar_factor(a.to_dense());
    for (double& t : x.values())
      if (std::abs(t) <= 1e-12) t = 0.0;  // numerical zeros take the +1 tie-break
    const SignMatrix next = SignMatrix::sign_of(x);
    if (next == a) break;
    a = next;
  }
  return a;
}

// Fixed point of the alternation, then the best single-entry flip among the
// n entries of polar(A) closest to zero if it raises the trace norm; repeat
// until no such flip helps. At a fixed point every first-order change is
// non-improving, so flips of near-zero entries are the promising moves.
inline SignMatrix polar_sign_local_search(SignMatrix a) {
  const std::size_t n = a.n();
  for (;;) {
    a = polar_sign_fixed_point(std::move(a));
    const DenseMatrix x = polar_factor(a.to_dense());
    std::vector<std::pair<double, std::size_t>> cand;
    for (std::size_t k = 0; k < n * n; ++k) cand.emplace_back(std::abs(x.values()[k]), k);
    const std::size_t count = std::min(n, cand.size());
    std::partial_sort(cand.begin(), cand.begin() + count, cand.end());
    double best = trace_norm(a.to_dense());
    std::optional<std::size_t> best_k;
    for (std::size_t t = 0; t < count; ++t) {
      const std::size_t k = cand[t].second;
      SignMatrix b = a;
      b.flip(k / n, k % n);
      const double v = trace_norm(b.to_dense());
      if (v > best + 1e-9) {
        best = v;
        best_k = k;
      }
    }
    if (!best_k) return a;
    a.flip(*best_k / n, *best_k % n);
  }
}

}  // namespace detail

/// Exact maximum for n <= 7: the largest trace norm over class
/// representatives, with an SDP cross-check on the winner.
inline OneNormResult max_one_norm_exact(std::size_t n) {
  require(n >= 1, ErrorKind::invalid_input, "n must be positive");
  if (n > kMaxEnumerationOrder)
    fail(ErrorKind::unsupported_size,
         "exact 1-norm maximization is supported for 1 <= n <= " + std::to_string(kMaxEnumerationOrder));
  const auto& reps = enumerate_classes(n).representatives;
  std::vector<double> nu(reps.size());
  parallel_for(reps.size(), [&](std::size_t i) { nu[i] = trace_norm(reps[i].matrix.to_dense()); });
  std::size_t best = 0;
  for (std::size_t i = 1; i < nu.size(); ++i)
    if (nu[i] > nu[best] + 1e-9) best = i;

  const auto check = nu_A(reps[best].matrix);
  if (std::abs(check.value - nu[best]) > 1e-6)
    fail(ErrorKind::solver_nonconvergence, "SDP and singular values disagree on the maximizing class");

  auto r = detail::one_norm_from_pattern(reps[best].matrix, OneNormMode::exact);
  r.upper_bound = one_norm_upper_bound(n);
  return r;
}

inline std::size_t default_restarts(std::size_t n) { return 200 * n; }

/// Best local optimum of the polar/sign alternation with flip moves over
/// random restarts.
/// Restart r draws its start from mt19937_64 seeded with (seed, r), so the
/// result does not depend on the thread count.
inline OneNormResult max_one_norm_search(std::size_t n, std::size_t restarts, std::uint64_t seed) {
  require(n >= 2, ErrorKind::invalid_input, "search needs n >= 2");
  require(restarts >= 1, ErrorKind::invalid_input, "at least one restart is needed");
  std::vector<SignMatrix> found(restarts);
  std::vector<double> value(restarts);
  parallel_for(restarts, [&](std::size_t r) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(r >> 32)};
    std::mt19937_64 rng(seq);
    std::vector<std::int8_t> d(n * n);
    for (auto& e : d) e = (rng() & 1u) ? -1 : 1;
    found[r] = detail::polar_sign_local_search(SignMatrix(n, std::move(d)));
    value[r] = trace_norm(found[r].to_dense());
  });
  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r) {
    if (value[r] > value[best] + 1e-9 ||
        (std::abs(value[r] - value[best]) <= 1e-9 && found[r] < found[best]))
      best = r;
  }
  auto out = detail::one_norm_from_pattern(found[best], OneNormMode::search);
  out.seed = seed;
  out.restarts = restarts;
  out.upper_bound = one_norm_upper_bound(n);
  return out;
}

}  // namespace schur
