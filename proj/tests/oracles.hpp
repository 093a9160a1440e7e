#pragma once

// Reference computations for the tests, written independently of the
// library's numerical code: Householder tridiagonalization with Sturm
// bisection for eigenvalues, a naive DFT, exhaustive group orbits and
// integer Hadamard checks. Only the DenseMatrix/SignMatrix containers are
// shared with the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "schur/matrix.hpp"

namespace oracle {

using schur::DenseMatrix;
using schur::SignMatrix;

/// All eigenvalues of a symmetric matrix, ascending.
inline std::vector<double> sym_eigenvalues(const DenseMatrix& s) {
  const std::size_t n = s.rows();
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = 0.5 * (s(i, j) + s(j, i));
  // Householder reduction to tridiagonal form
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double alpha = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) alpha += a[i][k] * a[i][k];
    alpha = std::sqrt(alpha);
    if (alpha == 0.0) continue;
    if (a[k + 1][k] > 0) alpha = -alpha;
    std::vector<double> v(n, 0.0);
    v[k + 1] = a[k + 1][k] - alpha;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = a[i][k];
    double vv = 0.0;
    for (double x : v) vv += x * x;
    if (vv == 0.0) continue;
    // A <- H A H with H = I - 2 v v^T / (v^T v)
    std::vector<double> p(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p[i] += a[i][j] * v[j];
    for (double& x : p) x *= 2.0 / vv;
    double vp = 0.0;
    for (std::size_t i = 0; i < n; ++i) vp += v[i] * p[i];
    const double kf = vp / vv;
    std::vector<double> q(n);
    for (std::size_t i = 0; i < n; ++i) q[i] = p[i] - kf * v[i];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a[i][j] -= v[i] * q[j] + q[i] * v[j];
  }
  std::vector<double> d(n), e(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i] = a[i][i];
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = a[i + 1][i];

  double bound = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    bound = std::max(bound, std::abs(d[i]) + (i ? std::abs(e[i - 1]) : 0.0) + std::abs(e[i]));
  // number of eigenvalues strictly below x (Sturm sequence)
  auto count_below = [&](double x) {
    std::size_t c = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double off = i ? e[i - 1] * e[i - 1] : 0.0;
      q = d[i] - x - (i ? off / q : 0.0);
      if (q == 0.0) q = -1e-300;
      if (q < 0.0) ++c;
    }
    return c;
  };
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    double lo = -bound - 1.0, hi = bound + 1.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      if (count_below(mid) > k)
        hi = mid;
      else
        lo = mid;
    }
    out[k] = 0.5 * (lo + hi);
  }
  return out;
}

inline DenseMatrix hermitian_dilation(const DenseMatrix& a) {
  const std::size_t r = a.rows(), c = a.cols();
  DenseMatrix h(r + c, r + c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) h(i, r + j) = h(r + j, i) = a(i, j);
  return h;
}

/// Singular values of A as the nonnegative eigenvalues of [[0, A], [A^T, 0]].
inline double operator_norm(const DenseMatrix& a) {
  const auto ev = sym_eigenvalues(hermitian_dilation(a));
  return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

inline double trace_norm(const DenseMatrix& a) {
  double s = 0.0;
  for (double x : sym_eigenvalues(hermitian_dilation(a))) s += std::abs(x);
  return 0.5 * s;
}

inline double min_eigenvalue(const DenseMatrix& s) { return sym_eigenvalues(s).front(); }

inline DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
  return c;
}

inline double orthogonality_defect(const DenseMatrix& q) {
  const std::size_t n = q.cols();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double g = 0.0;
      for (std::size_t k = 0; k < q.rows(); ++k) g += q(k, i) * q(k, j);
      g -= i == j ? 1.0 : 0.0;
      s += g * g;
    }
  return std::sqrt(s);
}

/// (1/n) sum_k |sum_j c_j e^{2 pi i jk/n}| by a naive DFT.
inline double circulant_norm(const std::vector<double>& top) {
  const std::size_t n = top.size();
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> s = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      s += top[j] * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j * k) / static_cast<double>(n));
    total += std::abs(s);
  }
  return total / static_cast<double>(n);
}

inline bool is_hadamard(const SignMatrix& m) {
  const std::size_t n = m.n();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      long s = 0;
      for (std::size_t k = 0; k < n; ++k) s += m(i, k) * m(j, k);
      if (s != (i == j ? static_cast<long>(n) : 0L)) return false;
    }
  return true;
}

/// Lexicographic minimum (+1 before -1, row-major) over the whole group,
/// by exhaustive search over permutations and signs. n <= 4.
inline SignMatrix brute_canonical(const SignMatrix& m) {
  const std::size_t n = m.n();
  std::vector<int> best;
  for (int t = 0; t < 2; ++t) {
    std::vector<std::size_t> rp(n), cp(n);
    std::iota(rp.begin(), rp.end(), 0);
    do {
      std::iota(cp.begin(), cp.end(), 0);
      do {
        for (std::uint32_t rs = 0; rs < (1u << n); ++rs)
          for (std::uint32_t cs = 0; cs < (1u << n); ++cs) {
            std::vector<int> cand(n * n);
            for (std::size_t i = 0; i < n; ++i)
              for (std::size_t j = 0; j < n; ++j) {
                const int e = t ? m(cp[j], rp[i]) : m(rp[i], cp[j]);
                const int s = (((rs >> i) & 1u) ? -1 : 1) * (((cs >> j) & 1u) ? -1 : 1);
                cand[i * n + j] = e * s;
              }
            // +1 before -1: compare with larger entries first
            const bool better = best.empty() ||
                                std::lexicographical_compare(cand.begin(), cand.end(), best.begin(), best.end(),
                                                             [](int a, int b) { return a > b; });
            if (better) best = std::move(cand);
          }
      } while (std::next_permutation(cp.begin(), cp.end()));
    } while (std::next_permutation(rp.begin(), rp.end()));
  }
  std::vector<std::int8_t> d(best.begin(), best.end());
  return SignMatrix(n, std::move(d));
}

inline SignMatrix random_sign_matrix(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::int8_t> d(n * n);
  for (auto& e : d) e = (rng() & 1u) ? -1 : 1;
  return SignMatrix(n, std::move(d));
}

}  // namespace oracle
