#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "schur/error.hpp"
#include "schur/linalg.hpp"
#include "schur/matrix.hpp"
#include "schur/sdp.hpp"

namespace schur {

/// Feasible point of the minimization: [[Y, A], [A^T, Z]] PSD with
/// diag(Y) = diag(Z) = c. Any such point bounds the Schur norm above by c.
struct PrimalCertificate {
  double c = 0.0;
  DenseMatrix y;
  DenseMatrix z;
};

/// Feasible point of the maximization: [[diag(v), X], [X^T, diag(w)]] PSD
/// with sum(v) + sum(w) <= 2. Bounds the Schur norm below by <A, X>.
struct DualCertificate {
  DenseMatrix x;
  std::vector<double> v;
  std::vector<double> w;
};

enum class SchurMethod { sdp, circulant, psd, trivial };

inline const char* to_string(SchurMethod m) {
  switch (m) {
    case SchurMethod::sdp: return "sdp";
    case SchurMethod::circulant: return "circulant";
    case SchurMethod::psd: return "psd";
    case SchurMethod::trivial: return "trivial";
  }
  return "unknown";
}

struct SchurNormResult {
  double value = 0.0;
  double lower = 0.0;  // certified bracket (equal to value off the SDP path)
  double upper = 0.0;
  std::optional<PrimalCertificate> primal_cert;
  std::optional<DualCertificate> dual_cert;
  DenseMatrix witness;
  double witness_orthogonal_distance = 0.0;  // ||C - polar(C)||_F
  SchurMethod method = SchurMethod::sdp;
  int sdp_iterations = 0;
};

struct CirculantSpec {
  std::vector<double> top_row;
};

struct SchurNormOptions {
  double tol = 1e-8;
  bool fast_paths = true;
  int max_iter = 200;
};

// ---------------------------------------------------------------------------
// Closed forms and simple bounds

/// Eigenvalues p(w^k) of the circulant with the given top row.
inline std::vector<std::complex<double>> circulant_eigenvalues(std::span<const double> top) {
  const std::size_t n = top.size();
  const double two_pi = 2.0 * std::acos(-1.0);
  std::vector<std::complex<double>> lambda(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double angle = two_pi * static_cast<double>((j * k) % n) / static_cast<double>(n);
      s += top[j] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    lambda[k] = s;
  }
  return lambda;
}

/// (1/n) * sum_k |p(w^k)|, the Schur norm of a circulant matrix.
inline double circulant_schur_norm(const CirculantSpec& spec) {
  require(!spec.top_row.empty(), ErrorKind::invalid_input, "circulant top row is empty");
  double s = 0.0;
  for (const auto& l : circulant_eigenvalues(spec.top_row)) s += std::abs(l);
  return s / static_cast<double>(spec.top_row.size());
}

/// Max diagonal entry; valid only for positive semidefinite input.
inline double psd_schur_norm(const DenseMatrix& m) {
  require(m.is_square() && !m.empty(), ErrorKind::invalid_input, "PSD path needs a square matrix");
  require(is_symmetric(m, 1e-12 * std::max(1.0, max_abs(m))), ErrorKind::invalid_input,
          "PSD path needs a symmetric matrix");
  require(min_eigenvalue(m) >= -1e-10, ErrorKind::invalid_input,
          "matrix is not positive semidefinite; use schur_norm");
  double d = m(0, 0);
  for (std::size_t j = 1; j < m.rows(); ++j) d = std::max(d, m(j, j));
  return d;
}

/// ||R||_r * ||C||_c (largest row norm times largest column norm), an
/// upper bound on the Schur norm of R*C.
inline double factorization_upper_bound(const DenseMatrix& r, const DenseMatrix& c) {
  require(!r.empty() && !c.empty() && r.cols() == c.rows(), ErrorKind::invalid_input,
          "factorization shapes do not conform");
  double row = 0.0;
  for (std::size_t i = 0; i < r.rows(); ++i) {
    double s = 0.0;
    for (double x : r.row(i)) s += x * x;
    row = std::max(row, s);
  }
  double col = 0.0;
  for (std::size_t j = 0; j < c.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < c.rows(); ++i) s += c(i, j) * c(i, j);
    col = std::max(col, s);
  }
  return std::sqrt(row) * std::sqrt(col);
}

/// sqrt(n), the universal bound for square matrices with entries of modulus <= 1.
inline double schur_upper_bound_sqrt_n(const DenseMatrix& a) {
  require(a.is_square() && !a.empty(), ErrorKind::invalid_input, "matrix must be square");
  require(max_abs(a) <= 1.0 + 1e-12, ErrorKind::invalid_input,
          "entries must have modulus at most 1");
  return std::sqrt(static_cast<double>(a.rows()));
}

// ---------------------------------------------------------------------------
// SDP encoding

/// Standard-form SDP whose dual is min c s.t. [[Y, A], [A^T, Z]] PSD with
/// diag(Y) = diag(Z) = c. The dual variable y_0 is c; the rest are the
/// off-diagonal entries of Y and Z. The primal block W relates to the
/// maximization by v = 2 diag(W11), w = 2 diag(W22), X = -2 W12.
inline sdp::SdpProblem schur_norm_sdp(const DenseMatrix& a) {
  require(a.is_square() && !a.empty(), ErrorKind::invalid_input, "Schur norm needs a square matrix");
  require(a.all_finite(), ErrorKind::invalid_input, "matrix has non-finite entries");
  const std::size_t n = a.rows();
  sdp::SdpProblem p;
  p.blocks = {{sdp::ConeKind::psd, 2 * n}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p.objective.add(0, i, n + j, a(i, j));

  sdp::SparseSymMatrix diag;
  for (std::size_t k = 0; k < 2 * n; ++k) diag.add(0, k, k, -1.0);
  p.constraints.push_back(std::move(diag));
  p.rhs.push_back(-1.0);
  for (std::size_t off : {std::size_t{0}, n})
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        sdp::SparseSymMatrix e;
        e.add(0, off + i, off + j, -1.0);
        p.constraints.push_back(std::move(e));
        p.rhs.push_back(0.0);
      }
  return p;
}

inline double dual_objective(const DenseMatrix& a, const DualCertificate& d) {
  return inner(a, d.x);
}

/// Rescales X entrywise by 1/sqrt(v_i w_j). Rows (columns) whose v_i (w_j)
/// falls below 1e-12 are zeroed. The result is scaled down to a
/// contraction if rounding pushed its norm above one.
inline DenseMatrix extract_witness(const DenseMatrix& a, const DualCertificate& d) {
  const std::size_t n = a.rows();
  require(d.x.rows() == n && d.x.cols() == n && d.v.size() == n && d.w.size() == n,
          ErrorKind::invalid_input, "dual certificate does not match the matrix");
  constexpr double kFloor = 1e-12;
  const bool any_v = std::any_of(d.v.begin(), d.v.end(), [](double t) { return t > kFloor; });
  const bool any_w = std::any_of(d.w.begin(), d.w.end(), [](double t) { return t > kFloor; });
  if (!any_v || !any_w)
    fail(ErrorKind::extraction_failure, "dual certificate is degenerate (all weights vanish)");
  DenseMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (d.v[i] <= kFloor) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (d.w[j] <= kFloor) continue;
      c(i, j) = d.x(i, j) / std::sqrt(d.v[i] * d.w[j]);
    }
  }
  const double nrm = operator_norm(c);
  if (nrm > 1.0) c *= 1.0 / nrm;
  return c;
}

namespace detail {

// Pins the off-diagonal block to A and lifts c until the block matrix is PSD.
inline PrimalCertificate repair_primal(const DenseMatrix& a, const DenseMatrix& s) {
  const std::size_t n = a.rows();
  PrimalCertificate pc;
  pc.y = DenseMatrix(n, n);
  pc.z = DenseMatrix(n, n);
  double c = 0.0;
  for (std::size_t k = 0; k < 2 * n; ++k) c += s(k, k);
  c /= static_cast<double>(2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      pc.y(i, j) = i == j ? c : 0.5 * (s(i, j) + s(j, i));
      pc.z(i, j) = i == j ? c : 0.5 * (s(n + i, n + j) + s(n + j, n + i));
    }
  const double lmin = min_eigenvalue(block2x2(pc.y, a, a.transposed(), pc.z));
  if (lmin < 0.0) {
    c -= lmin;
    for (std::size_t i = 0; i < n; ++i) {
      pc.y(i, i) = c;
      pc.z(i, i) = c;
    }
  }
  pc.c = c;
  return pc;
}

// Zeroes the off-diagonals of the diagonal blocks of 2W, shifts the
// diagonal until PSD, and renormalizes sum(v) + sum(w) to 2.
inline DualCertificate repair_dual(const DenseMatrix& w_block, std::size_t n) {
  DualCertificate dc;
  dc.x = DenseMatrix(n, n);
  dc.v.resize(n);
  dc.w.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    dc.v[i] = std::max(0.0, 2.0 * w_block(i, i));
    dc.w[i] = std::max(0.0, 2.0 * w_block(n + i, n + i));
    for (std::size_t j = 0; j < n; ++j)
      dc.x(i, j) = -(w_block(i, n + j) + w_block(n + j, i));
  }
  const DenseMatrix dv = DenseMatrix::diagonal(dc.v);
  const DenseMatrix dw = DenseMatrix::diagonal(dc.w);
  const double lmin = min_eigenvalue(block2x2(dv, dc.x, dc.x.transposed(), dw));
  if (lmin < 0.0)
    for (std::size_t i = 0; i < n; ++i) {
      dc.v[i] -= lmin;
      dc.w[i] -= lmin;
    }
  const double total = std::accumulate(dc.v.begin(), dc.v.end(), 0.0) +
                       std::accumulate(dc.w.begin(), dc.w.end(), 0.0);
  if (total > 0.0) {
    const double scale = 2.0 / total;
    for (auto& t : dc.v) t *= scale;
    for (auto& t : dc.w) t *= scale;
    dc.x *= scale;
  }
  return dc;
}

inline bool is_circulant(const DenseMatrix& a) {
  const std::size_t n = a.rows();
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a(i, j) != a(0, (j + n - i) % n)) return false;
  return true;
}

// Real orthogonal circulant whose eigenvalues are the phases of A's.
inline DenseMatrix circulant_witness(std::span<const double> top) {
  const std::size_t n = top.size();
  const auto lambda = circulant_eigenvalues(top);
  const double two_pi = 2.0 * std::acos(-1.0);
  std::vector<double> row(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    std::complex<double> s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double mag = std::abs(lambda[k]);
      const std::complex<double> phase = mag > 1e-14 ? lambda[k] / mag : 1.0;
      const double angle = -two_pi * static_cast<double>((j * k) % n) / static_cast<double>(n);
      s += phase * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    row[j] = s.real() / static_cast<double>(n);
  }
  return circulant(row);
}

inline double distance_to_orthogonal(const DenseMatrix& c) {
  return frobenius_norm(c - polar_factor(c));
}

// Rank-one A = u v^T has Schur norm max|u| * max|v|.
inline std::optional<SchurNormResult> rank_one_path(const DenseMatrix& a) {
  const std::size_t n = a.rows();
  std::size_t pi = 0, pj = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(a(i, j)) > std::abs(a(pi, pj))) {
        pi = i;
        pj = j;
      }
  const double piv = a(pi, pj);
  SchurNormResult r;
  r.method = SchurMethod::trivial;
  r.witness = DenseMatrix(n, n);
  if (piv == 0.0) return r;
  const double scale = std::abs(piv);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(a(i, j) * piv - a(i, pj) * a(pi, j)) > 1e-14 * scale * scale) return std::nullopt;
  r.witness(pi, pj) = 1.0;
  r.value = r.lower = r.upper = scale;
  r.witness_orthogonal_distance = distance_to_orthogonal(r.witness);
  return r;
}

}  // namespace detail

/// Solves the SDP pair and returns the norm with repaired certificates.
inline SchurNormResult schur_norm_sdp_solve(const DenseMatrix& a, const SchurNormOptions& opt = {}) {
  const std::size_t n = a.rows();
  const auto problem = schur_norm_sdp(a);
  sdp::SdpSettings settings;
  settings.gap_tol = std::min(1e-9, 0.1 * opt.tol);
  settings.feas_tol = settings.gap_tol;
  settings.max_iter = opt.max_iter;
  const auto sol = sdp::solve(problem, settings);

  SchurNormResult r;
  r.method = SchurMethod::sdp;
  r.sdp_iterations = sol.iterations;
  r.primal_cert = detail::repair_primal(a, sol.s.block(0));
  r.dual_cert = detail::repair_dual(sol.x.block(0), n);
  r.upper = r.primal_cert->c;
  r.lower = dual_objective(a, *r.dual_cert);
  if (sol.status != sdp::Status::optimal && r.upper - r.lower > opt.tol)
    throw NonConvergence(std::string("Schur norm SDP ended with status ") + sdp::to_string(sol.status),
                         r.lower, r.upper);
  r.value = 0.5 * (r.lower + r.upper);
  r.witness = extract_witness(a, *r.dual_cert);
  r.witness_orthogonal_distance = detail::distance_to_orthogonal(r.witness);
  return r;
}

/// Schur multiplier norm max{ ||A o C|| : ||C|| <= 1 } of a real square matrix.
inline SchurNormResult schur_norm(const DenseMatrix& a, const SchurNormOptions& opt = {}) {
  require(a.is_square() && !a.empty(), ErrorKind::invalid_input, "Schur norm needs a square matrix");
  require(a.all_finite(), ErrorKind::invalid_input, "matrix has non-finite entries");
  const std::size_t n = a.rows();

  if (opt.fast_paths) {
    if (auto r = detail::rank_one_path(a)) return *r;

    if (detail::is_circulant(a)) {
      std::vector<double> top(a.row(0).begin(), a.row(0).end());
      SchurNormResult r;
      r.method = SchurMethod::circulant;
      r.value = r.lower = r.upper = circulant_schur_norm({top});
      r.witness = detail::circulant_witness(top);
      r.witness_orthogonal_distance = detail::distance_to_orthogonal(r.witness);
      return r;
    }

    if (is_symmetric(a, 0.0)) {
      const auto eig = sym_eigen(a, false);
      if (eig.values.back() >= -1e-10 * std::max(1.0, eig.values.front())) {
        SchurNormResult r;
        r.method = SchurMethod::psd;
        double d = a(0, 0);
        for (std::size_t j = 1; j < n; ++j) d = std::max(d, a(j, j));
        r.value = r.lower = r.upper = d;
        r.witness = DenseMatrix::identity(n);
        return r;
      }
    }
  }
  return schur_norm_sdp_solve(a, opt);
}

}  // namespace schur
