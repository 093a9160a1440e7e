#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "schur/error.hpp"
#include "schur/matrix.hpp"

namespace schur {

struct SymEigen {
  std::vector<double> values;  // descending
  DenseMatrix vectors;         // column k pairs with values[k]
};

struct Svd {
  DenseMatrix u;               // rows x k, orthonormal columns
  std::vector<double> values;  // descending, nonnegative
  DenseMatrix v;               // cols x k, orthonormal columns
};

namespace detail {

constexpr int kMaxSweeps = 100;

// Rotation (c, s) that annihilates the off-diagonal of [[app, apq], [apq, aqq]].
inline void jacobi_rotation(double app, double aqq, double apq, double& c, double& s) {
  const double tau = (aqq - app) / (2.0 * apq);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  c = 1.0 / std::sqrt(1.0 + t * t);
  s = t * c;
}

inline void rotate(double* x, double* y, std::size_t len, double c, double s) {
  for (std::size_t k = 0; k < len; ++k) {
    const double a = x[k], b = y[k];
    x[k] = c * a - s * b;
    y[k] = s * a + c * b;
  }
}

// Appends orthonormal columns (stored as rows of `cols`) until there are
// `want` of them, using the standard basis as candidates.
inline void complete_orthonormal(std::vector<std::vector<double>>& cols, std::size_t dim,
                                 std::size_t want) {
  while (cols.size() < want) {
    std::vector<double> best;
    double best_norm = -1.0;
    for (std::size_t e = 0; e < dim; ++e) {
      std::vector<double> w(dim, 0.0);
      w[e] = 1.0;
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : cols) {
          const double d = std::inner_product(w.begin(), w.end(), q.begin(), 0.0);
          for (std::size_t k = 0; k < dim; ++k) w[k] -= d * q[k];
        }
      const double nrm = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
      if (nrm > best_norm) {
        best_norm = nrm;
        best = std::move(w);
      }
    }
    for (double& x : best) x /= best_norm;
    cols.push_back(std::move(best));
  }
}

}  // namespace detail

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
inline SymEigen sym_eigen(const DenseMatrix& s, bool want_vectors = true) {
  require(!s.empty() && s.is_square(), ErrorKind::invalid_input,
          "sym_eigen needs a nonempty square matrix");
  require(s.all_finite(), ErrorKind::invalid_input, "matrix has non-finite entries");
  const double scale = std::max(1.0, max_abs(s));
  require(is_symmetric(s, 1e-12 * scale), ErrorKind::invalid_input,
          "sym_eigen needs a symmetric matrix");

  const std::size_t n = s.rows();
  DenseMatrix a = s;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (s(i, j) + s(j, i));
  // vt holds eigenvectors as rows during the iteration
  DenseMatrix vt = DenseMatrix::identity(want_vectors ? n : 0);

  const double norm = frobenius_norm(a);
  for (int sweep = 0; sweep < detail::kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += 2.0 * a(i, j) * a(i, j);
    if (std::sqrt(off) <= 1e-14 * norm) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        double c, sn;
        detail::jacobi_rotation(a(p, p), a(q, q), apq, c, sn);
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        detail::rotate(&a(p, 0), &a(q, 0), n, c, sn);
        a(p, q) = a(q, p) = 0.0;
        if (want_vectors) detail::rotate(&vt(p, 0), &vt(q, 0), n, c, sn);
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

  SymEigen out;
  out.values.resize(n);
  if (want_vectors) out.vectors = DenseMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    if (want_vectors)
      for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = vt(order[k], i);
  }
  return out;
}

inline double min_eigenvalue(const DenseMatrix& s) {
  return sym_eigen(s, false).values.back();
}

/// One-sided (Hestenes) Jacobi SVD. Square inputs get full orthogonal U
/// and V even when rank deficient.
inline Svd svd(const DenseMatrix& m, bool want_vectors = true) {
  require(!m.empty(), ErrorKind::invalid_input, "svd of an empty matrix");
  require(m.all_finite(), ErrorKind::invalid_input, "matrix has non-finite entries");
  if (m.rows() < m.cols()) {
    Svd t = svd(m.transposed(), want_vectors);
    std::swap(t.u, t.v);
    return t;
  }
  const std::size_t rows = m.rows(), n = m.cols();
  // w holds the columns of M as rows; vt the right vectors as rows
  DenseMatrix w = m.transposed();
  DenseMatrix vt = DenseMatrix::identity(want_vectors ? n : 0);

  for (int sweep = 0; sweep < detail::kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        const double* wi = &w(i, 0);
        const double* wj = &w(j, 0);
        for (std::size_t k = 0; k < rows; ++k) {
          alpha += wi[k] * wi[k];
          beta += wj[k] * wj[k];
          gamma += wi[k] * wj[k];
        }
        if (gamma == 0.0 || std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        double c, s;
        detail::jacobi_rotation(alpha, beta, gamma, c, s);
        detail::rotate(&w(i, 0), &w(j, 0), rows, c, s);
        if (want_vectors) detail::rotate(&vt(i, 0), &vt(j, 0), n, c, s);
      }
    }
    if (!rotated) break;
  }

  std::vector<double> norms(n);
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (std::size_t r = 0; r < rows; ++r) s += w(k, r) * w(k, r);
    norms[k] = std::sqrt(s);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  Svd out;
  out.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.values[k] = norms[order[k]];
  if (!want_vectors) return out;

  const double cutoff = out.values[0] * 1e-13 * static_cast<double>(rows);
  std::vector<std::vector<double>> ucols;
  std::size_t rank = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (out.values[k] <= cutoff || out.values[k] == 0.0) break;
    std::vector<double> col(rows);
    for (std::size_t r = 0; r < rows; ++r) col[r] = w(order[k], r) / out.values[k];
    ucols.push_back(std::move(col));
    ++rank;
  }
  detail::complete_orthonormal(ucols, rows, n);

  out.u = DenseMatrix(rows, n);
  out.v = DenseMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t r = 0; r < rows; ++r) out.u(r, k) = ucols[k][r];
    for (std::size_t r = 0; r < n; ++r) out.v(r, k) = vt(order[k], r);
  }
  return out;
}

inline std::vector<double> singular_values(const DenseMatrix& m) {
  return svd(m, false).values;
}

/// Largest singular value.
inline double operator_norm(const DenseMatrix& m) {
  require(!m.empty(), ErrorKind::invalid_input, "operator norm of an empty matrix");
  return singular_values(m).front();
}

inline double operator_norm(const ComplexMatrix& m) {
  require(m.rows() > 0 && m.cols() > 0, ErrorKind::invalid_input,
          "operator norm of an empty matrix");
  return operator_norm(m.realification());
}

/// Sum of singular values.
inline double trace_norm(const DenseMatrix& m) {
  const auto s = singular_values(m);
  return std::accumulate(s.begin(), s.end(), 0.0);
}

/// Orthogonal polar factor Q = U V^T of a square matrix; maximizes
/// Tr(Q^T M) over orthogonal Q.
inline DenseMatrix polar_factor(const DenseMatrix& m) {
  require(m.is_square(), ErrorKind::invalid_input, "polar factor needs a square matrix");
  const Svd d = svd(m);
  return d.u * d.v.transposed();
}

/// Lower Cholesky factor, or nothing if the matrix is not numerically
/// positive definite.
inline std::optional<DenseMatrix> cholesky(const DenseMatrix& a) {
  const std::size_t n = a.rows();
  DenseMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) return std::nullopt;
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      const double* li = &l(i, 0);
      const double* lj = &l(j, 0);
      for (std::size_t k = 0; k < j; ++k) s -= li[k] * lj[k];
      l(i, j) = s / ljj;
    }
  }
  return l;
}

/// Solves L L^T x = b in place.
inline void cholesky_solve(const DenseMatrix& l, std::vector<double>& b) {
  const std::size_t n = l.rows();
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * b[k];
    b[i] = s / l(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= l(k, i) * b[k];
    b[i] = s / l(i, i);
  }
}

/// Inverse of a lower triangular matrix.
inline DenseMatrix lower_inverse(const DenseMatrix& l) {
  const std::size_t n = l.rows();
  DenseMatrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    inv(j, j) = 1.0 / l(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = 0.0;
      for (std::size_t k = j; k < i; ++k) s -= l(i, k) * inv(k, j);
      inv(i, j) = s / l(i, i);
    }
  }
  return inv;
}

/// Inverse of an SPD matrix from its Cholesky factor.
inline DenseMatrix spd_inverse(const DenseMatrix& l) {
  const DenseMatrix li = lower_inverse(l);
  const std::size_t n = l.rows();
  DenseMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double s = 0.0;
      for (std::size_t k = i; k < n; ++k) s += li(k, i) * li(k, j);
      inv(i, j) = inv(j, i) = s;
    }
  return inv;
}

/// ||Q^T Q - I||_F.
inline double orthogonality_defect(const DenseMatrix& q) {
  DenseMatrix g = q.transposed() * q;
  for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) -= 1.0;
  return frobenius_norm(g);
}

}  // namespace schur
