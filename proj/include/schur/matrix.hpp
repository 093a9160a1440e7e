#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "schur/error.hpp"

namespace schur {

/// Row-major dense real matrix. Sized for the small problems in this
/// library (n up to a few dozen), so everything is stored contiguously
/// and copied by value.
class DenseMatrix {
 public:
  DenseMatrix() = default;

  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    require(data_.size() == rows_ * cols_, ErrorKind::invalid_input,
            "matrix data length does not match its shape");
  }

  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      require(row.size() == cols_, ErrorKind::invalid_input,
              "ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static DenseMatrix diagonal(std::span<const double> d) {
    DenseMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

  bool all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](double x) { return std::isfinite(x); });
  }

  DenseMatrix transposed() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  DenseMatrix& operator+=(const DenseMatrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  DenseMatrix& operator-=(const DenseMatrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  DenseMatrix& operator*=(double s) {
    for (double& x : data_) x *= s;
    return *this;
  }

  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
  friend DenseMatrix operator*(DenseMatrix a, double s) { return a *= s; }
  friend DenseMatrix operator*(double s, DenseMatrix a) { return a *= s; }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    require(a.cols_ == b.rows_, ErrorKind::invalid_input,
            "matrix product shape mismatch");
    DenseMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      double* ci = c.data_.data() + i * c.cols_;
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const double aik = a(i, k);
        if (aik == 0.0) continue;
        const double* bk = b.data_.data() + k * b.cols_;
        for (std::size_t j = 0; j < b.cols_; ++j) ci[j] += aik * bk[j];
      }
    }
    return c;
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  void check_same_shape(const DenseMatrix& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, ErrorKind::invalid_input,
            "matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Square matrix with every entry exactly -1 or +1.
class SignMatrix {
 public:
  SignMatrix() = default;

  /// All-ones matrix of order n.
  explicit SignMatrix(std::size_t n) : n_(n), data_(n * n, 1) {}

  SignMatrix(std::size_t n, std::vector<std::int8_t> entries)
      : n_(n), data_(std::move(entries)) {
    require(data_.size() == n_ * n_, ErrorKind::invalid_input,
            "sign matrix data length does not match n*n");
    for (auto e : data_)
      require(e == 1 || e == -1, ErrorKind::invalid_input,
              "sign matrix entries must be -1 or +1");
  }

  SignMatrix(std::initializer_list<std::initializer_list<int>> rows) {
    n_ = rows.size();
    data_.reserve(n_ * n_);
    for (const auto& row : rows) {
      require(row.size() == n_, ErrorKind::invalid_input,
              "sign matrix literal must be square");
      for (int e : row) {
        require(e == 1 || e == -1, ErrorKind::invalid_input,
                "sign matrix entries must be -1 or +1");
        data_.push_back(static_cast<std::int8_t>(e));
      }
    }
  }

  /// Converts a dense matrix whose entries are exactly +-1.
  static SignMatrix from_dense(const DenseMatrix& m) {
    require(m.is_square(), ErrorKind::invalid_input, "sign matrix must be square");
    std::vector<std::int8_t> d(m.size());
    for (std::size_t k = 0; k < m.size(); ++k) {
      const double x = m.values()[k];
      require(x == 1.0 || x == -1.0, ErrorKind::invalid_input,
              "entry is not +-1");
      d[k] = static_cast<std::int8_t>(x);
    }
    return SignMatrix(m.rows(), std::move(d));
  }

  /// Entrywise sign, with zero mapped to +1.
  static SignMatrix sign_of(const DenseMatrix& m) {
    require(m.is_square(), ErrorKind::invalid_input, "sign matrix must be square");
    std::vector<std::int8_t> d(m.size());
    for (std::size_t k = 0; k < m.size(); ++k) d[k] = m.values()[k] < 0.0 ? -1 : 1;
    return SignMatrix(m.rows(), std::move(d));
  }

  std::size_t n() const noexcept { return n_; }
  int operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, int v) {
    require(v == 1 || v == -1, ErrorKind::invalid_input,
            "sign matrix entries must be -1 or +1");
    data_[i * n_ + j] = static_cast<std::int8_t>(v);
  }
  void flip(std::size_t i, std::size_t j) { data_[i * n_ + j] = -data_[i * n_ + j]; }
  std::span<const std::int8_t> entries() const noexcept { return data_; }

  DenseMatrix to_dense() const {
    DenseMatrix m(n_, n_);
    for (std::size_t k = 0; k < data_.size(); ++k) m.values()[k] = data_[k];
    return m;
  }

  SignMatrix transposed() const {
    SignMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t.data_[j * n_ + i] = data_[i * n_ + j];
    return t;
  }

  /// Rows as '+'/'-' strings.
  std::vector<std::string> to_strings() const {
    std::vector<std::string> out(n_, std::string(n_, '+'));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if ((*this)(i, j) < 0) out[i][j] = '-';
    return out;
  }

  friend bool operator==(const SignMatrix&, const SignMatrix&) = default;
  friend auto operator<=>(const SignMatrix& a, const SignMatrix& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    // +1 sorts before -1
    for (std::size_t k = 0; k < a.data_.size(); ++k)
      if (a.data_[k] != b.data_[k])
        return a.data_[k] > b.data_[k] ? std::strong_ordering::less
                                       : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::int8_t> data_;
};

using complex = std::complex<double>;

/// Minimal complex matrix: construction, conjugation, Schur product and
/// operator norm (through the real 2n x 2n embedding).
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  /// Fourier matrix with entries w^(ij), w = exp(2 pi i / n).
  static ComplexMatrix fourier(std::size_t n) {
    ComplexMatrix f(n, n);
    const double two_pi = 2.0 * std::acos(-1.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        // reduce the exponent mod n before taking the angle
        const double angle = two_pi * static_cast<double>((i * j) % n) / static_cast<double>(n);
        f(i, j) = complex(std::cos(angle), std::sin(angle));
      }
    return f;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  ComplexMatrix conj() const {
    ComplexMatrix c = *this;
    for (auto& z : c.data_) z = std::conj(z);
    return c;
  }

  ComplexMatrix scaled(double s) const {
    ComplexMatrix c = *this;
    for (auto& z : c.data_) z *= s;
    return c;
  }

  /// [[Re, -Im], [Im, Re]]; shares singular values with this matrix (each
  /// one doubled in multiplicity).
  DenseMatrix realification() const {
    DenseMatrix r(2 * rows_, 2 * cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        const complex z = (*this)(i, j);
        r(i, j) = z.real();
        r(i, j + cols_) = -z.imag();
        r(i + rows_, j) = z.imag();
        r(i + rows_, j + cols_) = z.real();
      }
    return r;
  }

  friend ComplexMatrix schur_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrorKind::invalid_input,
            "Schur product shape mismatch");
    ComplexMatrix c(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = a.data_[k] * b.data_[k];
    return c;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<complex> data_;
};

inline DenseMatrix schur_product(const DenseMatrix& a, const DenseMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorKind::invalid_input,
          "Schur product shape mismatch");
  DenseMatrix c(a.rows(), a.cols());
  for (std::size_t k = 0; k < a.size(); ++k)
    c.values()[k] = a.values()[k] * b.values()[k];
  return c;
}

inline DenseMatrix kronecker(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
  return k;
}

inline SignMatrix kronecker(const SignMatrix& a, const SignMatrix& b) {
  const std::size_t n = a.n() * b.n();
  std::vector<std::int8_t> d(n * n);
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t j = 0; j < a.n(); ++j)
      for (std::size_t p = 0; p < b.n(); ++p)
        for (std::size_t q = 0; q < b.n(); ++q)
          d[(i * b.n() + p) * n + j * b.n() + q] =
              static_cast<std::int8_t>(a(i, j) * b(p, q));
  return SignMatrix(n, std::move(d));
}

inline double frobenius_norm(const DenseMatrix& m) {
  require(!m.empty(), ErrorKind::invalid_input, "empty matrix");
  double s = 0.0;
  for (double x : m.values()) s += x * x;
  return std::sqrt(s);
}

inline double max_abs(const DenseMatrix& m) {
  double s = 0.0;
  for (double x : m.values()) s = std::max(s, std::abs(x));
  return s;
}

/// Entrywise 1-norm: sum of |m_ij|.
inline double entrywise_one_norm(const DenseMatrix& m) {
  double s = 0.0;
  for (double x : m.values()) s += std::abs(x);
  return s;
}

inline double trace(const DenseMatrix& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) s += m(i, i);
  return s;
}

/// <A, B> = sum a_ij b_ij.
inline double inner(const DenseMatrix& a, const DenseMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorKind::invalid_input,
          "inner product shape mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a.values()[k] * b.values()[k];
  return s;
}

inline bool is_symmetric(const DenseMatrix& m, double tol) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (std::abs(m(i, j) - m(j, i)) > tol) return false;
  return true;
}

/// Circulant matrix whose first row is `top` and each later row is the
/// previous one shifted right by one.
inline DenseMatrix circulant(std::span<const double> top) {
  const std::size_t n = top.size();
  DenseMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c(i, j) = top[(j + n - i) % n];
  return c;
}

/// Block matrix [[a, b], [c, d]].
inline DenseMatrix block2x2(const DenseMatrix& a, const DenseMatrix& b,
                            const DenseMatrix& c, const DenseMatrix& d) {
  require(a.rows() == b.rows() && c.rows() == d.rows() && a.cols() == c.cols() &&
              b.cols() == d.cols(),
          ErrorKind::invalid_input, "block shapes do not conform");
  DenseMatrix m(a.rows() + c.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  for (std::size_t i = 0; i < c.rows(); ++i) {
    for (std::size_t j = 0; j < c.cols(); ++j) m(a.rows() + i, j) = c(i, j);
    for (std::size_t j = 0; j < d.cols(); ++j) m(a.rows() + i, c.cols() + j) = d(i, j);
  }
  return m;
}

}  // namespace schur
