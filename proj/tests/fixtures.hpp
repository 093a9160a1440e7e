#pragma once

// Sign matrices with known Schur norms, shared by the test binaries.

#include <cmath>
#include <vector>

#include "schur/matrix.hpp"

namespace fixtures {

using schur::DenseMatrix;
using schur::SignMatrix;

inline const double kSqrt2 = std::sqrt(2.0);
inline const double kSqrt3 = std::sqrt(3.0);

// 4 x 4 representatives with norms (2+3 sqrt 6)/5, sqrt(2+sqrt 2), sqrt 3
inline SignMatrix m4_two_plus_three_root6() { return {{1, 1, 1, 1}, {1, 1, -1, 1}, {1, -1, 1, 1}, {1, -1, -1, -1}}; }
inline SignMatrix m4_root_two_plus_root2() { return {{1, 1, 1, 1}, {1, -1, -1, 1}, {1, -1, 1, 1}, {1, -1, -1, -1}}; }
inline SignMatrix m4_root3() { return {{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, 1}, {1, -1, -1, -1}}; }

// two inequivalent 4 x 4 matrices that both have norm 5/3
inline SignMatrix m4_five_thirds_a() { return {{1, 1, 1, 1}, {1, -1, 1, 1}, {1, -1, -1, -1}, {1, -1, -1, -1}}; }
inline SignMatrix m4_five_thirds_b() { return {{1, 1, 1, 1}, {1, -1, -1, 1}, {1, -1, -1, -1}, {1, -1, -1, -1}}; }

inline SignMatrix hadamard4() { return {{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}}; }

// 3 x 3: a circulant with norm 5/3, and a rank-two matrix with norm sqrt 2
inline std::vector<double> m3_circulant_row() { return {1, 1, -1}; }
inline SignMatrix m3_root2() { return {{1, 1, 1}, {1, -1, -1}, {1, -1, -1}}; }
inline DenseMatrix m3_root2_row_factor() { return {{1, 0, 0}, {0, 1, 0}, {0, 1, 0}}; }
inline DenseMatrix m3_root2_col_factor() { return {{1, 1, 1}, {1, -1, -1}, {0, 0, 0}}; }

// 5 x 5 pair: same singular values, different classes
inline SignMatrix pair5_a() {
  return {{1, 1, 1, 1, 1}, {1, 1, -1, -1, -1}, {1, -1, -1, -1, 1}, {1, -1, -1, -1, -1}, {1, -1, 1, 1, -1}};
}
inline SignMatrix pair5_b() {
  return {{1, 1, 1, 1, 1}, {1, 1, -1, -1, -1}, {1, -1, -1, -1, 1}, {1, -1, -1, -1, 1}, {1, -1, 1, 1, -1}};
}

// maximizers of the Schur norm for n = 5, 6, 7
inline SignMatrix r5_maximizer() {
  SignMatrix m(5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      if (i != j) m.set(i, j, -1);
  return m;
}
inline SignMatrix r6_maximizer() {
  return {{1, 1, 1, 1, 1, 1},    {1, 1, 1, -1, -1, -1},  {1, 1, -1, 1, -1, -1},
          {1, -1, 1, 1, -1, -1}, {1, -1, -1, -1, 1, -1}, {1, -1, -1, -1, -1, 1}};
}
inline std::vector<double> r7_circulant_row() { return {1, 1, -1, 1, -1, -1, -1}; }

inline double r5() { return 11.0 / 5.0; }
inline double r6() { return (4.0 + std::sqrt(10.0)) / 3.0; }
inline double r7() { return (1.0 + 12.0 * kSqrt2) / 7.0; }

/// Analytic optimal pair for the n = 6 maximizer: c with Y = Z, and
/// X with v = w = (1/6) 1.
inline DenseMatrix r6_primal_block() {
  const double c = r6();
  const double a = 2.0 - c, b = c - 2.0;
  return {{c, 0, 0, 0, a, a}, {0, c, b, b, 0, 0}, {0, b, c, b, 0, 0},
          {0, b, b, c, 0, 0}, {a, 0, 0, 0, c, b}, {a, 0, 0, 0, b, c}};
}
inline DenseMatrix r6_dual_x() {
  const DenseMatrix base{{2, 0, 0, 0, 1, 1},  {0, 1, 1, -2, 0, 0}, {0, 1, -2, 1, 0, 0},
                         {0, -2, 1, 1, 0, 0}, {1, 0, 0, 0, 2, -1}, {1, 0, 0, 0, -1, 2}};
  const DenseMatrix surd{{-1, 3, 3, 3, 1, 1},   {3, 1, 1, 1, -3, -3},  {3, 1, 1, 1, -3, -3},
                         {3, 1, 1, 1, -3, -3},  {1, -3, -3, -3, -1, -1}, {1, -3, -3, -3, -1, -1}};
  return base * (1.0 / 18.0) + surd * (std::sqrt(10.0) / 180.0);
}

inline DenseMatrix pad_with_zeros(const DenseMatrix& a, std::size_t extra) {
  DenseMatrix p(a.rows() + extra, a.cols() + extra);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) p(i, j) = a(i, j);
  return p;
}

}  // namespace fixtures
