#pragma once

// Dense primal-dual interior-point solver for small semidefinite programs
// in standard form:
//
//   (P)  minimize <C, X>  s.t. <A_i, X> = b_i,  X in K
//   (D)  maximize b^T y   s.t. sum_i y_i A_i + S = C,  S in K
//
// K is a product of PSD blocks and nonnegative-orthant blocks. Search
// directions are HKM with a Mehrotra predictor-corrector; iterates start
// infeasible at X = S = tau*I.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "schur/error.hpp"
#include "schur/linalg.hpp"
#include "schur/matrix.hpp"

namespace schur::sdp {

enum class ConeKind { psd, nonnegative };

struct ConeBlock {
  ConeKind kind = ConeKind::psd;
  std::size_t dim = 0;
};

/// Symmetric block-diagonal matrix given by its upper-triangle entries.
/// An entry (r, c) with r != c stands for both (r, c) and (c, r).
struct SparseEntry {
  std::size_t block = 0;
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;
};

class SparseSymMatrix {
 public:
  SparseSymMatrix& add(std::size_t block, std::size_t row, std::size_t col, double value) {
    if (row > col) std::swap(row, col);
    if (value != 0.0) entries_.push_back({block, row, col, value});
    return *this;
  }
  const std::vector<SparseEntry>& entries() const noexcept { return entries_; }

 private:
  std::vector<SparseEntry> entries_;
};

/// Block-diagonal variable. PSD blocks are dim x dim; nonnegative blocks
/// are stored as a dim x 1 column holding the diagonal.
class BlockMatrix {
 public:
  BlockMatrix() = default;
  explicit BlockMatrix(const std::vector<ConeBlock>& blocks) {
    for (const auto& b : blocks)
      blocks_.emplace_back(b.dim, b.kind == ConeKind::psd ? b.dim : 1);
  }

  static BlockMatrix scaled_identity(const std::vector<ConeBlock>& blocks, double tau) {
    BlockMatrix m(blocks);
    for (std::size_t k = 0; k < blocks.size(); ++k)
      for (std::size_t i = 0; i < blocks[k].dim; ++i)
        m.entry(blocks[k], k, i, i) = tau;
    return m;
  }

  std::size_t block_count() const noexcept { return blocks_.size(); }
  DenseMatrix& block(std::size_t k) { return blocks_[k]; }
  const DenseMatrix& block(std::size_t k) const { return blocks_[k]; }

  double& entry(const ConeBlock& cone, std::size_t k, std::size_t i, std::size_t j) {
    return cone.kind == ConeKind::psd ? blocks_[k](i, j) : blocks_[k](i, 0);
  }

  BlockMatrix& axpy(double a, const BlockMatrix& x) {
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
      auto dst = blocks_[k].values();
      auto src = x.blocks_[k].values();
      for (std::size_t t = 0; t < dst.size(); ++t) dst[t] += a * src[t];
    }
    return *this;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& b : blocks_) m = std::max(m, schur::max_abs(b));
    return m;
  }

  /// Expands to one dense block-diagonal matrix.
  DenseMatrix to_dense(const std::vector<ConeBlock>& cones) const {
    std::size_t total = 0;
    for (const auto& c : cones) total += c.dim;
    DenseMatrix d(total, total);
    std::size_t off = 0;
    for (std::size_t k = 0; k < cones.size(); ++k) {
      for (std::size_t i = 0; i < cones[k].dim; ++i) {
        if (cones[k].kind == ConeKind::nonnegative) {
          d(off + i, off + i) = blocks_[k](i, 0);
        } else {
          for (std::size_t j = 0; j < cones[k].dim; ++j) d(off + i, off + j) = blocks_[k](i, j);
        }
      }
      off += cones[k].dim;
    }
    return d;
  }

 private:
  std::vector<DenseMatrix> blocks_;
};

struct SdpProblem {
  std::vector<ConeBlock> blocks;
  SparseSymMatrix objective;
  std::vector<SparseSymMatrix> constraints;
  std::vector<double> rhs;

  std::size_t constraint_count() const noexcept { return constraints.size(); }

  /// Throws invalid-input if the data does not conform to `blocks`.
  void validate() const {
    require(!blocks.empty(), ErrorKind::invalid_input, "SDP has no cone blocks");
    for (const auto& b : blocks)
      require(b.dim > 0, ErrorKind::invalid_input, "SDP block of dimension zero");
    require(constraints.size() == rhs.size(), ErrorKind::invalid_input,
            "constraint count does not match right-hand side length");
    auto check = [&](const SparseSymMatrix& m) {
      for (const auto& e : m.entries()) {
        require(e.block < blocks.size(), ErrorKind::invalid_input, "entry block out of range");
        const auto& b = blocks[e.block];
        require(e.col < b.dim, ErrorKind::invalid_input, "entry index out of range");
        require(b.kind == ConeKind::psd || e.row == e.col, ErrorKind::invalid_input,
                "off-diagonal entry in a nonnegative-orthant block");
        require(std::isfinite(e.value), ErrorKind::invalid_input, "non-finite SDP data");
      }
    };
    check(objective);
    for (const auto& a : constraints) check(a);
    for (double b : rhs) require(std::isfinite(b), ErrorKind::invalid_input, "non-finite rhs");
  }
};

enum class Status { optimal, infeasible_detected, max_iterations };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible_detected: return "infeasible-detected";
    case Status::max_iterations: return "max-iterations";
  }
  return "unknown";
}

struct IterateRecord {
  double primal_value;
  double dual_value;
  double primal_infeasibility;  // max_i |<A_i, X> - b_i|
  double dual_infeasibility;    // max |C - S - sum y_i A_i|
  double mu;
};

struct SdpSettings {
  double gap_tol = 1e-9;
  double feas_tol = 1e-9;
  int max_iter = 200;
};

struct SdpSolution {
  BlockMatrix x;
  std::vector<double> y;
  BlockMatrix s;
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  Status status = Status::max_iterations;
  int iterations = 0;
  std::vector<IterateRecord> history;
};

namespace detail {

// Constraint data regrouped per block with both symmetric halves listed.
struct FullEntry {
  std::size_t row, col;
  double value;
};

struct Expanded {
  // per constraint, per block
  std::vector<std::vector<std::vector<FullEntry>>> a;
  BlockMatrix c;
};

inline Expanded expand(const SdpProblem& p) {
  Expanded e;
  e.a.assign(p.constraints.size(), std::vector<std::vector<FullEntry>>(p.blocks.size()));
  for (std::size_t i = 0; i < p.constraints.size(); ++i)
    for (const auto& en : p.constraints[i].entries()) {
      auto& list = e.a[i][en.block];
      list.push_back({en.row, en.col, en.value});
      if (en.row != en.col) list.push_back({en.col, en.row, en.value});
    }
  e.c = BlockMatrix(p.blocks);
  for (const auto& en : p.objective.entries()) {
    const auto& cone = p.blocks[en.block];
    e.c.entry(cone, en.block, en.row, en.col) += en.value;
    if (en.row != en.col && cone.kind == ConeKind::psd)
      e.c.block(en.block)(en.col, en.row) += en.value;
  }
  return e;
}

// <A_i, Z> for a dense block matrix Z (any Z; only the symmetric part counts).
inline double apply_constraint(const std::vector<ConeBlock>& cones,
                               const std::vector<std::vector<FullEntry>>& ai,
                               const BlockMatrix& z) {
  double s = 0.0;
  for (std::size_t k = 0; k < cones.size(); ++k) {
    const auto& blk = z.block(k);
    if (cones[k].kind == ConeKind::nonnegative) {
      for (const auto& e : ai[k]) s += e.value * blk(e.row, 0);
    } else {
      for (const auto& e : ai[k]) s += e.value * blk(e.row, e.col);
    }
  }
  return s;
}

inline void add_constraint(const std::vector<ConeBlock>& cones,
                           const std::vector<std::vector<FullEntry>>& ai, double coef,
                           BlockMatrix& z) {
  for (std::size_t k = 0; k < cones.size(); ++k) {
    auto& blk = z.block(k);
    if (cones[k].kind == ConeKind::nonnegative) {
      for (const auto& e : ai[k]) blk(e.row, 0) += coef * e.value;
    } else {
      for (const auto& e : ai[k]) blk(e.row, e.col) += coef * e.value;
    }
  }
}

inline double block_inner(const std::vector<ConeBlock>& cones, const BlockMatrix& a,
                          const BlockMatrix& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < cones.size(); ++k) s += inner(a.block(k), b.block(k));
  return s;
}

// Largest alpha with X + alpha*dX in the cone (infinity if unbounded).
inline double max_step(const std::vector<ConeBlock>& cones, const BlockMatrix& x,
                       const std::vector<DenseMatrix>& x_chol_inv, const BlockMatrix& dx) {
  double alpha = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < cones.size(); ++k) {
    if (cones[k].kind == ConeKind::nonnegative) {
      for (std::size_t i = 0; i < cones[k].dim; ++i) {
        const double d = dx.block(k)(i, 0);
        if (d < 0.0) alpha = std::min(alpha, -x.block(k)(i, 0) / d);
      }
    } else {
      const DenseMatrix& li = x_chol_inv[k];
      DenseMatrix t = li * dx.block(k) * li.transposed();
      for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = i + 1; j < t.cols(); ++j) t(i, j) = t(j, i) = 0.5 * (t(i, j) + t(j, i));
      const double lmin = min_eigenvalue(t);
      if (lmin < 0.0) alpha = std::min(alpha, -1.0 / lmin);
    }
  }
  return alpha;
}

}  // namespace detail

/// Max |<A_i, X> - b_i|.
inline double primal_residual(const SdpProblem& p, const BlockMatrix& x) {
  const auto e = detail::expand(p);
  double r = 0.0;
  for (std::size_t i = 0; i < p.constraints.size(); ++i)
    r = std::max(r, std::abs(detail::apply_constraint(p.blocks, e.a[i], x) - p.rhs[i]));
  return r;
}

/// Max entry of |C - S - sum_i y_i A_i|.
inline double dual_residual(const SdpProblem& p, const std::vector<double>& y,
                            const BlockMatrix& s) {
  const auto e = detail::expand(p);
  BlockMatrix rd = e.c;
  rd.axpy(-1.0, s);
  for (std::size_t i = 0; i < y.size(); ++i) detail::add_constraint(p.blocks, e.a[i], -y[i], rd);
  return rd.max_abs();
}

inline SdpSolution solve(const SdpProblem& p, const SdpSettings& settings = {}) {
  p.validate();
  const auto& cones = p.blocks;
  const std::size_t m = p.constraints.size();
  const std::size_t nb = cones.size();
  const auto data = detail::expand(p);

  double nu = 0.0;  // barrier parameter normalizer
  for (const auto& c : cones) nu += static_cast<double>(c.dim);

  double cnorm = 0.0;
  for (std::size_t k = 0; k < nb; ++k) cnorm += std::pow(frobenius_norm(data.c.block(k)), 2);
  cnorm = std::sqrt(cnorm);
  double bmax = 0.0;
  for (double b : p.rhs) bmax = std::max(bmax, std::abs(b));
  const double tau = 1.0 + std::max(bmax, cnorm);

  SdpSolution sol;
  sol.x = BlockMatrix::scaled_identity(cones, tau);
  sol.s = BlockMatrix::scaled_identity(cones, tau);
  sol.y.assign(m, 0.0);
  const double divergence_bound = 1e12 * tau;

  std::vector<DenseMatrix> s_inv(nb), x_chol_inv(nb), s_chol_inv(nb);
  DenseMatrix schur(m, m);
  std::vector<double> rp(m);

  // threshold for switching from pairwise-sparse to dense Schur complement rows
  std::vector<std::vector<bool>> dense_path(m, std::vector<bool>(nb, false));
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < nb; ++k)
      dense_path[j][k] = cones[k].kind == ConeKind::psd && data.a[j][k].size() > 2 * cones[k].dim;

  auto direction = [&](const BlockMatrix& rd, const BlockMatrix* kmat, double sigma_mu,
                       const DenseMatrix& lchol, BlockMatrix& dx, std::vector<double>& dy,
                       BlockMatrix& ds) {
    // T = K S^-1 - X Rd S^-1, where K = sigma*mu*I (- dXa dSa in the corrector)
    BlockMatrix t(cones);
    for (std::size_t k = 0; k < nb; ++k) {
      if (cones[k].kind == ConeKind::nonnegative) {
        for (std::size_t i = 0; i < cones[k].dim; ++i) {
          const double xi = sol.x.block(k)(i, 0), si = sol.s.block(k)(i, 0);
          double kk = sigma_mu;
          if (kmat) kk += kmat->block(k)(i, 0);
          t.block(k)(i, 0) = (kk - xi * rd.block(k)(i, 0)) / si;
        }
      } else {
        DenseMatrix km = DenseMatrix::identity(cones[k].dim) * sigma_mu;
        if (kmat) km += kmat->block(k);
        km -= sol.x.block(k) * rd.block(k);
        t.block(k) = km * s_inv[k];
      }
    }
    dy.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      dy[i] = p.rhs[i] - detail::apply_constraint(cones, data.a[i], t);
    cholesky_solve(lchol, dy);

    ds = rd;
    for (std::size_t i = 0; i < m; ++i) detail::add_constraint(cones, data.a[i], -dy[i], ds);

    dx = BlockMatrix(cones);
    for (std::size_t k = 0; k < nb; ++k) {
      if (cones[k].kind == ConeKind::nonnegative) {
        for (std::size_t i = 0; i < cones[k].dim; ++i) {
          const double xi = sol.x.block(k)(i, 0), si = sol.s.block(k)(i, 0);
          double kk = sigma_mu;
          if (kmat) kk += kmat->block(k)(i, 0);
          dx.block(k)(i, 0) = (kk - xi * ds.block(k)(i, 0)) / si - xi;
        }
      } else {
        DenseMatrix km = DenseMatrix::identity(cones[k].dim) * sigma_mu;
        if (kmat) km += kmat->block(k);
        km -= sol.x.block(k) * ds.block(k);
        DenseMatrix d = km * s_inv[k];
        d -= sol.x.block(k);
        auto& out = dx.block(k);
        for (std::size_t i = 0; i < d.rows(); ++i)
          for (std::size_t j = 0; j < d.cols(); ++j) out(i, j) = 0.5 * (d(i, j) + d(j, i));
      }
    }
  };

  constexpr double kStepFraction = 0.95;

  for (int iter = 0;; ++iter) {
    // residuals and objectives
    BlockMatrix rd = data.c;
    rd.axpy(-1.0, sol.s);
    for (std::size_t i = 0; i < m; ++i) detail::add_constraint(cones, data.a[i], -sol.y[i], rd);
    double pinf = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      rp[i] = p.rhs[i] - detail::apply_constraint(cones, data.a[i], sol.x);
      pinf = std::max(pinf, std::abs(rp[i]));
    }
    const double dinf = rd.max_abs();
    sol.primal_value = detail::block_inner(cones, data.c, sol.x);
    sol.dual_value = 0.0;
    for (std::size_t i = 0; i < m; ++i) sol.dual_value += p.rhs[i] * sol.y[i];
    const double mu = detail::block_inner(cones, sol.x, sol.s) / nu;
    sol.gap = std::abs(sol.primal_value - sol.dual_value) / (1.0 + std::abs(sol.primal_value));
    sol.primal_infeasibility = pinf;
    sol.dual_infeasibility = dinf;
    sol.iterations = iter;
    sol.history.push_back({sol.primal_value, sol.dual_value, pinf, dinf, mu});

    if (pinf <= settings.feas_tol && dinf <= settings.feas_tol && sol.gap <= settings.gap_tol) {
      sol.status = Status::optimal;
      return sol;
    }
    if (sol.x.max_abs() > divergence_bound || sol.s.max_abs() > divergence_bound) {
      sol.status = Status::infeasible_detected;
      return sol;
    }
    if (iter >= settings.max_iter) {
      sol.status = Status::max_iterations;
      return sol;
    }

    // factorizations
    bool factor_ok = true;
    for (std::size_t k = 0; k < nb && factor_ok; ++k) {
      if (cones[k].kind == ConeKind::nonnegative) continue;
      auto ls = cholesky(sol.s.block(k));
      auto lx = cholesky(sol.x.block(k));
      if (!ls || !lx) {
        factor_ok = false;
        break;
      }
      s_chol_inv[k] = lower_inverse(*ls);
      s_inv[k] = spd_inverse(*ls);
      x_chol_inv[k] = lower_inverse(*lx);
    }
    if (!factor_ok) {
      sol.status = Status::max_iterations;
      return sol;
    }

    // Schur complement M_ij = <A_i, X A_j S^-1>
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<DenseMatrix> g(nb);
      for (std::size_t k = 0; k < nb; ++k)
        if (dense_path[j][k]) {
          DenseMatrix aj(cones[k].dim, cones[k].dim);
          for (const auto& e : data.a[j][k]) aj(e.row, e.col) += e.value;
          g[k] = sol.x.block(k) * aj * s_inv[k];
        }
      for (std::size_t i = 0; i <= j; ++i) {
        double v = 0.0;
        for (std::size_t k = 0; k < nb; ++k) {
          const auto& ai = data.a[i][k];
          const auto& aj = data.a[j][k];
          if (ai.empty() || aj.empty()) continue;
          if (cones[k].kind == ConeKind::nonnegative) {
            const auto& xb = sol.x.block(k);
            const auto& sb = sol.s.block(k);
            for (const auto& ea : ai)
              for (const auto& eb : aj)
                if (ea.row == eb.row) v += ea.value * eb.value * xb(ea.row, 0) / sb(ea.row, 0);
          } else if (dense_path[j][k]) {
            for (const auto& ea : ai) v += ea.value * g[k](ea.col, ea.row);
          } else {
            const auto& xb = sol.x.block(k);
            const auto& si = s_inv[k];
            for (const auto& ea : ai)
              for (const auto& eb : aj) v += ea.value * eb.value * xb(ea.col, eb.row) * si(eb.col, ea.row);
          }
        }
        schur(i, j) = schur(j, i) = v;
      }
    }
    std::optional<DenseMatrix> lchol = cholesky(schur);
    double maxdiag = 0.0;
    for (std::size_t i = 0; i < m; ++i) maxdiag = std::max(maxdiag, schur(i, i));
    for (double shift = 1e-15; !lchol && shift < 1e-6; shift *= 10.0) {
      DenseMatrix reg = schur;
      for (std::size_t i = 0; i < m; ++i) reg(i, i) += shift * maxdiag;
      lchol = cholesky(reg);
    }
    if (!lchol) {
      sol.status = Status::max_iterations;
      return sol;
    }

    // predictor
    BlockMatrix dxa, dsa;
    std::vector<double> dya;
    direction(rd, nullptr, 0.0, *lchol, dxa, dya, dsa);
    const double ap = std::min(1.0, kStepFraction * detail::max_step(cones, sol.x, x_chol_inv, dxa));
    const double ad = std::min(1.0, kStepFraction * detail::max_step(cones, sol.s, s_chol_inv, dsa));
    BlockMatrix xa = sol.x, sa = sol.s;
    xa.axpy(ap, dxa);
    sa.axpy(ad, dsa);
    const double mu_aff = detail::block_inner(cones, xa, sa) / nu;
    const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

    // corrector: K = sigma*mu*I - dXa dSa
    BlockMatrix kmat(cones);
    for (std::size_t k = 0; k < nb; ++k) {
      if (cones[k].kind == ConeKind::nonnegative) {
        for (std::size_t i = 0; i < cones[k].dim; ++i)
          kmat.block(k)(i, 0) = -dxa.block(k)(i, 0) * dsa.block(k)(i, 0);
      } else {
        kmat.block(k) = dxa.block(k) * dsa.block(k) * -1.0;
      }
    }
    BlockMatrix dx, ds;
    std::vector<double> dy;
    direction(rd, &kmat, sigma * mu, *lchol, dx, dy, ds);
    const double step_p = std::min(1.0, kStepFraction * detail::max_step(cones, sol.x, x_chol_inv, dx));
    const double step_d = std::min(1.0, kStepFraction * detail::max_step(cones, sol.s, s_chol_inv, ds));

    sol.x.axpy(step_p, dx);
    sol.s.axpy(step_d, ds);
    for (std::size_t i = 0; i < m; ++i) sol.y[i] += step_d * dy[i];
  }
}

}  // namespace schur::sdp
