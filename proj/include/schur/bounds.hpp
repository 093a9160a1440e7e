#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "schur/almost_hadamard.hpp"
#include "schur/hadamard.hpp"
#include "schur/schur_norm.hpp"
#include "schur/spectrum.hpp"

namespace schur {

struct RnBounds {
  std::size_t n = 0;
  double lower = 0.0;
  double upper = 0.0;
  bool exact = false;
  std::string lower_source;  // "exact", "hadamard", "circulant", "search" or "construction"
  std::optional<SignMatrix> witness;  // a sign matrix whose Schur norm is >= lower
};

struct RnBoundsOptions {
  bool use_search = true;
  std::size_t restarts = 0;  // 0 means 10 n
  std::uint64_t seed = 20240611;
};

/// Interval containing r_n. Exact for n <= 7 and for constructible
/// Hadamard orders; otherwise the best of the circulant maximum, the
/// Hadamard construction and the Schur norm of the sign pattern of a
/// searched near-Hadamard orthogonal matrix, against sqrt(n).
inline RnBounds r_n_bounds(std::size_t n, const RnBoundsOptions& opt = {}) {
  require(n >= 1, ErrorKind::invalid_input, "n must be positive");
  RnBounds b;
  b.n = n;
  b.upper = std::sqrt(static_cast<double>(n));
  if (n <= kMaxEnumerationOrder) {
    const auto r = r_n(n);
    b.lower = b.upper = r.value;
    b.exact = true;
    b.lower_source = "exact";
    b.witness = std::get<SignMatrix>(r.maximizer);
    return b;
  }
  auto consider = [&](double v, const char* source, std::optional<SignMatrix> w) {
    if (v > b.lower + 1e-12) {
      b.lower = v;
      b.lower_source = source;
      b.witness = std::move(w);
    }
  };
  const std::size_t h = best_hadamard_order_at_most(n);
  consider(std::sqrt(static_cast<double>(h)), h == n ? "hadamard" : "construction",
           h == n ? std::optional<SignMatrix>(construct_hadamard(h).matrix) : std::nullopt);
  if (h == n) {
    b.exact = true;
    return b;
  }
  if (n <= kMaxCirculantOrder) {
    const auto rc = rc_n(n);
    const auto& spec = std::get<CirculantSpec>(rc.maximizer);
    consider(rc.value, "circulant", SignMatrix::from_dense(circulant(spec.top_row)));
  }
  if (opt.use_search) {
    const std::size_t restarts = opt.restarts ? opt.restarts : 10 * n;
    const auto found = max_one_norm_search(n, restarts, opt.seed);
    SchurNormOptions so;
    so.tol = 1e-9;
    const auto sn = schur_norm(found.sign_pattern.to_dense(), so);
    consider(sn.lower, "search", found.sign_pattern);
  }
  b.lower = std::min(b.lower, b.upper);
  return b;
}

}  // namespace schur
