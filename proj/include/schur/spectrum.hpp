#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "schur/closed_forms.hpp"
#include "schur/equivalence.hpp"
#include "schur/error.hpp"
#include "schur/linalg.hpp"
#include "schur/parallel.hpp"
#include "schur/schur_norm.hpp"

namespace schur {

constexpr double kDefaultDedupTol = 1e-7;
constexpr std::size_t kMaxCirculantOrder = 24;

struct SpectrumResult {
  std::size_t n = 0;
  std::vector<double> values;         // ascending
  std::vector<SignMatrix> attaining;  // attaining[i] has Schur norm values[i]
  std::vector<std::optional<std::string>> exact_forms;
  double dedup_tol = kDefaultDedupTol;
};

struct ExtremalResult {
  std::size_t n = 0;
  double value = 0.0;
  std::variant<SignMatrix, CirculantSpec> maximizer;
  std::optional<std::string> exact_form;
  std::size_t evaluated = 0;  // candidates examined
};

/// Schur norm of each class representative of order n (memoized, order of
/// enumerate_classes(n).representatives).
inline const std::vector<double>& class_schur_norms(std::size_t n) {
  const auto& classes = enumerate_classes(n);
  static std::mutex memo_mutex;
  static std::map<std::size_t, std::vector<double>> memo;
  {
    std::lock_guard lock(memo_mutex);
    if (auto it = memo.find(n); it != memo.end()) return it->second;
  }
  std::vector<double> norms(classes.representatives.size());
  parallel_for(norms.size(), [&](std::size_t i) {
    SchurNormOptions opt;
    opt.tol = 1e-9;
    norms[i] = schur_norm(classes.representatives[i].matrix.to_dense(), opt).value;
  });
  std::lock_guard lock(memo_mutex);
  return memo.emplace(n, std::move(norms)).first->second;
}

/// The set of Schur norms of n x n sign matrices, values closer than
/// dedup_tol merged. Each value comes with its lexicographically smallest
/// attaining class representative.
inline SpectrumResult schur_spectrum(std::size_t n, double dedup_tol = kDefaultDedupTol) {
  require(n >= 1, ErrorKind::invalid_input, "n must be positive");
  require(dedup_tol >= 0.0 && std::isfinite(dedup_tol), ErrorKind::invalid_input,
          "dedup tolerance must be a nonnegative number");
  if (n > kMaxEnumerationOrder)
    fail(ErrorKind::unsupported_size,
         "Schur spectra are supported for 1 <= n <= " + std::to_string(kMaxEnumerationOrder));
  const auto& reps = enumerate_classes(n).representatives;
  const auto& norms = class_schur_norms(n);

  std::vector<std::size_t> order(norms.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return norms[a] < norms[b]; });

  SpectrumResult out;
  out.n = n;
  out.dedup_tol = dedup_tol;
  double last = -1.0;
  std::size_t best_rep = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t idx = order[k];
    if (out.values.empty() || norms[idx] - last > dedup_tol) {
      if (!out.values.empty()) out.attaining.push_back(reps[best_rep].matrix);
      out.values.push_back(norms[idx]);
      best_rep = idx;
    } else {
      best_rep = std::min(best_rep, idx);  // representatives are sorted
    }
    last = norms[idx];
  }
  if (!out.values.empty()) out.attaining.push_back(reps[best_rep].matrix);
  for (double v : out.values) out.exact_forms.push_back(match_closed_form(v));
  return out;
}

/// Largest Schur norm over n x n sign matrices, exact for n <= 7.
inline ExtremalResult r_n(std::size_t n) {
  require(n >= 1, ErrorKind::invalid_input, "n must be positive");
  if (n > kMaxEnumerationOrder)
    fail(ErrorKind::unsupported_size,
         "r_n is computed exactly only for 1 <= n <= " + std::to_string(kMaxEnumerationOrder) +
             "; use r_n_bounds for larger n");
  const auto& reps = enumerate_classes(n).representatives;
  const auto& norms = class_schur_norms(n);
  std::size_t best = 0;
  for (std::size_t i = 1; i < norms.size(); ++i)
    if (norms[i] > norms[best] + 1e-9) best = i;
  ExtremalResult r;
  r.n = n;
  r.value = norms[best];
  r.maximizer = reps[best].matrix;
  r.exact_form = match_closed_form(r.value);
  r.evaluated = norms.size();
  return r;
}

/// Upper bound on r_n: the exact value for n <= 7, else sqrt(n).
inline double r_n_upper_bound(std::size_t n) {
  require(n >= 1, ErrorKind::invalid_input, "n must be positive");
  if (n <= kMaxEnumerationOrder) return r_n(n).value;
  return std::sqrt(static_cast<double>(n));
}

namespace detail {

inline std::uint32_t min_rotation(std::uint32_t x, std::size_t n) {
  const std::uint32_t mask = n == 32 ? ~0u : (1u << n) - 1u;
  std::uint32_t best = x;
  for (std::size_t r = 1; r < n; ++r) {
    x = ((x << 1) | (x >> (n - 1))) & mask;
    best = std::min(best, x);
  }
  return best;
}

inline std::uint32_t reverse_bits(std::uint32_t x, std::size_t n) {
  std::uint32_t r = 0;
  for (std::size_t i = 0; i < n; ++i) r |= ((x >> i) & 1u) << (n - 1 - i);
  return r;
}

// Binary necklaces of length n (minimal rotations, most significant bit
// first) that are also minimal under reversal and complement.
inline std::vector<std::uint32_t> circulant_orbit_representatives(std::size_t n) {
  std::vector<std::uint32_t> out;
  std::vector<int> a(n + 1, 0);
  const std::uint32_t mask = (1u << n) - 1u;
  // Fredricksen-Kessler-Maiorana generation
  auto visit = [&] {
    std::uint32_t x = 0;
    for (std::size_t i = 1; i <= n; ++i) x = (x << 1) | static_cast<std::uint32_t>(a[i]);
    const std::uint32_t rev = reverse_bits(x, n);
    if (min_rotation(rev, n) < x) return;
    if (min_rotation(~x & mask, n) < x) return;
    if (min_rotation(~rev & mask, n) < x) return;
    out.push_back(x);
  };
  auto gen = [&](auto&& self, std::size_t t, std::size_t p) -> void {
    if (t > n) {
      if (n % p == 0) visit();
      return;
    }
    a[t] = a[t - p];
    self(self, t + 1, p);
    if (a[t - p] == 0) {
      a[t] = 1;
      self(self, t + 1, t);
    }
  };
  gen(gen, 1, 1);
  return out;
}

}  // namespace detail

/// Largest Schur norm over n x n circulant sign matrices. Top rows are
/// enumerated up to rotation, reversal and negation, which preserve the norm.
inline ExtremalResult rc_n(std::size_t n) {
  require(n >= 1, ErrorKind::invalid_input, "n must be positive");
  if (n > kMaxCirculantOrder)
    fail(ErrorKind::unsupported_size,
         "rC_n is supported for 1 <= n <= " + std::to_string(kMaxCirculantOrder));
  const auto rows = detail::circulant_orbit_representatives(n);
  const double two_pi = 2.0 * std::acos(-1.0);
  std::vector<double> cs(n), sn(n);
  for (std::size_t k = 0; k < n; ++k) {
    cs[k] = std::cos(two_pi * static_cast<double>(k) / static_cast<double>(n));
    sn[k] = std::sin(two_pi * static_cast<double>(k) / static_cast<double>(n));
  }
  auto evaluate = [&](std::uint32_t x) {
    // entry j of the top row is -1 when bit (n-1-j) is set
    double total = 0.0;
    for (std::size_t k = 0; k <= n / 2; ++k) {
      double re = 0.0, im = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double c = ((x >> (n - 1 - j)) & 1u) ? -1.0 : 1.0;
        const std::size_t idx = (j * k) % n;
        re += c * cs[idx];
        im += c * sn[idx];
      }
      const double mag = std::hypot(re, im);
      total += (k == 0 || 2 * k == n) ? mag : 2.0 * mag;
    }
    return total / static_cast<double>(n);
  };

  const std::size_t chunk = 4096;
  const std::size_t chunks = (rows.size() + chunk - 1) / chunk;
  std::vector<std::pair<double, std::uint32_t>> best(chunks, {-1.0, 0});
  parallel_for(chunks, [&](std::size_t c) {
    for (std::size_t i = c * chunk; i < std::min(rows.size(), (c + 1) * chunk); ++i) {
      const double v = evaluate(rows[i]);
      if (v > best[c].first + 1e-12) best[c] = {v, rows[i]};
    }
  });
  auto winner = best.front();
  for (const auto& b : best)
    if (b.first > winner.first + 1e-12) winner = b;

  CirculantSpec spec;
  for (std::size_t j = 0; j < n; ++j) spec.top_row.push_back(((winner.second >> (n - 1 - j)) & 1u) ? -1.0 : 1.0);
  ExtremalResult r;
  r.n = n;
  r.value = circulant_schur_norm(spec);
  r.maximizer = spec;
  r.exact_form = match_closed_form(r.value);
  r.evaluated = rows.size();
  return r;
}

struct CnResult {
  std::size_t n = 0;
  double value = 0.0;
  double verification_residual = 0.0;  // | ||F o conj(F)/sqrt(n)|| - sqrt(n) |
};

/// The complex analogue c_n = sqrt(n), verified on the Fourier matrix:
/// F o conj(F) / sqrt(n) has every entry 1/sqrt(n) and norm sqrt(n).
inline CnResult c_n(std::size_t n) {
  require(n >= 1, ErrorKind::invalid_input, "n must be positive");
  const auto f = ComplexMatrix::fourier(n);
  const auto b = schur_product(f, f.conj().scaled(1.0 / std::sqrt(static_cast<double>(n))));
  double norm;
  if (n <= 64) {
    norm = operator_norm(b);
  } else {
    // power iteration on B^* B
    std::vector<std::complex<double>> v(n, 1.0 / std::sqrt(static_cast<double>(n))), w(n), u(n);
    norm = 0.0;
    for (int it = 0; it < 50; ++it) {
      for (std::size_t i = 0; i < n; ++i) {
        std::complex<double> s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += b(i, j) * v[j];
        w[i] = s;
      }
      double nw = 0.0;
      for (const auto& z : w) nw += std::norm(z);
      norm = std::sqrt(nw);
      for (std::size_t j = 0; j < n; ++j) {
        std::complex<double> s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += std::conj(b(i, j)) * w[i];
        u[j] = s;
      }
      double nu = 0.0;
      for (const auto& z : u) nu += std::norm(z);
      nu = std::sqrt(nu);
      if (nu == 0.0) break;
      for (std::size_t j = 0; j < n; ++j) v[j] = u[j] / nu;
    }
  }
  const double root = std::sqrt(static_cast<double>(n));
  return {n, root, std::abs(norm - root)};
}

}  // namespace schur
