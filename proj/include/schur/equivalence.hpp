#pragma once

// Equivalence of +-1 matrices under row/column negation, row/column
// permutation and transposition. Canonical forms are lexicographic minima
// (row-major, +1 before -1) over the whole group.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <vector>

#include "schur/error.hpp"
#include "schur/linalg.hpp"
#include "schur/matrix.hpp"
#include "schur/parallel.hpp"

namespace schur {

constexpr std::size_t kMaxCanonicalOrder = 8;
constexpr std::size_t kMaxEnumerationOrder = 7;

/// Number of equivalence classes of n x n sign matrices, n = 0..7.
constexpr std::array<std::size_t, 8> kKnownClassCounts = {0, 1, 2, 3, 10, 30, 242, 4386};

struct CanonicalForm {
  SignMatrix matrix;
  std::vector<double> fingerprint;  // singular values, descending, 10 decimals

  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
    return a.matrix == b.matrix;
  }
};

enum class GenerationMethod { brute_force, recursive_extension };

inline const char* to_string(GenerationMethod m) {
  return m == GenerationMethod::brute_force ? "brute-force" : "recursive-extension";
}

struct EquivalenceClassSet {
  std::size_t n = 0;
  std::vector<CanonicalForm> representatives;  // sorted lexicographically
  GenerationMethod generation_method = GenerationMethod::recursive_extension;
};

/// One element of the equivalence group: the result has entry
/// (i, j) = row_sign[i] * col_sign[j] * M'(row_perm[i], col_perm[j]) where
/// M' is M or its transpose.
struct EquivalenceTransform {
  bool transpose = false;
  std::vector<std::size_t> row_perm;
  std::vector<std::size_t> col_perm;
  std::vector<int> row_sign;
  std::vector<int> col_sign;

  static EquivalenceTransform random(std::size_t n, std::mt19937_64& rng) {
    EquivalenceTransform g;
    g.transpose = (rng() & 1u) != 0;
    g.row_perm.resize(n);
    g.col_perm.resize(n);
    std::iota(g.row_perm.begin(), g.row_perm.end(), 0);
    std::iota(g.col_perm.begin(), g.col_perm.end(), 0);
    std::shuffle(g.row_perm.begin(), g.row_perm.end(), rng);
    std::shuffle(g.col_perm.begin(), g.col_perm.end(), rng);
    for (std::size_t i = 0; i < n; ++i) {
      g.row_sign.push_back((rng() & 1u) ? -1 : 1);
      g.col_sign.push_back((rng() & 1u) ? -1 : 1);
    }
    return g;
  }

  DenseMatrix apply(const DenseMatrix& m) const {
    const DenseMatrix src = transpose ? m.transposed() : m;
    const std::size_t n = src.rows();
    require(row_perm.size() == n && col_perm.size() == n, ErrorKind::invalid_input,
            "transform size does not match the matrix");
    DenseMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out(i, j) = row_sign[i] * col_sign[j] * src(row_perm[i], col_perm[j]);
    return out;
  }

  SignMatrix apply(const SignMatrix& m) const { return SignMatrix::from_dense(apply(m.to_dense())); }
};

namespace detail {

using RowCodes = std::array<std::uint32_t, kMaxCanonicalOrder>;
using Cells = std::array<std::uint32_t, kMaxCanonicalOrder>;

// Branch-and-bound over row orders. Columns are tracked as an ordered
// partition; inside a cell the +1 entries of each newly placed row go
// first, so a row's best code depends only on its per-cell counts.
class Canonicalizer {
 public:
  explicit Canonicalizer(std::size_t n) : n_(n) { best_.fill(UINT32_MAX); }

  void add_orientation(const std::array<std::uint32_t, kMaxCanonicalOrder>& minus_bits) {
    for (std::size_t r0 = 0; r0 < n_; ++r0)
      for (std::size_t c0 = 0; c0 < n_; ++c0) start(minus_bits, r0, c0);
  }

  const RowCodes& best() const { return best_; }

 private:
  void start(const std::array<std::uint32_t, kMaxCanonicalOrder>& m, std::size_t r0, std::size_t c0) {
    const std::uint32_t all = (1u << n_) - 1u;
    // negate columns so row r0 is all +1, then rows so column c0 is all +1
    const std::uint32_t colflip = m[r0];
    for (std::size_t i = 0; i < n_; ++i) {
      std::uint32_t r = m[i] ^ colflip;
      if ((r >> c0) & 1u) r ^= all;
      rows_[i] = r;
    }
    if (best_[0] > 0) {
      best_[0] = 0;
      for (std::size_t t = 1; t < n_; ++t) best_[t] = UINT32_MAX;
    }
    Cells cells{};
    std::size_t ncells = 0;
    cells[ncells++] = 1u << c0;
    if (n_ > 1) cells[ncells++] = all & ~(1u << c0);
    search(1, cells, ncells, 1u << r0);
  }

  static std::uint32_t code_for(std::uint32_t row, const Cells& cells, std::size_t ncells) {
    std::uint32_t code = 0;
    for (std::size_t c = 0; c < ncells; ++c) {
      const int size = std::popcount(cells[c]);
      const int minus = std::popcount(row & cells[c]);
      code = (code << size) | ((1u << minus) - 1u);
    }
    return code;
  }

  void search(std::size_t depth, const Cells& cells, std::size_t ncells, std::uint32_t used) {
    if (depth == n_) return;
    std::array<std::uint32_t, kMaxCanonicalOrder> codes{};
    std::uint32_t lowest = UINT32_MAX;
    for (std::size_t r = 0; r < n_; ++r) {
      if ((used >> r) & 1u) continue;
      codes[r] = code_for(rows_[r], cells, ncells);
      lowest = std::min(lowest, codes[r]);
    }
    if (lowest > best_[depth]) return;
    if (lowest < best_[depth]) {
      best_[depth] = lowest;
      for (std::size_t t = depth + 1; t < n_; ++t) best_[t] = UINT32_MAX;
    }
    std::array<std::uint32_t, kMaxCanonicalOrder> tried{};
    std::size_t ntried = 0;
    for (std::size_t r = 0; r < n_; ++r) {
      if (((used >> r) & 1u) || codes[r] != lowest) continue;
      // identical rows give identical subtrees
      if (std::find(tried.begin(), tried.begin() + ntried, rows_[r]) != tried.begin() + ntried) continue;
      tried[ntried++] = rows_[r];
      Cells next{};
      std::size_t nnext = 0;
      for (std::size_t c = 0; c < ncells; ++c) {
        const std::uint32_t plus = cells[c] & ~rows_[r];
        const std::uint32_t minus = cells[c] & rows_[r];
        if (plus) next[nnext++] = plus;
        if (minus) next[nnext++] = minus;
      }
      search(depth + 1, next, nnext, used | (1u << r));
    }
  }

  std::size_t n_;
  std::array<std::uint32_t, kMaxCanonicalOrder> rows_{};
  RowCodes best_;
};

inline std::array<std::uint32_t, kMaxCanonicalOrder> minus_bits(const SignMatrix& m, bool transpose) {
  std::array<std::uint32_t, kMaxCanonicalOrder> bits{};
  const std::size_t n = m.n();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const int e = transpose ? m(j, i) : m(i, j);
      if (e < 0) bits[i] |= 1u << j;
    }
  return bits;
}

inline RowCodes canonical_codes(const SignMatrix& m) {
  Canonicalizer canon(m.n());
  canon.add_orientation(minus_bits(m, false));
  canon.add_orientation(minus_bits(m, true));
  return canon.best();
}

inline SignMatrix from_codes(const RowCodes& codes, std::size_t n) {
  std::vector<std::int8_t> d(n * n, 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if ((codes[i] >> (n - 1 - j)) & 1u) d[i * n + j] = -1;
  return SignMatrix(n, std::move(d));
}

// Characteristic polynomial of the integer Gram matrix M^T M (exact
// Faddeev-LeVerrier). Equal exactly when the singular values agree.
inline std::vector<std::int64_t> gram_charpoly(const SignMatrix& m) {
  const std::size_t n = m.n();
  std::vector<std::int64_t> g(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < n; ++k) s += m(k, i) * m(k, j);
      g[i * n + j] = s;
    }
  std::vector<std::int64_t> mk(n * n, 0), tmp(n * n);
  std::vector<std::int64_t> coeffs(n + 1, 0);
  coeffs[0] = 1;
  std::int64_t c = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = G * M_{k-1} + c_{k-1} I, with M_0 = 0
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::int64_t s = 0;
        for (std::size_t t = 0; t < n; ++t) s += g[i * n + t] * mk[t * n + j];
        tmp[i * n + j] = s + (i == j ? c : 0);
      }
    mk.swap(tmp);
    std::int64_t tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t t = 0; t < n; ++t) tr += g[i * n + t] * mk[t * n + i];
    c = -tr / static_cast<std::int64_t>(k);
    coeffs[k] = c;
  }
  return coeffs;
}

inline std::vector<double> fingerprint_of(const SignMatrix& m) {
  auto s = singular_values(m.to_dense());
  for (double& x : s) x = std::round(x * 1e10) / 1e10;
  return s;
}

inline CanonicalForm make_form(const RowCodes& codes, std::size_t n) {
  CanonicalForm f;
  f.matrix = from_codes(codes, n);
  f.fingerprint = fingerprint_of(f.matrix);
  return f;
}

}  // namespace detail

inline CanonicalForm canonical_form(const SignMatrix& m) {
  require(m.n() >= 1, ErrorKind::invalid_input, "empty sign matrix");
  if (m.n() > kMaxCanonicalOrder)
    fail(ErrorKind::unsupported_size,
         "canonical forms are supported for n <= " + std::to_string(kMaxCanonicalOrder));
  return detail::make_form(detail::canonical_codes(m), m.n());
}

inline bool are_equivalent(const SignMatrix& a, const SignMatrix& b) {
  require(a.n() == b.n(), ErrorKind::invalid_input, "matrices have different sizes");
  if (a.n() > kMaxCanonicalOrder)
    fail(ErrorKind::unsupported_size,
         "equivalence testing is supported for n <= " + std::to_string(kMaxCanonicalOrder));
  return detail::canonical_codes(a) == detail::canonical_codes(b);
}

/// All classes by canonicalizing every matrix whose first row and column
/// are +1. Feasible for n <= 5.
inline EquivalenceClassSet enumerate_classes_brute_force(std::size_t n) {
  require(n >= 1, ErrorKind::invalid_input, "n must be positive");
  if (n > 5) fail(ErrorKind::unsupported_size, "brute-force enumeration is supported for n <= 5");
  const std::size_t free_bits = (n - 1) * (n - 1);
  std::vector<detail::RowCodes> found;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_bits); ++mask) {
    std::vector<std::int8_t> d(n * n, 1);
    std::size_t b = 0;
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 1; j < n; ++j, ++b)
        if ((mask >> b) & 1u) d[i * n + j] = -1;
    found.push_back(detail::canonical_codes(SignMatrix(n, std::move(d))));
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  EquivalenceClassSet set;
  set.n = n;
  set.generation_method = GenerationMethod::brute_force;
  for (const auto& c : found) set.representatives.push_back(detail::make_form(c, n));
  return set;
}

/// Classes of order n+1 from one representative per class of order n:
/// every class has a member whose leading n x n block is such a
/// representative, so appending a row and column in all sign patterns
/// (first entries normalized to +1) reaches every class.
inline EquivalenceClassSet extend_classes(const EquivalenceClassSet& prev) {
  const std::size_t n = prev.n + 1;
  if (n > kMaxCanonicalOrder)
    fail(ErrorKind::unsupported_size, "extension beyond n = 8 is not supported");
  // bucket by the exact singular-value invariant, then by canonical form
  std::map<std::vector<std::int64_t>, std::vector<detail::RowCodes>> buckets;
  std::mutex buckets_mutex;

  const std::size_t free_bits = 2 * prev.n - 1;  // u_1..u_{n-2}, v_1..v_{n-2}, corner
  parallel_for(prev.representatives.size(), [&](std::size_t idx) {
    const SignMatrix& rep = prev.representatives[idx].matrix;
    std::vector<std::int8_t> d(n * n, 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = 0; j + 1 < n; ++j) d[i * n + j] = static_cast<std::int8_t>(rep(i, j));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_bits); ++mask) {
      std::size_t b = 0;
      for (std::size_t i = 1; i + 1 < n; ++i, ++b)
        d[i * n + (n - 1)] = ((mask >> b) & 1u) ? -1 : 1;
      for (std::size_t j = 1; j + 1 < n; ++j, ++b)
        d[(n - 1) * n + j] = ((mask >> b) & 1u) ? -1 : 1;
      d[n * n - 1] = ((mask >> b) & 1u) ? -1 : 1;
      const SignMatrix cand(n, d);
      auto key = detail::gram_charpoly(cand);
      const auto codes = detail::canonical_codes(cand);
      std::lock_guard lock(buckets_mutex);
      auto& bucket = buckets[std::move(key)];
      if (std::find(bucket.begin(), bucket.end(), codes) == bucket.end()) bucket.push_back(codes);
    }
  });

  std::vector<detail::RowCodes> all;
  for (auto& [key, codes] : buckets) all.insert(all.end(), codes.begin(), codes.end());
  std::sort(all.begin(), all.end());
  EquivalenceClassSet set;
  set.n = n;
  set.generation_method = GenerationMethod::recursive_extension;
  for (const auto& c : all) set.representatives.push_back(detail::make_form(c, n));
  return set;
}

namespace detail {
struct ClassMemo {
  std::mutex mutex;
  std::map<std::size_t, EquivalenceClassSet> sets;
};
inline ClassMemo& class_memo() {
  static ClassMemo memo;
  return memo;
}
}  // namespace detail

/// One canonical representative per class for 1 <= n <= 7, built by
/// recursive extension from n = 1. Results are memoized per process.
inline const EquivalenceClassSet& enumerate_classes(std::size_t n) {
  require(n >= 1, ErrorKind::invalid_input, "n must be positive");
  if (n > kMaxEnumerationOrder)
    fail(ErrorKind::unsupported_size,
         "class enumeration is supported for 1 <= n <= " + std::to_string(kMaxEnumerationOrder));
  auto& memo = detail::class_memo();
  std::lock_guard lock(memo.mutex);
  if (auto it = memo.sets.find(n); it != memo.sets.end()) return it->second;
  std::size_t start = n;
  while (start > 1 && !memo.sets.count(start - 1)) --start;
  for (std::size_t k = start; k <= n; ++k) {
    if (k == 1) {
      EquivalenceClassSet one;
      one.n = 1;
      one.representatives.push_back(detail::make_form(detail::RowCodes{}, 1));
      memo.sets[1] = std::move(one);
    } else {
      memo.sets[k] = extend_classes(memo.sets.at(k - 1));
    }
  }
  return memo.sets.at(n);
}

/// Seeds the process memo with an externally loaded set (e.g. a disk
/// cache). The set must have the known class count and sorted canonical
/// representatives; an existing entry is kept.
inline const EquivalenceClassSet& adopt_classes(EquivalenceClassSet set) {
  require(set.n >= 1 && set.n <= kMaxEnumerationOrder, ErrorKind::unsupported_size,
          "class sets are supported for 1 <= n <= " + std::to_string(kMaxEnumerationOrder));
  require(set.representatives.size() == kKnownClassCounts[set.n], ErrorKind::invalid_input,
          "class set for n = " + std::to_string(set.n) + " has " +
              std::to_string(set.representatives.size()) + " members, expected " +
              std::to_string(kKnownClassCounts[set.n]));
  auto& memo = detail::class_memo();
  std::lock_guard lock(memo.mutex);
  return memo.sets.emplace(set.n, std::move(set)).first->second;
}

}  // namespace schur
