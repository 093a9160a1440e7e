#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "schur/error.hpp"
#include "schur/matrix.hpp"

namespace schur {

enum class HadamardConstruction { sylvester, paley_i, paley_ii, kronecker_composite };

inline const char* to_string(HadamardConstruction c) {
  switch (c) {
    case HadamardConstruction::sylvester: return "sylvester";
    case HadamardConstruction::paley_i: return "paley-I";
    case HadamardConstruction::paley_ii: return "paley-II";
    case HadamardConstruction::kronecker_composite: return "kronecker-composite";
  }
  return "unknown";
}

struct HadamardMatrix {
  std::size_t n = 0;
  SignMatrix matrix;
  HadamardConstruction construction = HadamardConstruction::sylvester;
};

constexpr std::size_t kDefaultHadamardLimit = 1024;

/// True iff M^T M = n I, checked in integer arithmetic.
inline bool is_hadamard(const SignMatrix& m) {
  const std::size_t n = m.n();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < n; ++i) s += m(i, a) * m(i, b);
      if (s != (a == b ? static_cast<std::int64_t>(n) : 0)) return false;
    }
  return true;
}

inline bool is_prime(std::uint64_t q) {
  if (q < 2) return false;
  for (std::uint64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

/// Order-2^k matrix, the k-fold Kronecker power of [[1,1],[1,-1]].
inline HadamardMatrix sylvester(unsigned k) {
  if ((std::size_t{1} << std::min(k, 20u)) > kDefaultHadamardLimit)
    fail(ErrorKind::unsupported_size,
         "Sylvester construction is limited to order " + std::to_string(kDefaultHadamardLimit));
  SignMatrix h(1);
  const SignMatrix h2{{1, 1}, {1, -1}};
  for (unsigned i = 0; i < k; ++i) h = kronecker(h, h2);
  return {h.n(), h, HadamardConstruction::sylvester};
}

namespace detail {

inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1u) r = r * b % m;
    b = b * b % m;
    e >>= 1u;
  }
  return r;
}

// Quadratic character chi(x) mod prime q by Euler's criterion.
inline int legendre(std::uint64_t x, std::uint64_t q) {
  x %= q;
  if (x == 0) return 0;
  return pow_mod(x, (q - 1) / 2, q) == 1 ? 1 : -1;
}

}  // namespace detail

/// Paley construction for an odd prime q: order q+1 when q = 3 mod 4,
/// order 2(q+1) when q = 1 mod 4.
inline HadamardMatrix paley(std::uint64_t q) {
  require(q > 2 && is_prime(q), ErrorKind::invalid_input,
          "Paley construction needs an odd prime, got " + std::to_string(q));
  const std::size_t order = q % 4 == 3 ? q + 1 : 2 * (q + 1);
  if (order > kDefaultHadamardLimit)
    fail(ErrorKind::unsupported_size,
         "Paley construction is limited to order " + std::to_string(kDefaultHadamardLimit));
  // Jacobsthal matrix Q(i,j) = chi(j - i), bordered to size q+1
  const std::size_t m = q + 1;
  std::vector<int> c(m * m, 0);
  for (std::size_t j = 1; j < m; ++j) {
    c[j] = 1;
    c[j * m] = q % 4 == 3 ? -1 : 1;
  }
  for (std::size_t i = 1; i < m; ++i)
    for (std::size_t j = 1; j < m; ++j)
      c[i * m + j] = detail::legendre((j + q - i) % q, q);

  std::vector<std::int8_t> d;
  if (q % 4 == 3) {
    d.resize(m * m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) d[i * m + j] = static_cast<std::int8_t>(c[i * m + j] + (i == j ? 1 : 0));
    return {m, SignMatrix(m, std::move(d)), HadamardConstruction::paley_i};
  }
  // C (x) [[1,1],[1,-1]] + I (x) [[1,-1],[-1,-1]]
  const std::size_t n = 2 * m;
  d.resize(n * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
          int v;
          if (i == j)
            v = (a == 0 && b == 0) ? 1 : -1;
          else
            v = c[i * m + j] * ((a == 1 && b == 1) ? -1 : 1);
          d[(2 * i + a) * n + 2 * j + b] = static_cast<std::int8_t>(v);
        }
  return {n, SignMatrix(n, std::move(d)), HadamardConstruction::paley_ii};
}

/// How an order is obtained: a base construction (sylvester k = 1 for
/// order 2, or a Paley prime) or the product of two smaller orders.
struct HadamardRecipe {
  HadamardConstruction construction;
  std::uint64_t parameter = 0;  // Paley prime, or Sylvester exponent
  std::size_t left = 0, right = 0;

  std::string describe() const {
    switch (construction) {
      case HadamardConstruction::sylvester: return "sylvester k=" + std::to_string(parameter);
      case HadamardConstruction::paley_i: return "paley-I q=" + std::to_string(parameter);
      case HadamardConstruction::paley_ii: return "paley-II q=" + std::to_string(parameter);
      case HadamardConstruction::kronecker_composite:
        return "kronecker " + std::to_string(left) + " x " + std::to_string(right);
    }
    return "";
  }
};

/// Orders up to limit reachable from {1, 2}, Sylvester and Paley by
/// Kronecker products, each with one recipe.
inline std::map<std::size_t, HadamardRecipe> hadamard_registry(std::size_t limit = kDefaultHadamardLimit) {
  std::map<std::size_t, HadamardRecipe> reg;
  for (unsigned k = 0; (std::size_t{1} << k) <= limit; ++k) reg[std::size_t{1} << k] = {HadamardConstruction::sylvester, k};
  // Paley I first, so e.g. order 12 comes from q = 11 rather than q = 5
  for (const std::uint64_t residue : {3u, 1u})
    for (std::uint64_t q = 3; q + 1 <= limit; q += 2) {
      if (q % 4 != residue || !is_prime(q)) continue;
      const std::size_t order = residue == 3 ? q + 1 : 2 * (q + 1);
      if (order <= limit && !reg.count(order))
        reg[order] = {residue == 3 ? HadamardConstruction::paley_i : HadamardConstruction::paley_ii, q};
    }
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<std::size_t> orders;
    for (const auto& [o, r] : reg) orders.push_back(o);
    for (std::size_t a : orders)
      for (std::size_t b : orders) {
        if (a < 2 || b < 2 || a > b || a * b > limit || reg.count(a * b)) continue;
        reg[a * b] = {HadamardConstruction::kronecker_composite, 0, a, b};
        grew = true;
      }
  }
  return reg;
}

/// Builds an order-n Hadamard matrix from the registry.
inline HadamardMatrix construct_hadamard(std::size_t n, std::size_t limit = kDefaultHadamardLimit) {
  require(n >= 1, ErrorKind::invalid_input, "order must be positive");
  const auto reg = hadamard_registry(limit);
  const auto it = reg.find(n);
  if (it == reg.end()) {
    std::string msg = "no Hadamard construction for order " + std::to_string(n) +
                      "; supported orders are 1, 2 and multiples of 4 built from Sylvester, "
                      "Paley (prime q) and Kronecker products up to " +
                      std::to_string(limit);
    if (n % 4 == 0 && n <= limit) {
      std::size_t below = 0, above = 0;
      for (const auto& [o, r] : reg) {
        if (o < n) below = o;
        if (o > n && !above) above = o;
      }
      msg += " (nearest: " + std::to_string(below) + (above ? ", " + std::to_string(above) : "") + ")";
    }
    fail(n > limit ? ErrorKind::unsupported_size : ErrorKind::invalid_input, msg);
  }
  const HadamardRecipe& r = it->second;
  switch (r.construction) {
    case HadamardConstruction::sylvester: return sylvester(static_cast<unsigned>(r.parameter));
    case HadamardConstruction::paley_i:
    case HadamardConstruction::paley_ii: return paley(r.parameter);
    case HadamardConstruction::kronecker_composite: {
      const auto a = construct_hadamard(r.left, limit);
      const auto b = construct_hadamard(r.right, limit);
      return {n, kronecker(a.matrix, b.matrix), HadamardConstruction::kronecker_composite};
    }
  }
  fail(ErrorKind::invalid_input, "unknown Hadamard recipe");
}

/// Largest m <= n with a constructible order-m Hadamard matrix.
inline std::size_t best_hadamard_order_at_most(std::size_t n) {
  require(n >= 1, ErrorKind::invalid_input, "n must be positive");
  if (n > (std::size_t{1} << 20))
    fail(ErrorKind::unsupported_size, "Hadamard order registry is limited to 2^20");
  const auto reg = hadamard_registry(std::max(n, kDefaultHadamardLimit));
  return std::prev(reg.upper_bound(n))->first;
}

/// sqrt of the best constructible order: the Schur norm of that Hadamard
/// matrix, bordered by zeros, bounds r_n from below.
inline double rn_construction_lower_bound(std::size_t n) {
  return std::sqrt(static_cast<double>(best_hadamard_order_at_most(n)));
}

}  // namespace schur
