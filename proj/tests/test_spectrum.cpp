#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "schur/bounds.hpp"
#include "schur/closed_forms.hpp"
#include "schur/equivalence.hpp"
#include "schur/error.hpp"
#include "schur/spectrum.hpp"

using namespace schur;

namespace {

bool contains(const std::vector<double>& values, double x, double tol = 1e-7) {
  return std::any_of(values.begin(), values.end(), [&](double v) { return std::abs(v - x) <= tol; });
}

void expect_values(const SpectrumResult& s, const std::vector<double>& want) {
  ASSERT_EQ(s.values.size(), want.size());
  for (std::size_t k = 0; k < want.size(); ++k) EXPECT_NEAR(s.values[k], want[k], 1e-7) << "k=" << k;
}

}  // namespace

TEST(Spectrum, SmallOrders) {
  expect_values(schur_spectrum(1), {1.0});
  expect_values(schur_spectrum(2), {1.0, std::sqrt(2.0)});
  expect_values(schur_spectrum(3), {1.0, std::sqrt(2.0), 5.0 / 3.0});
  expect_values(schur_spectrum(4), {1.0, std::sqrt(2.0), 5.0 / 3.0, std::sqrt(3.0), std::sqrt(2.0 + std::sqrt(2.0)),
                                    (2.0 + 3.0 * std::sqrt(6.0)) / 5.0, 2.0});
}

TEST(Spectrum, AttainingRepresentativesHaveTheirValues) {
  const auto s = schur_spectrum(4);
  ASSERT_EQ(s.attaining.size(), s.values.size());
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    SchurNormOptions opt;
    opt.fast_paths = false;
    EXPECT_NEAR(schur_norm(s.attaining[k].to_dense(), opt).value, s.values[k], 1e-8);
  }
  EXPECT_EQ(s.exact_forms.back(), std::optional<std::string>("2"));
}

TEST(Spectrum, FiveByFiveMembers) {
  const auto s = schur_spectrum(5, 1e-6);
  EXPECT_EQ(s.values.size(), 16u);
  EXPECT_TRUE(contains(s.values, (1.0 + 4.0 * std::sqrt(5.0)) / 5.0));
  EXPECT_TRUE(contains(s.values, (3.0 + 8.0 * std::sqrt(2.0)) / 7.0));
  EXPECT_TRUE(contains(s.values, 11.0 / 5.0));
}

TEST(Spectrum, ValuesLieBetweenOneAndRootN) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto s = schur_spectrum(n);
    for (std::size_t k = 0; k < s.values.size(); ++k) {
      EXPECT_GE(s.values[k], 1.0 - 1e-9);
      EXPECT_LE(s.values[k], std::sqrt(static_cast<double>(n)) + 1e-8);
      if (k) EXPECT_GT(s.values[k] - s.values[k - 1], s.dedup_tol);
    }
  }
}

TEST(Spectrum, NestedInNextOrder) {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto next = schur_spectrum(n + 1).values;
    for (double v : schur_spectrum(n).values) EXPECT_TRUE(contains(next, v)) << "n=" << n << " v=" << v;
  }
}

TEST(Spectrum, ClosedUnderProducts) {
  const auto s2 = schur_spectrum(2).values, s3 = schur_spectrum(3).values;
  const auto s4 = schur_spectrum(4).values, s6 = schur_spectrum(6).values;
  for (double a : s2) {
    for (double b : s2) EXPECT_TRUE(contains(s4, a * b));
    for (double b : s3) EXPECT_TRUE(contains(s6, a * b));
  }
}

TEST(Spectrum, RejectsUnsupportedArguments) {
  EXPECT_THROW(schur_spectrum(8), Error);
  EXPECT_THROW(schur_spectrum(3, -1.0), Error);
}

TEST(Extremal, ExactMaxima) {
  EXPECT_NEAR(r_n(3).value, 5.0 / 3.0, 1e-8);
  EXPECT_NEAR(r_n(4).value, 2.0, 1e-8);
  EXPECT_NEAR(r_n(5).value, fixtures::r5(), 1e-8);
  EXPECT_NEAR(r_n(6).value, fixtures::r6(), 1e-8);
  double prev = 0.0;
  for (std::size_t n = 1; n <= 6; ++n) {
    const double r = r_n(n).value;
    EXPECT_GE(r, prev - 1e-9);
    EXPECT_LE(r, std::sqrt(static_cast<double>(n)) + 1e-8);
    if (n <= 6) EXPECT_LE(rc_n(n).value, r + 1e-8);
    prev = r;
  }
  EXPECT_EQ(r_n(5).exact_form, std::optional<std::string>("11/5"));
}

TEST(Circulant, MatchesExhaustiveSearch) {
  for (std::size_t n = 1; n <= 12; ++n) {
    double best = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<double> top(n);
      for (std::size_t j = 0; j < n; ++j) top[j] = ((mask >> j) & 1u) ? -1.0 : 1.0;
      best = std::max(best, oracle::circulant_norm(top));
    }
    const auto r = rc_n(n);
    EXPECT_NEAR(r.value, best, 1e-10) << "n=" << n;
    EXPECT_NEAR(oracle::circulant_norm(std::get<CirculantSpec>(r.maximizer).top_row), r.value, 1e-10);
  }
}

TEST(Circulant, TabulatedValues) {
  EXPECT_NEAR(rc_n(5).value, 11.0 / 5.0, 1e-10);
  EXPECT_NEAR(rc_n(6).value, 7.0 / 3.0, 1e-10);
  EXPECT_NEAR(rc_n(7).value, fixtures::r7(), 1e-10);
  EXPECT_NEAR(rc_n(10).value, (3.0 + 2.0 * std::sqrt(5.0) + 2.0 * std::sqrt(7.0 + 2.0 * std::sqrt(11.0))) / 5.0, 1e-10);
  EXPECT_NEAR(rc_n(13).value, (5.0 + 24.0 * std::sqrt(3.0)) / 13.0, 1e-10);
  EXPECT_THROW(rc_n(25), Error);
}

TEST(Circulant, OrbitRepresentativesAreCanonical) {
  for (std::size_t n = 1; n <= 10; ++n) {
    const auto reps = detail::circulant_orbit_representatives(n);
    EXPECT_LT(reps.size(), (std::size_t{1} << n) / 2 + 2);
    for (auto x : reps) EXPECT_EQ(detail::min_rotation(x, n), x);
  }
}

TEST(ComplexBenchmark, EqualsRootN) {
  const auto c3 = c_n(3);
  EXPECT_NEAR(c3.value, std::sqrt(3.0), 1e-12);
  EXPECT_LE(c3.verification_residual, 1e-10);
  EXPECT_DOUBLE_EQ(c_n(1).value, 1.0);
  EXPECT_NEAR(c_n(8).value, 2.0 * std::sqrt(2.0), 1e-12);
  EXPECT_LE(c_n(70).verification_residual, 1e-10);
}

TEST(Bounds, ExactAndBracketed) {
  const auto b4 = r_n_bounds(4);
  EXPECT_TRUE(b4.exact);
  EXPECT_NEAR(b4.lower, 2.0, 1e-8);
  EXPECT_NEAR(b4.upper, 2.0, 1e-8);

  const auto b12 = r_n_bounds(12);
  EXPECT_TRUE(b12.exact);
  EXPECT_NEAR(b12.lower, 2.0 * std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(b12.upper, 2.0 * std::sqrt(3.0), 1e-12);

  const auto b10 = r_n_bounds(10);
  EXPECT_FALSE(b10.exact);
  EXPECT_GE(b10.lower, 11.0 * std::sqrt(2.0) / 5.0 - 1e-7);
  EXPECT_NEAR(b10.upper, std::sqrt(10.0), 1e-12);
  ASSERT_TRUE(b10.witness.has_value());
  EXPECT_GE(schur_norm(b10.witness->to_dense()).value, b10.lower - 1e-7);

  RnBoundsOptions quick;
  quick.use_search = false;
  const auto b9 = r_n_bounds(9, quick);
  EXPECT_GE(b9.lower, rc_n(9).value - 1e-12);
  EXPECT_LE(b9.lower, b9.upper);
}

TEST(ClosedForms, RecognizesTaggedValues) {
  EXPECT_EQ(match_closed_form(5.0 / 3.0), std::optional<std::string>("5/3"));
  EXPECT_EQ(match_closed_form(std::sqrt(2.0)), std::optional<std::string>("sqrt(2)"));
  EXPECT_FALSE(match_closed_form(1.2345678).has_value());
}
