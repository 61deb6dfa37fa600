#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "paircmp/errors.hpp"
#include "paircmp/inference.hpp"
#include "paircmp/model.hpp"
#include "paircmp/normal.hpp"
#include "paircmp/rng.hpp"

using namespace paircmp;

TEST_CASE("variance on a single pair is the reciprocal information") {
  auto rk = make_model("rao-kupper", {{"theta", 2.0}});
  ComparisonGraph g(2, {{0, 1, 1}});
  auto u = LatentScores::centered({0.0, 0.0});
  const auto v = asymptotic_variance(*rk, g, u);
  // I(0) = 8/27 for theta = 2, one comparison each side.
  CHECK(v.rho[0] == doctest::Approx(27.0 / 8.0).epsilon(1e-12));
  CHECK(v.rho[1] == doctest::Approx(27.0 / 8.0).epsilon(1e-12));
  CHECK(v.source == VarianceSource::Truth);
  CHECK(v.finite(0));
}

TEST_CASE("variance adds information over neighbors and multiplicities") {
  auto bt = make_model("bt");
  // Complete graph on 3 vertices at u = 0: each vertex sees 2 comparisons
  // of information 1/4, so rho = 2.
  ComparisonGraph k3(3, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}});
  auto u = LatentScores::centered({0.0, 0.0, 0.0});
  const auto v = asymptotic_variance(*bt, k3, u);
  for (int i = 0; i < 3; ++i) CHECK(v.rho[i] == doctest::Approx(2.0).epsilon(1e-12));

  ComparisonGraph mult(2, {{0, 1, 8}});
  const auto vm = asymptotic_variance(*bt, mult, LatentScores::centered({0.0, 0.0}));
  CHECK(vm.rho[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("plugin variance matches the oracle formula at u_hat") {
  auto m = make_model("davidson", {{"theta", 1.5}});
  ComparisonGraph g(3, {{0, 1, 2}, {1, 2, 1}});
  Dataset d(g, {1.0, 0.0, -1.0}, OutcomeSupport::finite({-1.0, 0.0, 1.0}));
  auto u_hat = LatentScores::centered({0.4, -0.1, -0.3});
  const auto v = plugin_variance(*m, d, u_hat);
  CHECK(v.source == VarianceSource::PlugIn);
  const double i01 = m->fisher_info(0.5);
  const double i12 = m->fisher_info(0.2);
  CHECK(v.rho[0] == doctest::Approx(1.0 / (2.0 * i01)).epsilon(1e-12));
  CHECK(v.rho[1] == doctest::Approx(1.0 / (2.0 * i01 + i12)).epsilon(1e-12));
  CHECK(v.rho[2] == doctest::Approx(1.0 / i12).epsilon(1e-12));
}

TEST_CASE("cardinal plugin variance does not depend on the estimate") {
  auto m = make_model("cardinal", {{"sigma", 2.0}});
  ComparisonGraph g(3, {{0, 1, 1}, {1, 2, 3}});
  Dataset d(g, {0.5, 1.0, -2.0, 0.25}, OutcomeSupport::real_line());
  const auto a = plugin_variance(*m, d, LatentScores::centered({1.0, 0.0, -1.0}));
  const auto b = plugin_variance(*m, d, LatentScores::centered({-3.0, 5.0, -2.0}));
  for (int i = 0; i < 3; ++i) CHECK(a.rho[i] == b.rho[i]);
  // Information is 1/4 per comparison.
  CHECK(a.rho[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("confidence interval uses the two-sided normal quantile") {
  const auto [lo, hi] = confidence_interval(0.0, 0.04, 0.05);
  CHECK(lo == doctest::Approx(-0.391992796908011).epsilon(1e-12));
  CHECK(hi == doctest::Approx(0.391992796908011).epsilon(1e-12));
  const auto [lo2, hi2] = confidence_interval(1.5, 0.01, 0.32);
  CHECK(lo2 == doctest::Approx(1.5 - 0.0994457883209753).epsilon(1e-10));
  CHECK(hi2 == doctest::Approx(1.5 + 0.0994457883209753).epsilon(1e-10));
  CHECK_THROWS_AS(confidence_interval(0.0, 0.04, 0.0), InvalidAlpha);
  CHECK_THROWS_AS(confidence_interval(0.0, 0.04, 1.0), InvalidAlpha);
  CHECK_THROWS_AS(confidence_interval(0.0, -1.0, 0.05), InvalidParameter);
}

TEST_CASE("z test matches the closed form and is antisymmetric") {
  auto u = LatentScores::centered({0.30, -0.10, -0.20});
  VarianceEstimate v;
  v.rho = {0.04, 0.09, 0.16};
  const auto t01 = z_test_difference(0, 1, u, v);
  CHECK(t01.z == doctest::Approx(0.4 / std::sqrt(0.13)).epsilon(1e-14));
  CHECK(t01.p == doctest::Approx(2.0 * norm_cdf(-std::fabs(t01.z))).epsilon(1e-12));
  const auto t10 = z_test_difference(1, 0, u, v);
  CHECK(t10.z == -t01.z);
  CHECK(t10.p == t01.p);
  const auto t12 = z_test_difference(1, 2, u, v);
  CHECK(t12.z == doctest::Approx(0.1 / 0.5).epsilon(1e-14));

  CHECK_THROWS_AS(z_test_difference(0, 0, u, v), SelfComparison);
  CHECK_THROWS_AS(z_test_difference(0, 5, u, v), VertexOutOfRange);
  VarianceEstimate short_v;
  short_v.rho = {0.1, 0.1};
  CHECK_THROWS_AS(z_test_difference(0, 1, u, short_v), DimensionMismatch);
}

TEST_CASE("isolated vertices surface as infinite variance") {
  auto bt = make_model("bt");
  ComparisonGraph g(3, {{0, 1, 1}});
  const auto v = asymptotic_variance(*bt, g, LatentScores::centered({0, 0, 0}));
  CHECK(v.finite(0));
  CHECK_FALSE(v.finite(2));
  CHECK(std::isinf(v.rho[2]));
  auto u = LatentScores::centered({0.1, -0.1, 0.0});
  CHECK_THROWS_AS(z_test_difference(0, 2, u, v), IsolatedVertex);
}

TEST_CASE("benjamini-hochberg step-up on a textbook example") {
  // p sorted: .01 .02 .03 .04 .2; at alpha=.1 the largest k with
  // p_(k) <= alpha*k/5 is 4.
  const std::vector<double> p = {0.20, 0.02, 0.01, 0.04, 0.03};
  const auto rejected = benjamini_hochberg(p, 0.10);
  CHECK(rejected == std::vector<int>{1, 2, 3, 4});
  // No rejections when even the smallest p fails its threshold.
  CHECK(benjamini_hochberg({0.5, 0.9}, 0.05).empty());
  // All rejected when every p is tiny.
  CHECK(benjamini_hochberg({1e-5, 1e-6}, 0.05).size() == 2);
}

TEST_CASE("step-up property: whatever Bonferroni rejects, BH rejects") {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + static_cast<int>(rng.uniform(0.0, 12.0));
    std::vector<double> p(m);
    for (auto& x : p) {
      const double roll = rng.uniform(0.0, 1.0);
      x = roll < 0.3 ? rng.uniform(0.0, 0.01) : rng.uniform(0.0, 1.0);
    }
    const double alpha = 0.07;
    const auto bh = benjamini_hochberg(p, alpha);
    for (int i = 0; i < m; ++i)
      if (p[i] <= alpha / m)
        CHECK(std::find(bh.begin(), bh.end(), i) != bh.end());
    // Monotone in alpha: shrinking alpha never adds rejections.
    const auto bh_small = benjamini_hochberg(p, alpha / 3.0);
    for (int i : bh_small) CHECK(std::find(bh.begin(), bh.end(), i) != bh.end());
  }
}

TEST_CASE("benjamini-hochberg validates inputs") {
  CHECK_THROWS_AS(benjamini_hochberg({0.5}, 0.0), InvalidAlpha);
  CHECK_THROWS_AS(benjamini_hochberg({0.5}, 1.0), InvalidAlpha);
  CHECK_THROWS_AS(benjamini_hochberg({1.5}, 0.05), InvalidParameter);
  CHECK_THROWS_AS(benjamini_hochberg({-0.1}, 0.05), InvalidParameter);
  CHECK(benjamini_hochberg({}, 0.05).empty());
}

TEST_CASE("individual error bound formula") {
  // At n = e the log factor is 1, leaving C * (c2/c3) / sqrt(degree).
  const double n = std::exp(1.0);
  CHECK(individual_error_bound(2.0, 0.5, n, 16) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(individual_error_bound(2.0, 0.5, n, 16, 3.0) ==
        doctest::Approx(3.0).epsilon(1e-12));
  CHECK(individual_error_bound(1.0, 1.0, 100.0, 25) ==
        doctest::Approx(std::sqrt(std::log(100.0)) / 5.0).epsilon(1e-12));
  CHECK_THROWS_AS(individual_error_bound(1.0, 1.0, 100.0, 0), ZeroDegree);
  CHECK_THROWS_AS(individual_error_bound(1.0, 1.0, 1.5, 9), InvalidParameter);
}
