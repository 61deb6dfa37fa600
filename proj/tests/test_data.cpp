#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "paircmp/data.hpp"
#include "paircmp/errors.hpp"
#include "paircmp/graph.hpp"
#include "paircmp/model.hpp"

using namespace paircmp;

TEST_CASE("latent scores center and recenter") {
  auto u = LatentScores::centered({1.0, 2.0, 6.0});
  CHECK(u.is_centered());
  CHECK(std::fabs(u.sum()) < 1e-12);
  CHECK(u[2] == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(u.dynamic_range() == doctest::Approx(5.0).epsilon(1e-15));

  auto raw = LatentScores::raw({1.0, 2.0, 6.0});
  CHECK_FALSE(raw.is_centered());
  CHECK(raw[2] == 6.0);
  auto rec = raw.recentered();
  CHECK(rec.is_centered());
  CHECK(rec[0] == doctest::Approx(-2.0).epsilon(1e-15));

  CHECK_THROWS_AS(LatentScores::centered({}), EmptyInput);
}

TEST_CASE("dataset layout and antisymmetric access") {
  ComparisonGraph g(3, {{0, 1, 2}, {1, 2, 1}});
  Dataset d(g, {1.0, -1.0, 1.0}, OutcomeSupport::finite({-1.0, 1.0}));
  CHECK(d.num_outcomes() == 3);
  CHECK(d.unit_begin(0) == 0);
  CHECK(d.unit_end(0) == 2);
  CHECK(d.unit_begin(1) == 2);
  CHECK(d.outcome(0, 1, 0) == 1.0);
  CHECK(d.outcome(1, 0, 0) == -1.0);
  CHECK(d.outcome(0, 1, 1) == -1.0);
  CHECK(d.outcome(1, 2) == 1.0);
  CHECK(d.outcome(2, 1) == -1.0);
  CHECK_THROWS(d.outcome(0, 2));     // not an edge
  CHECK_THROWS(d.outcome(0, 1, 2));  // unit index past multiplicity

  // Wrong outcome count and out-of-support values are rejected.
  CHECK_THROWS_AS(Dataset(g, {1.0, -1.0}, OutcomeSupport::finite({-1.0, 1.0})),
                  DimensionMismatch);
  CHECK_THROWS_AS(Dataset(g, {1.0, 0.5, 1.0}, OutcomeSupport::finite({-1.0, 1.0})),
                  OutcomeNotInSupport);
}

TEST_CASE("sampled outcomes follow the model pmf") {
  // One pair compared 10000 times at a fixed gap; chi-square GOF per model.
  // Criticals are the 0.999 quantiles so spurious failures are rare.
  const std::map<int, double> chi2_crit = {
      {1, 10.82756617}, {2, 13.81551056}, {3, 16.2662362}};
  struct Case {
    const char* name;
    std::map<std::string, double> params;
  };
  const std::vector<Case> cases = {
      {"bt", {}},
      {"thurstone", {}},
      {"rao-kupper", {{"theta", 2.0}}},
      {"davidson", {{"theta", 1.0}}},
      {"clm4", {{"theta", 2.32}}},
  };
  const double gap = 0.8;
  ComparisonGraph g(2, {{0, 1, 10000}});
  auto u = LatentScores::raw({gap, 0.0});
  for (const auto& c : cases) {
    auto m = make_model(c.name, c.params);
    const auto d = sample_outcomes(*m, u, g, 991);
    std::map<double, int> counts;
    for (int k = 0; k < 10000; ++k) counts[d.unit(k)] += 1;
    double chi2 = 0.0;
    for (double x : m->support().values()) {
      const double expect = 10000.0 * m->pdf(x, gap);
      const double obs = counts.count(x) ? counts[x] : 0;
      chi2 += (obs - expect) * (obs - expect) / expect;
    }
    const int df = static_cast<int>(m->support().values().size()) - 1;
    INFO("model ", c.name, " chi2 ", chi2);
    CHECK(chi2 < chi2_crit.at(df));
  }
}

TEST_CASE("cardinal outcomes have the right mean and spread") {
  ComparisonGraph g(2, {{0, 1, 20000}});
  auto u = LatentScores::raw({1.3, 0.0});
  auto m = make_model("cardinal", {{"sigma", 2.0}});
  const auto d = sample_outcomes(*m, u, g, 17);
  double s1 = 0.0, s2 = 0.0;
  for (int k = 0; k < 20000; ++k) {
    s1 += d.unit(k);
    s2 += d.unit(k) * d.unit(k);
  }
  const double mean = s1 / 20000.0;
  const double var = s2 / 20000.0 - mean * mean;
  // 4 sigma on the mean: 4*2/sqrt(20000) = 0.057.
  CHECK(std::fabs(mean - 1.3) < 0.057);
  CHECK(std::fabs(var - 4.0) < 4.0 * 4.0 * std::sqrt(2.0 / 20000.0));
}

TEST_CASE("outcome sampling is deterministic in the seed") {
  ComparisonGraph g(4, {{0, 1, 3}, {1, 2, 1}, {2, 3, 2}});
  auto u = LatentScores::centered({0.5, -0.5, 1.0, -1.0});
  auto m = make_model("rao-kupper", {{"theta", 2.0}});
  const auto a = sample_outcomes(*m, u, g, 5);
  const auto b = sample_outcomes(*m, u, g, 5);
  const auto c = sample_outcomes(*m, u, g, 6);
  bool same = true, differs = false;
  for (int k = 0; k < 6; ++k) {
    same = same && a.unit(k) == b.unit(k);
    differs = differs || a.unit(k) != c.unit(k);
  }
  CHECK(same);
  CHECK(differs);
}

TEST_CASE("csv load handles labels, headers and orientation") {
  std::istringstream in(
      "i,j,outcome\n"
      "carol,alice,1\n"
      "# a comment line\n"
      "alice,bob,-1\n"
      "bob,carol,1\n"
      "alice,carol,1\n");
  const auto loaded = load_csv(in, OutcomeSupport::finite({-1.0, 1.0}));
  REQUIRE(loaded.labels.size() == 3);
  CHECK(loaded.labels[0] == "carol");
  CHECK(loaded.labels[1] == "alice");
  CHECK(loaded.labels[2] == "bob");
  const auto& d = loaded.data;
  CHECK(d.graph().num_vertices() == 3);
  CHECK(d.graph().num_edges() == 3);
  CHECK(d.num_outcomes() == 4);
  // carol=0, alice=1: pair stored as (0,1), both rows for it normalized to
  // carol's point of view.
  CHECK(d.outcome(0, 1, 0) == 1.0);
  CHECK(d.outcome(0, 1, 1) == -1.0);
  CHECK(d.outcome(1, 0, 1) == 1.0);  // alice beat carol in the repeat row
}

TEST_CASE("csv load without header and with numeric labels") {
  std::istringstream in("3,4,1\n4,5,-1\n5,3,1\n");
  const auto loaded = load_csv(in, OutcomeSupport::finite({-1.0, 1.0}));
  CHECK(loaded.labels == std::vector<std::string>{"3", "4", "5"});
  CHECK(loaded.data.graph().num_edges() == 3);
}

TEST_CASE("csv load rejects bad rows") {
  {
    std::istringstream in("a,a,1\n");
    CHECK_THROWS_AS(load_csv(in, OutcomeSupport::finite({-1.0, 1.0})),
                    SelfComparison);
  }
  {
    std::istringstream in("a,b,0.5\n");
    CHECK_THROWS_AS(load_csv(in, OutcomeSupport::finite({-1.0, 1.0})),
                    OutcomeNotInSupport);
  }
  {
    std::istringstream in("a,b\n");
    CHECK_THROWS_AS(load_csv(in, OutcomeSupport::finite({-1.0, 1.0})), ParseError);
  }
  {
    std::istringstream in("a,b,zebra\n");
    CHECK_THROWS_AS(load_csv(in, OutcomeSupport::finite({-1.0, 1.0})), ParseError);
  }
  {
    std::istringstream in("");
    CHECK_THROWS_AS(load_csv(in, OutcomeSupport::finite({-1.0, 1.0})), EmptyInput);
  }
}

TEST_CASE("csv round-trip preserves the dataset") {
  std::istringstream in(
      "x,y,2\n"
      "y,z,-1\n"
      "x,y,-2\n"
      "z,x,1\n");
  const auto support = OutcomeSupport::finite({-2.0, -1.0, 1.0, 2.0});
  const auto first = load_csv(in, support);
  std::ostringstream out;
  save_csv(out, first.data, first.labels);
  std::istringstream back(out.str());
  const auto second = load_csv(back, support);
  CHECK(second.labels == first.labels);
  REQUIRE(second.data.num_outcomes() == first.data.num_outcomes());
  for (long long k = 0; k < first.data.num_outcomes(); ++k)
    CHECK(second.data.unit(static_cast<int>(k)) ==
          first.data.unit(static_cast<int>(k)));
  // Saved form carries the header.
  CHECK(out.str().rfind("i,j,outcome\n", 0) == 0);
}

TEST_CASE("match score mapping") {
  CHECK(map_match_scores("2:0") == 2.0);
  CHECK(map_match_scores("2:1") == 1.0);
  CHECK(map_match_scores("1:2") == -1.0);
  CHECK(map_match_scores("0:2") == -2.0);
  CHECK(map_match_scores(" 2:0 ") == 2.0);
  CHECK_THROWS_AS(map_match_scores("3:1"), UnrecognizedScore);
  CHECK_THROWS_AS(map_match_scores(""), UnrecognizedScore);
}
