#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "paircmp/errors.hpp"
#include "paircmp/graph.hpp"

using namespace paircmp;

TEST_CASE("construction validates edges") {
  CHECK_NOTHROW(ComparisonGraph(3, {{0, 1, 2}, {2, 1, 1}}));
  CHECK_THROWS_AS(ComparisonGraph(3, {{0, 3, 1}}), VertexOutOfRange);
  CHECK_THROWS_AS(ComparisonGraph(3, {{1, 1, 1}}), SelfComparison);
  CHECK_THROWS_AS(ComparisonGraph(3, {{0, 1, 0}}), InvalidParameter);
  CHECK_THROWS_AS(ComparisonGraph(3, {{0, 1, 1}, {1, 0, 1}}), InvalidParameter);
}

TEST_CASE("edges are canonicalized and adjacency is sorted") {
  ComparisonGraph g(4, {{2, 0, 3}, {3, 1, 1}, {0, 1, 2}});
  CHECK(g.num_vertices() == 4);
  CHECK(g.num_edges() == 3);
  CHECK(g.num_comparisons() == 6);
  CHECK(g.edges()[0].i == 0);
  CHECK(g.edges()[0].j == 1);
  CHECK(g.edges()[1].j == 2);  // (0,2) after the swap
  CHECK(g.degree(0) == 2);
  CHECK(g.comparison_degree(0) == 5);
  CHECK(g.degree(3) == 1);
  const auto nb = g.neighborhood(0);
  REQUIRE(nb.size() == 2);
  CHECK(nb[0] == 1);
  CHECK(nb[1] == 2);
  // CSR entries point back at the owning edge row.
  const int k = g.adj_offset(0) + 1;
  CHECK(g.adj_vertex(k) == 2);
  CHECK(g.edges()[g.adj_edge(k)].multiplicity == 3);
}

TEST_CASE("sampled edge counts match the expected density") {
  // Constant probability 0.1 on 1000 vertices: 499500 pairs, so the edge
  // count is Binomial(499500, 0.1); 4 sigma is about 848 around 49950.
  const double expect = 49950.0;
  const double slack = 4.0 * std::sqrt(499500 * 0.1 * 0.9);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GraphSamplerConfig cfg;
    cfg.n = 1000;
    cfg.p = 0.1;
    cfg.q = 0.1;
    cfg.rule = EdgeProbabilityRule::ConstantP;
    cfg.seed = seed;
    const auto g = sample_graph(cfg);
    CHECK(std::fabs(static_cast<double>(g.num_edges()) - expect) < slack);
  }
}

TEST_CASE("uniform rule lands between the constant-p and constant-q counts") {
  GraphSamplerConfig cfg;
  cfg.n = 2000;
  cfg.p = 0.02;
  cfg.q = 0.3;
  cfg.rule = EdgeProbabilityRule::UniformRandom;
  cfg.seed = 7;
  const auto g = sample_graph(cfg);
  const double pairs = 2000.0 * 1999.0 / 2.0;
  const double mean = pairs * 0.5 * (cfg.p + cfg.q);
  CHECK(std::fabs(g.num_edges() - mean) < 4.0 * std::sqrt(mean));
}

TEST_CASE("ordered-union rule matches its closed-form density") {
  GraphSamplerConfig cfg;
  cfg.n = 1500;
  cfg.p = 0.05;
  cfg.q = 0.25;
  cfg.rule = EdgeProbabilityRule::UniformOrdered;
  cfg.seed = 11;
  const auto g = sample_graph(cfg);
  // Independent U[p,q] draws P1, P2; the edge fires with 1-(1-P1)(1-P2),
  // so marginally P(edge) = 1 - (1 - (p+q)/2)^2.
  const double m1 = 0.5 * (cfg.p + cfg.q);
  const double edge_prob = 1.0 - (1.0 - m1) * (1.0 - m1);
  const double pairs = 1500.0 * 1499.0 / 2.0;
  const double mean = pairs * edge_prob;
  CHECK(std::fabs(g.num_edges() - mean) < 4.0 * std::sqrt(mean));
}

TEST_CASE("sparse graphs above the connectivity threshold stay connected") {
  const int n = 500;
  const double p = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    GraphSamplerConfig cfg;
    cfg.n = n;
    cfg.p = p;
    cfg.q = std::min(1.0, p * std::log(static_cast<double>(n)));
    cfg.rule = EdgeProbabilityRule::UniformRandom;
    cfg.seed = seed;
    const auto g = sample_graph(cfg);
    CHECK(is_connected(g));
  }
}

TEST_CASE("pair inclusion is exchangeable under constant-p") {
  // Track one fixed pair across many seeds; its inclusion frequency must
  // match p. 10000 seeds, p = 0.3: 4 sigma is about 183 around 3000.
  int hits = 0;
  const int trials = 10000;
  for (int s = 0; s < trials; ++s) {
    GraphSamplerConfig cfg;
    cfg.n = 12;
    cfg.p = 0.3;
    cfg.q = 0.3;
    cfg.rule = EdgeProbabilityRule::ConstantP;
    cfg.seed = 5000 + static_cast<std::uint64_t>(s);
    const auto g = sample_graph(cfg);
    for (const auto& e : g.edges())
      if (e.i == 3 && e.j == 7) ++hits;
  }
  const double mean = trials * 0.3;
  const double slack = 4.0 * std::sqrt(trials * 0.3 * 0.7);
  CHECK(std::fabs(hits - mean) < slack);
}

TEST_CASE("sampling is deterministic in the seed") {
  GraphSamplerConfig cfg;
  cfg.n = 200;
  cfg.p = 0.05;
  cfg.q = 0.2;
  cfg.rule = EdgeProbabilityRule::UniformOrdered;
  cfg.seed = 42;
  const auto a = sample_graph(cfg);
  const auto b = sample_graph(cfg);
  REQUIRE(a.num_edges() == b.num_edges());
  for (int e = 0; e < a.num_edges(); ++e) {
    CHECK(a.edge(e).i == b.edge(e).i);
    CHECK(a.edge(e).j == b.edge(e).j);
  }
  cfg.seed = 43;
  const auto c = sample_graph(cfg);
  bool differs = c.num_edges() != a.num_edges();
  if (!differs)
    for (int e = 0; e < a.num_edges(); ++e)
      if (a.edge(e).i != c.edge(e).i || a.edge(e).j != c.edge(e).j) {
        differs = true;
        break;
      }
  CHECK(differs);
}

TEST_CASE("sampler rejects bad probabilities") {
  GraphSamplerConfig cfg;
  cfg.n = 10;
  cfg.p = 0.5;
  cfg.q = 0.4;
  CHECK_THROWS_AS(sample_graph(cfg), InvalidProbability);
  cfg.q = 1.5;
  CHECK_THROWS_AS(sample_graph(cfg), InvalidProbability);
  cfg.p = -0.1;
  cfg.q = 0.5;
  CHECK_THROWS_AS(sample_graph(cfg), InvalidProbability);
}

TEST_CASE("connectivity detection") {
  ComparisonGraph path(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
  CHECK(is_connected(path));
  ComparisonGraph split(4, {{0, 1, 1}, {2, 3, 1}});
  CHECK_FALSE(is_connected(split));
  ComparisonGraph lonely(3, {{0, 1, 1}});
  CHECK_FALSE(is_connected(lonely));
  ComparisonGraph single(1, {});
  CHECK(is_connected(single));
}

TEST_CASE("edge rule names round-trip") {
  for (auto r : {EdgeProbabilityRule::UniformRandom, EdgeProbabilityRule::ConstantP,
                 EdgeProbabilityRule::ConstantQ, EdgeProbabilityRule::UniformOrdered})
    CHECK(edge_rule_from_string(to_string(r)) == r);
  CHECK(edge_rule_from_string("uniform") == EdgeProbabilityRule::UniformRandom);
  CHECK(edge_rule_from_string("ordered-union") == EdgeProbabilityRule::UniformOrdered);
  CHECK_THROWS_AS(edge_rule_from_string("bogus"), InvalidParameter);
}

TEST_CASE("edge list file round-trip") {
  namespace fs = std::filesystem;
  const auto path = fs::temp_directory_path() / "paircmp_graph_rt.txt";
  ComparisonGraph g(5, {{0, 4, 2}, {1, 2, 1}, {0, 1, 7}});
  write_edge_list(path.string(), g);
  const auto h = read_edge_list_file(path.string());
  REQUIRE(h.num_vertices() == 5);
  REQUIRE(h.num_edges() == 3);
  for (int e = 0; e < 3; ++e) {
    CHECK(g.edge(e).i == h.edge(e).i);
    CHECK(g.edge(e).j == h.edge(e).j);
    CHECK(g.edge(e).multiplicity == h.edge(e).multiplicity);
  }
  fs::remove(path);
}

TEST_CASE("edge list parser reports line numbers") {
  namespace fs = std::filesystem;
  const auto path = fs::temp_directory_path() / "paircmp_graph_bad.txt";
  {
    std::FILE* f = std::fopen(path.string().c_str(), "w");
    std::fputs("# comment\n0 1 2\n0 junk 1\n", f);
    std::fclose(f);
  }
  try {
    read_edge_list_file(path.string());
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("3") != std::string::npos);
  }
  fs::remove(path);
  CHECK_THROWS_AS(read_edge_list_file("/nonexistent/nowhere.txt"), Error);
}
