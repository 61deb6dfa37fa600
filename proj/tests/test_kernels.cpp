#include <doctest.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cmath>
#include <memory>
#include <vector>

#include "paircmp/data.hpp"
#include "paircmp/graph.hpp"
#include "paircmp/kernels.hpp"
#include "paircmp/model.hpp"
#include "paircmp/rng.hpp"

using namespace paircmp;

namespace {

struct Instance {
  std::unique_ptr<const Model> model;
  Dataset data;
  std::vector<double> u;
};

Instance random_instance(const std::string& name,
                         std::map<std::string, double> params, int n,
                         double density, std::uint64_t seed) {
  GraphSamplerConfig gc;
  gc.n = n;
  gc.p = density;
  gc.q = density;
  gc.rule = EdgeProbabilityRule::ConstantP;
  gc.seed = seed;
  auto g = sample_graph(gc);
  // Give some edges multiplicity to exercise the unit loops.
  std::vector<Edge> edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); e += 3) edges[e].multiplicity = 2 + e % 4;
  ComparisonGraph gm(n, std::move(edges));

  Rng rng(mix_seed(seed, 1));
  std::vector<double> u(n);
  for (auto& v : u) v = rng.uniform(-1.0, 1.0);

  auto m = make_model(name, params);
  auto d = sample_outcomes(*m, LatentScores::raw(u), gm, mix_seed(seed, 2));
  return {std::move(m), std::move(d), std::move(u)};
}

double rel_gap(double a, double b) {
  return std::fabs(a - b) / std::max({1.0, std::fabs(a), std::fabs(b)});
}

}  // namespace

TEST_CASE("parallel kernels agree with the serial reference") {
  struct Case {
    const char* name;
    std::map<std::string, double> params;
  };
  const std::vector<Case> cases = {
      {"bt", {}},
      {"thurstone", {}},
      {"rao-kupper", {{"theta", 2.0}}},
      {"davidson", {{"theta", 1.5}}},
      {"clm4", {{"theta", 2.32}}},
      {"cardinal", {{"sigma", 2.0}}},
  };
  for (const auto& c : cases) {
    for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
      auto inst = random_instance(c.name, c.params, 120, 0.15, seed);
      const auto& d = inst.data;
      const int n = d.graph().num_vertices();
      const int ne = d.graph().num_edges();

      const double ll_p = kernels::log_likelihood(*inst.model, d, inst.u.data());
      const double ll_s =
          kernels::serial::log_likelihood(*inst.model, d, inst.u.data());
      CHECK(rel_gap(ll_p, ll_s) < 1e-11);

      std::vector<double> gp(n), gs(n);
      kernels::gradient(*inst.model, d, inst.u.data(), gp.data());
      kernels::serial::gradient(*inst.model, d, inst.u.data(), gs.data());
      for (int i = 0; i < n; ++i) CHECK(rel_gap(gp[i], gs[i]) < 1e-11);

      std::vector<double> wp(ne), ws(ne);
      kernels::hessian_edge_weights(*inst.model, d, inst.u.data(), wp.data());
      kernels::serial::hessian_edge_weights(*inst.model, d, inst.u.data(),
                                            ws.data());
      for (int e = 0; e < ne; ++e) {
        CHECK(rel_gap(wp[e], ws[e]) < 1e-11);
        CHECK(wp[e] > 0.0);
      }

      std::vector<double> fp(ne), fs(ne);
      kernels::expected_edge_weights(*inst.model, d.graph(), inst.u.data(),
                                     fp.data());
      kernels::serial::expected_edge_weights(*inst.model, d.graph(),
                                             inst.u.data(), fs.data());
      for (int e = 0; e < ne; ++e) CHECK(rel_gap(fp[e], fs[e]) < 1e-11);
    }
  }
}

TEST_CASE("gradient entries sum to zero") {
  auto inst = random_instance("davidson", {{"theta", 1.0}}, 80, 0.2, 99);
  std::vector<double> g(80);
  kernels::gradient(*inst.model, inst.data, inst.u.data(), g.data());
  double s = 0.0;
  for (double v : g) s += v;
  CHECK(std::fabs(s) < 1e-10);
}

TEST_CASE("results are bitwise identical across thread counts") {
#ifdef _OPENMP
  auto inst = random_instance("rao-kupper", {{"theta", 2.0}}, 150, 0.12, 44);
  const auto& d = inst.data;
  const int n = d.graph().num_vertices();
  const int ne = d.graph().num_edges();

  const int entry_threads = omp_get_max_threads();
  std::vector<int> counts = {1, 2, 4};
  std::vector<double> ll(counts.size());
  std::vector<std::vector<double>> grads, weights;
  for (std::size_t t = 0; t < counts.size(); ++t) {
    omp_set_num_threads(counts[t]);
    ll[t] = kernels::log_likelihood(*inst.model, d, inst.u.data());
    std::vector<double> g(n), w(ne);
    kernels::gradient(*inst.model, d, inst.u.data(), g.data());
    kernels::hessian_edge_weights(*inst.model, d, inst.u.data(), w.data());
    grads.push_back(std::move(g));
    weights.push_back(std::move(w));
  }
  omp_set_num_threads(entry_threads);
  for (std::size_t t = 1; t < counts.size(); ++t) {
    CHECK(ll[t] == ll[0]);
    CHECK(grads[t] == grads[0]);
    CHECK(weights[t] == weights[0]);
  }
#else
  MESSAGE("OpenMP disabled; single-threaded build is trivially deterministic");
#endif
}

TEST_CASE("laplacian_apply matches the dense matrix") {
  ComparisonGraph g(4, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}, {2, 3, 1}});
  const std::vector<double> w = {2.0, 1.0, 0.5, 3.0};
  // Dense L: L[i][i] = sum of incident weights, L[i][j] = -w(i,j).
  const double L[4][4] = {
      {3.0, -2.0, -1.0, 0.0},
      {-2.0, 2.5, -0.5, 0.0},
      {-1.0, -0.5, 4.5, -3.0},
      {0.0, 0.0, -3.0, 3.0},
  };
  const std::vector<double> x = {0.3, -1.2, 0.7, 2.1};
  std::vector<double> y(4);
  kernels::laplacian_apply(g, w.data(), x.data(), y.data());
  for (int i = 0; i < 4; ++i) {
    double want = 0.0;
    for (int j = 0; j < 4; ++j) want += L[i][j] * x[j];
    CHECK(y[i] == doctest::Approx(want).epsilon(1e-14));
  }
  // Constant vectors are in the kernel.
  const std::vector<double> ones = {1.0, 1.0, 1.0, 1.0};
  kernels::laplacian_apply(g, w.data(), ones.data(), y.data());
  for (int i = 0; i < 4; ++i) CHECK(std::fabs(y[i]) < 1e-14);
}

TEST_CASE("log-likelihood drops when scores are shuffled away from truth") {
  auto inst = random_instance("bt", {}, 60, 0.3, 5);
  const double at_truth =
      kernels::log_likelihood(*inst.model, inst.data, inst.u.data());
  std::vector<double> flipped = inst.u;
  for (auto& v : flipped) v = -v;
  const double at_flip =
      kernels::log_likelihood(*inst.model, inst.data, flipped.data());
  CHECK(at_truth > at_flip);
}
