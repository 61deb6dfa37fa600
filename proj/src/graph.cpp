#include "paircmp/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "paircmp/errors.hpp"
#include "paircmp/rng.hpp"

namespace paircmp {

ComparisonGraph::ComparisonGraph(int n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
  if (n_ < 1) throw InvalidParameter("graph needs at least one vertex");
  for (auto& e : edges_) {
    if (e.i < 0 || e.i >= n_) throw VertexOutOfRange(e.i, n_);
    if (e.j < 0 || e.j >= n_) throw VertexOutOfRange(e.j, n_);
    if (e.i == e.j)
      throw SelfComparison("self comparison at vertex " + std::to_string(e.i));
    if (e.i > e.j) std::swap(e.i, e.j);
    if (e.multiplicity < 1)
      throw InvalidParameter("edge multiplicity must be positive");
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.i < b.i || (a.i == b.i && a.j < b.j);
  });
  for (std::size_t k = 1; k < edges_.size(); ++k)
    if (edges_[k].i == edges_[k - 1].i && edges_[k].j == edges_[k - 1].j)
      throw InvalidParameter("duplicate pair (" + std::to_string(edges_[k].i) + "," +
                  std::to_string(edges_[k].j) + "); merge multiplicities instead");

  offsets_.assign(n_ + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.i + 1];
    ++offsets_[e.j + 1];
    comparisons_ += e.multiplicity;
  }
  for (int v = 0; v < n_; ++v) offsets_[v + 1] += offsets_[v];
  adj_vertex_.resize(offsets_[n_]);
  adj_edge_.resize(offsets_[n_]);
  std::vector<int> cursor(offsets_.begin(), offsets_.end() - 1);
  for (int e = 0; e < num_edges(); ++e) {
    const auto& ed = edges_[e];
    adj_vertex_[cursor[ed.i]] = ed.j;
    adj_edge_[cursor[ed.i]++] = e;
    adj_vertex_[cursor[ed.j]] = ed.i;
    adj_edge_[cursor[ed.j]++] = e;
  }
  // Edges are sorted, so each vertex's neighbor run is already ascending for
  // the i side; the j side needs a per-vertex sort.
  for (int v = 0; v < n_; ++v) {
    std::vector<std::pair<int, int>> run;
    for (int k = offsets_[v]; k < offsets_[v + 1]; ++k)
      run.emplace_back(adj_vertex_[k], adj_edge_[k]);
    std::sort(run.begin(), run.end());
    for (int k = offsets_[v]; k < offsets_[v + 1]; ++k) {
      adj_vertex_[k] = run[k - offsets_[v]].first;
      adj_edge_[k] = run[k - offsets_[v]].second;
    }
  }
}

void ComparisonGraph::check_vertex(int v) const {
  if (v < 0 || v >= n_) throw VertexOutOfRange(v, n_);
}

std::vector<int> ComparisonGraph::neighborhood(int i) const {
  check_vertex(i);
  return {adj_vertex_.begin() + offsets_[i], adj_vertex_.begin() + offsets_[i + 1]};
}

int ComparisonGraph::degree(int i) const {
  check_vertex(i);
  return offsets_[i + 1] - offsets_[i];
}

long long ComparisonGraph::comparison_degree(int i) const {
  check_vertex(i);
  long long total = 0;
  for (int k = offsets_[i]; k < offsets_[i + 1]; ++k)
    total += edges_[adj_edge_[k]].multiplicity;
  return total;
}

ComparisonGraph sample_graph(const GraphSamplerConfig& cfg) {
  if (cfg.n < 1) throw InvalidParameter("sample_graph: n must be >= 1");
  if (!(cfg.p >= 0.0 && cfg.p <= 1.0) || !(cfg.q >= 0.0 && cfg.q <= 1.0))
    throw InvalidProbability("edge probabilities must lie in [0,1]");
  if (cfg.p > cfg.q)
    throw InvalidProbability("need p <= q for the sampling band");

  Rng rng(cfg.seed);
  std::vector<Edge> edges;
  for (int i = 0; i < cfg.n; ++i) {
    for (int j = i + 1; j < cfg.n; ++j) {
      double prob;
      switch (cfg.rule) {
        case EdgeProbabilityRule::UniformRandom:
          prob = rng.uniform(cfg.p, cfg.q);
          break;
        case EdgeProbabilityRule::ConstantP:
          prob = cfg.p;
          break;
        case EdgeProbabilityRule::ConstantQ:
          prob = cfg.q;
          break;
        case EdgeProbabilityRule::UniformOrdered: {
          const double p1 = rng.uniform(cfg.p, cfg.q);
          const double p2 = rng.uniform(cfg.p, cfg.q);
          prob = 1.0 - (1.0 - p1) * (1.0 - p2);
          break;
        }
        default:
          throw Error("unknown edge rule");
      }
      if (rng.next_double() < prob) edges.push_back({i, j, 1});
    }
  }
  return ComparisonGraph(cfg.n, std::move(edges));
}

bool is_connected(const ComparisonGraph& g) {
  const int n = g.num_vertices();
  std::vector<char> seen(n, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int found = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int k = g.adj_offset(v); k < g.adj_offset(v + 1); ++k) {
      const int w = g.adj_vertex(k);
      if (!seen[w]) {
        seen[w] = 1;
        ++found;
        stack.push_back(w);
      }
    }
  }
  return found == n;
}

EdgeProbabilityRule edge_rule_from_string(const std::string& s) {
  if (s == "uniform-random" || s == "uniform") return EdgeProbabilityRule::UniformRandom;
  if (s == "constant-p") return EdgeProbabilityRule::ConstantP;
  if (s == "constant-q") return EdgeProbabilityRule::ConstantQ;
  if (s == "uniform-ordered" || s == "ordered-union")
    return EdgeProbabilityRule::UniformOrdered;
  throw InvalidParameter("unknown edge rule: " + s);
}

std::string to_string(EdgeProbabilityRule rule) {
  switch (rule) {
    case EdgeProbabilityRule::UniformRandom: return "uniform-random";
    case EdgeProbabilityRule::ConstantP: return "constant-p";
    case EdgeProbabilityRule::ConstantQ: return "constant-q";
    case EdgeProbabilityRule::UniformOrdered: return "uniform-ordered";
  }
  return "?";
}

void write_edge_list(std::ostream& os, const ComparisonGraph& g) {
  os << "# " << g.num_vertices() << " vertices, " << g.num_edges() << " edges\n";
  os << "# i j multiplicity\n";
  for (const auto& e : g.edges())
    os << e.i << ' ' << e.j << ' ' << e.multiplicity << '\n';
}

void write_edge_list(const std::string& path, const ComparisonGraph& g) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path + " for writing");
  write_edge_list(os, g);
}

ComparisonGraph read_edge_list(std::istream& is) {
  std::vector<Edge> edges;
  int max_vertex = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    int i, j;
    if (!(ls >> i)) continue;  // blank or comment-only line
    if (!(ls >> j))
      throw ParseError("edge list line " + std::to_string(lineno) +
                       ": expected \"i j [multiplicity]\"");
    int mult = 1;
    ls >> mult;
    std::string rest;
    if (ls >> rest)
      throw ParseError("edge list line " + std::to_string(lineno) +
                       ": trailing content \"" + rest + "\"");
    edges.push_back({i, j, mult});
    max_vertex = std::max({max_vertex, i, j});
  }
  if (max_vertex < 0) throw ParseError("edge list contains no edges");
  return ComparisonGraph(max_vertex + 1, std::move(edges));
}

ComparisonGraph read_edge_list_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open " + path);
  return read_edge_list(is);
}

}  // namespace paircmp
