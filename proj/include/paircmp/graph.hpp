#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace paircmp {

// One compared pair, stored with i < j. multiplicity counts how many
// independent comparisons the pair carries.
struct Edge {
  int i = 0;
  int j = 0;
  int multiplicity = 1;
};

// Undirected comparison graph with multiplicities. Edges are kept sorted by
// (i, j); a CSR adjacency over distinct neighbors is built once so that
// per-vertex scans are cache-friendly and deterministic.
class ComparisonGraph {
 public:
  ComparisonGraph(int n, std::vector<Edge> edges);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  // Total comparisons, i.e. sum of multiplicities.
  long long num_comparisons() const { return comparisons_; }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[e]; }

  // Distinct neighbors of i, ascending.
  std::vector<int> neighborhood(int i) const;

  int degree(int i) const;
  // Comparisons incident to i (multiplicities included).
  long long comparison_degree(int i) const;

  // CSR access: for vertex v, entries k in [adj_offset(v), adj_offset(v+1))
  // give (adj_vertex(k), adj_edge(k)).
  int adj_offset(int v) const { return offsets_[v]; }
  int adj_vertex(int k) const { return adj_vertex_[k]; }
  int adj_edge(int k) const { return adj_edge_[k]; }

 private:
  void check_vertex(int v) const;

  int n_ = 0;
  long long comparisons_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> offsets_;
  std::vector<int> adj_vertex_;
  std::vector<int> adj_edge_;
};

// How the per-pair inclusion probability is formed when sampling.
//   UniformRandom  one draw p_ij ~ U[p, q] per unordered pair
//   ConstantP      every pair uses p
//   ConstantQ      every pair uses q
//   UniformOrdered two independent draws p1, p2 ~ U[p, q] (one per ordered
//                  pair) and the pair is kept with prob 1-(1-p1)(1-p2)
enum class EdgeProbabilityRule { UniformRandom, ConstantP, ConstantQ, UniformOrdered };

struct GraphSamplerConfig {
  int n = 0;
  double p = 0.0;
  double q = 0.0;
  EdgeProbabilityRule rule = EdgeProbabilityRule::UniformRandom;
  std::uint64_t seed = 0;
};

// Samples a simple graph (all multiplicities 1). RNG state is consumed in
// row-major pair order (i < j), so a seed pins the graph bit-for-bit.
ComparisonGraph sample_graph(const GraphSamplerConfig& cfg);

bool is_connected(const ComparisonGraph& g);

EdgeProbabilityRule edge_rule_from_string(const std::string& s);
std::string to_string(EdgeProbabilityRule rule);

// Text edge list: one "i j [multiplicity]" per line, '#' starts a comment.
void write_edge_list(std::ostream& os, const ComparisonGraph& g);
void write_edge_list(const std::string& path, const ComparisonGraph& g);
ComparisonGraph read_edge_list(std::istream& is);
ComparisonGraph read_edge_list_file(const std::string& path);

}  // namespace paircmp
