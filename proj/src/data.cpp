#include "paircmp/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "paircmp/errors.hpp"
#include "paircmp/rng.hpp"

namespace paircmp {

LatentScores LatentScores::centered(std::vector<double> u) {
  if (u.empty()) throw EmptyInput("scores must be nonempty");
  const double mean =
      std::accumulate(u.begin(), u.end(), 0.0) / static_cast<double>(u.size());
  for (double& v : u) v -= mean;
  return LatentScores(std::move(u), true);
}

LatentScores LatentScores::raw(std::vector<double> u) {
  if (u.empty()) throw EmptyInput("scores must be nonempty");
  return LatentScores(std::move(u), false);
}

double LatentScores::sum() const {
  return std::accumulate(u_.begin(), u_.end(), 0.0);
}

double LatentScores::dynamic_range() const {
  const auto [lo, hi] = std::minmax_element(u_.begin(), u_.end());
  return *hi - *lo;
}

LatentScores LatentScores::recentered() const {
  return LatentScores::centered(u_);
}

Dataset::Dataset(ComparisonGraph graph, std::vector<double> outcomes,
                 OutcomeSupport support)
    : graph_(std::move(graph)),
      outcomes_(std::move(outcomes)),
      support_(std::move(support)) {
  if (static_cast<long long>(outcomes_.size()) != graph_.num_comparisons())
    throw DimensionMismatch("outcome count " + std::to_string(outcomes_.size()) +
                            " does not match comparison count " +
                            std::to_string(graph_.num_comparisons()));
  for (double x : outcomes_)
    if (!support_.contains(x)) throw OutcomeNotInSupport(x);
  offsets_.assign(graph_.num_edges() + 1, 0);
  for (int e = 0; e < graph_.num_edges(); ++e)
    offsets_[e + 1] = offsets_[e] + graph_.edge(e).multiplicity;
}

double Dataset::outcome(int i, int j, int k) const {
  if (i == j) throw SelfComparison("outcome(i,i) is undefined");
  const int lo = std::min(i, j);
  const int hi = std::max(i, j);
  // Binary search the sorted edge array.
  const auto& edges = graph_.edges();
  auto it = std::lower_bound(
      edges.begin(), edges.end(), std::make_pair(lo, hi),
      [](const Edge& e, const std::pair<int, int>& key) {
        return e.i < key.first || (e.i == key.first && e.j < key.second);
      });
  if (it == edges.end() || it->i != lo || it->j != hi)
    throw Error("pair (" + std::to_string(i) + "," + std::to_string(j) +
                ") is not compared");
  const int e = static_cast<int>(it - edges.begin());
  if (k < 0 || k >= it->multiplicity)
    throw Error("comparison index " + std::to_string(k) + " out of range");
  const double x = outcomes_[offsets_[e] + k];
  return i == lo ? x : -x;
}

Dataset sample_outcomes(const Model& m, const LatentScores& u,
                        const ComparisonGraph& g, std::uint64_t seed) {
  if (u.size() != g.num_vertices())
    throw DimensionMismatch("score vector size does not match graph order");
  Rng rng(seed);
  std::vector<double> outcomes;
  outcomes.reserve(static_cast<std::size_t>(g.num_comparisons()));
  const bool finite = m.support().is_finite();
  const auto& values = m.support().values();
  for (const auto& e : g.edges()) {
    const double gap = u[e.i] - u[e.j];
    for (int k = 0; k < e.multiplicity; ++k) {
      if (finite) {
        const double r = rng.next_double();
        double acc = 0.0;
        double x = values.back();
        for (double v : values) {
          acc += m.pdf(v, gap);
          if (r < acc) {
            x = v;
            break;
          }
        }
        outcomes.push_back(x);
      } else {
        outcomes.push_back(m.quad_center(gap) + m.quad_scale() * rng.normal());
      }
    }
  }
  return Dataset(g, std::move(outcomes), m.support());
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_outcome(const std::string& field, int lineno) {
  const std::string t = trim(field);
  std::size_t used = 0;
  double x;
  try {
    x = std::stod(t, &used);
  } catch (const std::exception&) {
    throw ParseError("csv line " + std::to_string(lineno) +
                     ": cannot parse outcome \"" + field + "\"");
  }
  if (used != t.size())
    throw ParseError("csv line " + std::to_string(lineno) +
                     ": trailing content in outcome \"" + field + "\"");
  return x;
}

}  // namespace

CsvDataset load_csv(std::istream& is, const OutcomeSupport& support) {
  std::vector<std::string> labels;
  std::map<std::string, int> ids;
  // Per unordered pair: edge slot in first-appearance order.
  std::map<std::pair<int, int>, int> slot_of;
  std::vector<std::pair<int, int>> pair_of_slot;
  std::vector<std::vector<double>> units_of_slot;

  auto vertex_id = [&](const std::string& label) {
    auto [it, inserted] = ids.try_emplace(label, static_cast<int>(labels.size()));
    if (inserted) labels.push_back(label);
    return it->second;
  };

  std::string line;
  int lineno = 0;
  bool first_content = true;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ls(t);
    std::string field;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() != 3)
      throw ParseError("csv line " + std::to_string(lineno) +
                       ": expected 3 fields, got " + std::to_string(fields.size()));
    if (first_content) {
      first_content = false;
      std::string h0 = trim(fields[0]), h1 = trim(fields[1]), h2 = trim(fields[2]);
      std::transform(h2.begin(), h2.end(), h2.begin(), ::tolower);
      if (h2 == "outcome") continue;  // header row
    }
    const std::string li = trim(fields[0]);
    const std::string lj = trim(fields[1]);
    if (li == lj)
      throw SelfComparison("csv line " + std::to_string(lineno) +
                           ": item \"" + li + "\" compared to itself");
    double x = parse_outcome(fields[2], lineno);
    if (!support.contains(x)) throw OutcomeNotInSupport(x);
    int a = vertex_id(li);
    int b = vertex_id(lj);
    if (a > b) {
      std::swap(a, b);
      x = -x;
    }
    auto [it, inserted] = slot_of.try_emplace({a, b}, static_cast<int>(pair_of_slot.size()));
    if (inserted) {
      pair_of_slot.push_back({a, b});
      units_of_slot.emplace_back();
    }
    units_of_slot[it->second].push_back(x);
  }
  if (pair_of_slot.empty()) throw EmptyInput("csv contains no comparisons");

  std::vector<Edge> edges;
  edges.reserve(pair_of_slot.size());
  for (std::size_t s = 0; s < pair_of_slot.size(); ++s)
    edges.push_back({pair_of_slot[s].first, pair_of_slot[s].second,
                     static_cast<int>(units_of_slot[s].size())});
  ComparisonGraph g(static_cast<int>(labels.size()), std::move(edges));
  // The graph sorts edges by (i, j); lay the outcomes out to match.
  std::vector<double> outcomes;
  for (const auto& e : g.edges()) {
    const int s = slot_of.at({e.i, e.j});
    for (double x : units_of_slot[s]) outcomes.push_back(x);
  }
  return CsvDataset{Dataset(std::move(g), std::move(outcomes), support),
                    std::move(labels)};
}

CsvDataset load_csv_file(const std::string& path, const OutcomeSupport& support) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open " + path);
  return load_csv(is, support);
}

void save_csv(std::ostream& os, const Dataset& d,
              const std::vector<std::string>& labels) {
  const auto& g = d.graph();
  if (!labels.empty() && static_cast<int>(labels.size()) != g.num_vertices())
    throw DimensionMismatch("label count does not match graph order");
  auto name = [&](int v) {
    return labels.empty() ? std::to_string(v) : labels[v];
  };
  os << "i,j,outcome\n";
  char buf[40];
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    for (int k = d.unit_begin(e); k < d.unit_end(e); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", d.unit(k));
      os << name(ed.i) << ',' << name(ed.j) << ',' << buf << '\n';
    }
  }
}

void save_csv_file(const std::string& path, const Dataset& d,
                   const std::vector<std::string>& labels) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path + " for writing");
  save_csv(os, d, labels);
}

double map_match_scores(std::string_view raw) {
  std::string s = trim(std::string(raw));
  if (s == "2:0") return 2.0;
  if (s == "2:1") return 1.0;
  if (s == "1:2") return -1.0;
  if (s == "0:2") return -2.0;
  throw UnrecognizedScore(s);
}

}  // namespace paircmp
