#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "paircmp/graph.hpp"
#include "paircmp/model.hpp"

namespace paircmp {

// Score vector u for the n items. Estimation identifies u only up to a
// shift, so most entry points want the centered (sum-zero) representation.
class LatentScores {
 public:
  static LatentScores centered(std::vector<double> u);
  static LatentScores raw(std::vector<double> u);

  int size() const { return static_cast<int>(u_.size()); }
  double operator[](int i) const { return u_[i]; }
  const std::vector<double>& values() const { return u_; }
  bool is_centered() const { return centered_; }

  double sum() const;
  // max_i u_i - min_i u_i
  double dynamic_range() const;

  LatentScores recentered() const;

 private:
  LatentScores(std::vector<double> u, bool centered)
      : u_(std::move(u)), centered_(centered) {}

  std::vector<double> u_;
  bool centered_ = false;
};

// Outcomes attached to a comparison graph. For edge e = (i, j) with i < j,
// units(e) holds multiplicity(e) outcomes oriented i-vs-j; outcome(j, i, k)
// returns the sign-flipped value.
class Dataset {
 public:
  Dataset(ComparisonGraph graph, std::vector<double> outcomes,
          OutcomeSupport support);

  const ComparisonGraph& graph() const { return graph_; }
  const OutcomeSupport& support() const { return support_; }

  int unit_begin(int e) const { return offsets_[e]; }
  int unit_end(int e) const { return offsets_[e + 1]; }
  double unit(int k) const { return outcomes_[k]; }
  long long num_outcomes() const { return static_cast<long long>(outcomes_.size()); }

  // Outcome of the k-th comparison of the (unordered) pair, seen from i's
  // side. Throws if the pair is not an edge.
  double outcome(int i, int j, int k = 0) const;

 private:
  ComparisonGraph graph_;
  std::vector<double> outcomes_;
  std::vector<int> offsets_;
  OutcomeSupport support_;
};

// Draws one outcome per comparison from f(.; u_i - u_j), edge by edge in
// stored order, then unit by unit; finite supports consume one uniform per
// comparison (inverse CDF), the cardinal family one normal.
Dataset sample_outcomes(const Model& m, const LatentScores& u,
                        const ComparisonGraph& g, std::uint64_t seed);

struct CsvDataset {
  Dataset data;
  // Vertex id -> original label, in order of first appearance.
  std::vector<std::string> labels;
};

// CSV with rows "label_i,label_j,outcome"; a leading "i,j,outcome" header is
// optional. Labels map to vertex ids in order of first appearance; repeated
// pairs accumulate multiplicity.
CsvDataset load_csv(std::istream& is, const OutcomeSupport& support);
CsvDataset load_csv_file(const std::string& path, const OutcomeSupport& support);
void save_csv(std::ostream& os, const Dataset& d,
              const std::vector<std::string>& labels = {});
void save_csv_file(const std::string& path, const Dataset& d,
                   const std::vector<std::string>& labels = {});

// Maps a raw best-of-3 match score to the 4-level ordinal outcome:
// "2:0" -> 2, "2:1" -> 1, "1:2" -> -1, "0:2" -> -2.
double map_match_scores(std::string_view raw);

}  // namespace paircmp
