#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "paircmp/graph.hpp"
#include "paircmp/mle.hpp"

namespace paircmp {

// Sampling probabilities and score ranges can be given either literally or
// as the standard expressions in the design size n.
struct ScalarExpr {
  enum class Kind {
    Literal,
    InvSqrtN,   // n^{-1/2}
    PTimesLogN, // p * log n   (q only)
    LogLogN,    // log log n   (M only)
  } kind = Kind::Literal;
  double value = 0.0;

  static ScalarExpr literal(double v) { return {Kind::Literal, v}; }
  double resolve(int n, double p_resolved = 0.0) const;
  std::string str() const;
};

// Parses a literal number or one of: "n^-1/2", "p*log n", "log log n"
// (tolerant of spacing/case; see str() for the canonical spellings).
ScalarExpr parse_scalar_expr(const std::string& text);

struct ExperimentConfig {
  std::string model;
  std::map<std::string, double> params;
  int n = 0;
  ScalarExpr M = ScalarExpr::literal(1.0);  // scores drawn from U[-M, M]
  ScalarExpr p = ScalarExpr::literal(0.0);
  ScalarExpr q = ScalarExpr::literal(0.0);
  EdgeProbabilityRule edge_rule = EdgeProbabilityRule::UniformOrdered;
  int replications = 300;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  int threads = 0;          // 0 = leave the OpenMP default alone
  bool fixed_scores = false;  // draw one score vector and reuse it
  int track_coordinate = 0;   // vertex whose z-score is recorded
  FitOptions fit;
};

struct ExperimentSummary {
  std::string model;
  int n = 0;
  double M = 0.0;           // resolved value
  double p = 0.0;
  double q = 0.0;
  int replications = 0;
  int failed = 0;           // replications with no converged fit
  double mean_sd = 0.0;     // average of sqrt(rho_i) over vertices and reps
  double coverage = 0.0;    // pooled CI coverage of the true scores
  std::vector<double> z_scores;  // tracked coordinate, successful reps in order
};

// Runs the replication loop (parallel over replications when OpenMP is on;
// per-replication seeds are derived with mix_seed, so results are identical
// for any thread count). Each replication draws scores ~ U[-M, M] (centered),
// samples a graph and outcomes, fits, and evaluates plug-in inference.
ExperimentSummary run_experiment(const ExperimentConfig& cfg);

// (theoretical, empirical) quantile pairs for a normal QQ plot.
std::vector<std::pair<double, double>> qq_data(const std::vector<double>& z);

// "model,n,M,p,q,replications,failed,mean_sd,coverage" rows.
void write_summary_csv(std::ostream& os, const std::vector<ExperimentSummary>& s);
void write_summary_csv(const std::string& path,
                       const std::vector<ExperimentSummary>& s);
// "replication,z" rows.
void write_zscores_csv(std::ostream& os, const ExperimentSummary& s);
void write_zscores_csv(const std::string& path, const ExperimentSummary& s);

// JSON (de)serialization of configs; see docs/config example in the README.
ExperimentConfig config_from_json_text(const std::string& text);
ExperimentConfig config_from_json_file(const std::string& path);
std::string config_to_json_text(const ExperimentConfig& cfg);

}  // namespace paircmp
