#include "paircmp/simulation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <json.hpp>

#include "paircmp/errors.hpp"
#include "paircmp/inference.hpp"
#include "paircmp/normal.hpp"
#include "paircmp/rng.hpp"

namespace paircmp {

double ScalarExpr::resolve(int n, double p_resolved) const {
  switch (kind) {
    case Kind::Literal: return value;
    case Kind::InvSqrtN: return 1.0 / std::sqrt(static_cast<double>(n));
    case Kind::PTimesLogN: return p_resolved * std::log(static_cast<double>(n));
    case Kind::LogLogN: return std::log(std::log(static_cast<double>(n)));
  }
  throw Error("bad scalar expression");
}

std::string ScalarExpr::str() const {
  switch (kind) {
    case Kind::Literal: {
      std::ostringstream os;
      os << value;
      return os.str();
    }
    case Kind::InvSqrtN: return "n^-1/2";
    case Kind::PTimesLogN: return "p*log n";
    case Kind::LogLogN: return "log log n";
  }
  return "?";
}

ScalarExpr parse_scalar_expr(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)))
      s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s.empty()) throw ConfigInvalid("empty expression");
  if (s == "n^-1/2" || s == "n^{-1/2}" || s == "1/sqrt(n)" || s == "n^(-1/2)")
    return {ScalarExpr::Kind::InvSqrtN, 0.0};
  if (s == "p*logn" || s == "plogn" || s == "p*log(n)")
    return {ScalarExpr::Kind::PTimesLogN, 0.0};
  if (s == "loglogn" || s == "log(log(n))" || s == "loglog(n)" || s == "loglog")
    return {ScalarExpr::Kind::LogLogN, 0.0};
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return ScalarExpr::literal(v);
  } catch (const std::exception&) {
  }
  throw ConfigInvalid("cannot parse expression \"" + text + "\"");
}

namespace {

struct RepOutcome {
  bool failed = true;
  double sd_sum = 0.0;
  long long covered = 0;
  double z = 0.0;
};

}  // namespace

ExperimentSummary run_experiment(const ExperimentConfig& cfg) {
  if (cfg.n < 2) throw ConfigInvalid("experiment needs n >= 2");
  if (cfg.replications < 1) throw ConfigInvalid("experiment needs replications >= 1");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw InvalidAlpha(cfg.alpha);
  if (cfg.track_coordinate < 0 || cfg.track_coordinate >= cfg.n)
    throw ConfigInvalid("track_coordinate out of range");

  const auto model = make_model(cfg.model, cfg.params);
  const int n = cfg.n;
  const double p = cfg.p.resolve(n);
  const double q = cfg.q.resolve(n, p);
  const double M = cfg.M.resolve(n);
  if (!(M >= 0.0)) throw ConfigInvalid("M must resolve to a nonnegative value");
  const double zcrit = two_sided_z(cfg.alpha);

  // Stream ids for seed derivation; replication r uses streams (3r+1..3r+3).
  auto scores_for = [&](std::uint64_t stream) {
    Rng rng(mix_seed(cfg.seed, stream));
    std::vector<double> u(n);
    for (int i = 0; i < n; ++i) u[i] = rng.uniform(-M, M);
    return LatentScores::centered(std::move(u));
  };
  // Stream 0 is reserved for the shared score vector in fixed mode.
  std::optional<LatentScores> fixed_u;
  if (cfg.fixed_scores) fixed_u = scores_for(0);

#ifdef _OPENMP
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif

  const int R = cfg.replications;
  std::vector<RepOutcome> reps(R);
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < R; ++r) {
    const std::uint64_t base = 3ull * static_cast<std::uint64_t>(r);
    const LatentScores u =
        cfg.fixed_scores ? *fixed_u : scores_for(base + 1);
    GraphSamplerConfig gcfg;
    gcfg.n = n;
    gcfg.p = p;
    gcfg.q = q;
    gcfg.rule = cfg.edge_rule;
    gcfg.seed = mix_seed(cfg.seed, base + 2);
    const ComparisonGraph graph = sample_graph(gcfg);
    if (!is_connected(graph)) continue;  // failed replication

    const Dataset data =
        sample_outcomes(*model, u, graph, mix_seed(cfg.seed, base + 3));
    const FitResult fitres = fit(*model, data, cfg.fit);
    if (fitres.status != FitStatus::Converged) continue;

    const VarianceEstimate var = plugin_variance(*model, data, fitres.u_hat);
    RepOutcome& out = reps[r];
    out.failed = false;
    for (int i = 0; i < n; ++i) {
      const double sd = std::sqrt(var.rho[i]);
      out.sd_sum += sd;
      if (std::fabs(fitres.u_hat[i] - u[i]) <= zcrit * sd) ++out.covered;
    }
    const int c = cfg.track_coordinate;
    out.z = (fitres.u_hat[c] - u[c]) / std::sqrt(var.rho[c]);
  }

  ExperimentSummary s;
  s.model = cfg.model;
  s.n = n;
  s.M = M;
  s.p = p;
  s.q = q;
  s.replications = R;
  double sd_total = 0.0;
  long long covered = 0;
  long long cells = 0;
  for (const auto& rep : reps) {
    if (rep.failed) {
      ++s.failed;
      continue;
    }
    sd_total += rep.sd_sum;
    covered += rep.covered;
    cells += n;
    s.z_scores.push_back(rep.z);
  }
  if (cells > 0) {
    s.mean_sd = sd_total / static_cast<double>(cells);
    s.coverage = static_cast<double>(covered) / static_cast<double>(cells);
  }
  return s;
}

std::vector<std::pair<double, double>> qq_data(const std::vector<double>& z) {
  if (z.empty()) throw EmptyInput("qq_data: no z-scores");
  std::vector<double> sorted = z;
  std::sort(sorted.begin(), sorted.end());
  const int m = static_cast<int>(sorted.size());
  std::vector<std::pair<double, double>> pts;
  pts.reserve(m);
  for (int k = 0; k < m; ++k)
    pts.emplace_back(norm_quantile((k + 0.5) / m), sorted[k]);
  return pts;
}

namespace {

void summary_row(std::ostream& os, const ExperimentSummary& s) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s,%d,%.17g,%.17g,%.17g,%d,%d,%.17g,%.17g",
                s.model.c_str(), s.n, s.M, s.p, s.q, s.replications, s.failed,
                s.mean_sd, s.coverage);
  os << buf << '\n';
}

}  // namespace

void write_summary_csv(std::ostream& os, const std::vector<ExperimentSummary>& rows) {
  os << "model,n,M,p,q,replications,failed,mean_sd,coverage\n";
  for (const auto& s : rows) summary_row(os, s);
}

void write_summary_csv(const std::string& path,
                       const std::vector<ExperimentSummary>& rows) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path + " for writing");
  write_summary_csv(os, rows);
}

void write_zscores_csv(std::ostream& os, const ExperimentSummary& s) {
  os << "replication,z\n";
  char buf[64];
  for (std::size_t k = 0; k < s.z_scores.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g", k + 1, s.z_scores[k]);
    os << buf << '\n';
  }
}

void write_zscores_csv(const std::string& path, const ExperimentSummary& s) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path + " for writing");
  write_zscores_csv(os, s);
}

namespace {

ScalarExpr expr_from_json(const nlohmann::json& j, const char* key) {
  if (j.is_number()) return ScalarExpr::literal(j.get<double>());
  if (j.is_string()) return parse_scalar_expr(j.get<std::string>());
  throw ConfigInvalid(std::string("field ") + key +
                      " must be a number or an expression string");
}

}  // namespace

ExperimentConfig config_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigInvalid(std::string("config is not valid JSON: ") + e.what());
  }
  ExperimentConfig cfg;
  try {
    cfg.model = j.at("model").get<std::string>();
    cfg.n = j.at("n").get<int>();
    cfg.p = expr_from_json(j.at("p"), "p");
    cfg.q = expr_from_json(j.at("q"), "q");
    if (j.contains("M")) cfg.M = expr_from_json(j.at("M"), "M");
    if (j.contains("params"))
      for (const auto& [k, v] : j.at("params").items())
        cfg.params[k] = v.get<double>();
    if (j.contains("replications")) cfg.replications = j.at("replications").get<int>();
    if (j.contains("alpha")) cfg.alpha = j.at("alpha").get<double>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
    if (j.contains("edge_rule")) {
      try {
        cfg.edge_rule = edge_rule_from_string(j.at("edge_rule").get<std::string>());
      } catch (const InvalidParameter& e) {
        throw ConfigInvalid(e.what());
      }
    }
    if (j.contains("fixed_scores")) cfg.fixed_scores = j.at("fixed_scores").get<bool>();
    if (j.contains("track_coordinate"))
      cfg.track_coordinate = j.at("track_coordinate").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigInvalid(std::string("bad config field: ") + e.what());
  }
  return cfg;
}

ExperimentConfig config_from_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return config_from_json_text(buf.str());
}

std::string config_to_json_text(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["model"] = cfg.model;
  if (!cfg.params.empty()) j["params"] = cfg.params;
  j["n"] = cfg.n;
  auto expr = [](const ScalarExpr& e) -> nlohmann::json {
    if (e.kind == ScalarExpr::Kind::Literal) return e.value;
    return e.str();
  };
  j["p"] = expr(cfg.p);
  j["q"] = expr(cfg.q);
  j["M"] = expr(cfg.M);
  j["edge_rule"] = to_string(cfg.edge_rule);
  j["replications"] = cfg.replications;
  j["alpha"] = cfg.alpha;
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  j["fixed_scores"] = cfg.fixed_scores;
  j["track_coordinate"] = cfg.track_coordinate;
  return j.dump(2);
}

}  // namespace paircmp
