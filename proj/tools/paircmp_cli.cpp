// Command line front end: validate | graphgen | fit | infer | simulate.
// Exit codes: 0 success, 1 runtime/data failure, 2 usage error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "paircmp/data.hpp"
#include "paircmp/errors.hpp"
#include "paircmp/graph.hpp"
#include "paircmp/inference.hpp"
#include "paircmp/json_io.hpp"
#include "paircmp/mle.hpp"
#include "paircmp/model.hpp"
#include "paircmp/normal.hpp"
#include "paircmp/simulation.hpp"
#include "paircmp/validation.hpp"

namespace {

using namespace paircmp;

constexpr int kOk = 0;
constexpr int kRuntime = 1;
constexpr int kUsage = 2;

// Outputs land under their final name only once fully written.
void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp(path + ".tmp");
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot open " + tmp.string() + " for writing");
    os << content;
    os.flush();
    if (!os) throw Error("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot move " + tmp.string() + " to " + path);
  }
}

std::map<std::string, double> parse_params(const std::string& spec) {
  std::map<std::string, double> out;
  if (spec.empty()) return out;
  std::istringstream is(spec);
  std::string item;
  while (std::getline(is, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw InvalidParameter("--params expects key=value[,key=value...], got \"" +
                             item + "\"");
    const std::string key = item.substr(0, eq);
    try {
      std::size_t used = 0;
      const double val = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(item);
      out[key] = val;
    } catch (const std::exception&) {
      throw InvalidParameter("--params value for \"" + key + "\" is not a number");
    }
  }
  return out;
}

std::pair<int, int> parse_test_pair(const std::string& spec) {
  int i = 0, j = 0;
  char extra = 0;
  if (std::sscanf(spec.c_str(), "%d,%d%c", &i, &j, &extra) != 2)
    throw InvalidParameter("--test expects \"i,j\", got \"" + spec + "\"");
  return {i, j};
}

int report_usage(const std::exception& e) {
  std::cerr << "error: " << e.what() << "\n";
  return kUsage;
}

int report_runtime(const std::exception& e) {
  std::cerr << "error: " << e.what() << "\n";
  return kRuntime;
}

struct ValidateArgs {
  std::string model;
  std::string params;
  double M = 5.0;
  double grid_step = 0.01;
  double n = 0.0;
  double p = 0.0;
  double q = 0.0;
  std::string out;
};

int run_validate(const ValidateArgs& a) {
  std::unique_ptr<const Model> m;
  try {
    m = make_model(a.model, parse_params(a.params));
    if (!(a.M > 0.0)) throw InvalidParameter("--M must be positive");
    if (!(a.grid_step > 0.0)) throw InvalidParameter("--grid-step must be positive");
  } catch (const Error& e) {
    return report_usage(e);
  }
  try {
    const auto report = validate_model(*m, symmetric_grid(a.M, a.grid_step));
    const auto constants = model_constants(*m, a.M, a.grid_step);
    nlohmann::json j;
    j["validation"] = to_json(report);
    j["constants"] = to_json(constants);
    if (a.n > 0.0) j["condition"] = to_json(condition_report(constants, a.n, a.p, a.q));
    const std::string text = j.dump(2) + "\n";
    if (a.out.empty()) {
      std::cout << text;
    } else {
      write_file_atomic(a.out, text);
      std::cout << (report.all_pass() ? "all axioms pass" : "AXIOM FAILURE")
                << "; report written to " << a.out << "\n";
    }
    return report.all_pass() ? kOk : kRuntime;
  } catch (const std::exception& e) {
    return report_runtime(e);
  }
}

struct GraphgenArgs {
  int n = 0;
  double p = 0.0;
  std::optional<double> q;
  std::string rule = "uniform-random";
  std::uint64_t seed = 0;
  std::string out;
};

int run_graphgen(const GraphgenArgs& a) {
  GraphSamplerConfig cfg;
  ComparisonGraph g(1, {});
  try {
    cfg.n = a.n;
    cfg.p = a.p;
    cfg.q = a.q.value_or(a.p);
    cfg.rule = edge_rule_from_string(a.rule);
    cfg.seed = a.seed;
    g = sample_graph(cfg);
  } catch (const Error& e) {
    return report_usage(e);
  }
  try {
    if (a.out.empty()) {
      write_edge_list(std::cout, g);
    } else {
      std::ostringstream os;
      write_edge_list(os, g);
      write_file_atomic(a.out, os.str());
      std::cout << "n=" << g.num_vertices() << " edges=" << g.num_edges()
                << " connected=" << (is_connected(g) ? "yes" : "no") << " -> "
                << a.out << "\n";
    }
    return kOk;
  } catch (const std::exception& e) {
    return report_runtime(e);
  }
}

struct FitArgs {
  std::string model;
  std::string params;
  std::string data;
  std::string out;
  std::string solver = "auto";
  int max_iter = 200;
  double tol = 1e-10;
};

int run_fit(const FitArgs& a) {
  std::unique_ptr<const Model> m;
  FitOptions opts;
  try {
    m = make_model(a.model, parse_params(a.params));
    if (a.solver == "auto")
      opts.solver = FitOptions::Solver::Auto;
    else if (a.solver == "dense")
      opts.solver = FitOptions::Solver::Dense;
    else if (a.solver == "cg")
      opts.solver = FitOptions::Solver::Cg;
    else
      throw InvalidParameter("--solver must be auto, dense or cg");
    if (a.max_iter < 1) throw InvalidParameter("--max-iter must be >= 1");
    if (!(a.tol > 0.0)) throw InvalidParameter("--tol must be positive");
    opts.max_iter = a.max_iter;
    opts.grad_tol = a.tol;
  } catch (const Error& e) {
    return report_usage(e);
  }
  try {
    const auto loaded = load_csv_file(a.data, m->support());
    const auto res = fit(*m, loaded.data, opts);
    nlohmann::json j = to_json(res);
    j["labels"] = loaded.labels;
    j["model"] = m->name();
    const std::string text = j.dump(2) + "\n";
    if (a.out.empty()) {
      std::cout << text;
    } else {
      write_file_atomic(a.out, text);
      std::cout << "status=" << to_string(res.status)
                << " loglik=" << res.loglik << " iterations=" << res.iterations
                << " -> " << a.out << "\n";
    }
    return kOk;
  } catch (const std::exception& e) {
    return report_runtime(e);
  }
}

struct InferArgs {
  std::string model;
  std::string params;
  std::string data;
  std::string fit;
  double alpha = 0.05;
  std::vector<std::string> tests;
  bool bh = false;
  std::string out;
};

int run_infer(const InferArgs& a) {
  std::unique_ptr<const Model> m;
  std::vector<std::pair<int, int>> pairs;
  try {
    m = make_model(a.model, parse_params(a.params));
    two_sided_z(a.alpha);  // validates alpha up front
    for (const auto& spec : a.tests) pairs.push_back(parse_test_pair(spec));
  } catch (const Error& e) {
    return report_usage(e);
  }
  try {
    const auto loaded = load_csv_file(a.data, m->support());
    std::ifstream fin(a.fit);
    if (!fin) throw Error("cannot open " + a.fit);
    nlohmann::json fj;
    try {
      fin >> fj;
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(a.fit + " is not valid JSON: " + e.what());
    }
    // Only the scores (and an optional rho override) matter here, so accept
    // hand-written fit files, not just the fit verb's full output.
    std::vector<double> u_raw;
    try {
      u_raw = fj.at("u_hat").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(a.fit + ": " + e.what());
    }
    const LatentScores u_hat = LatentScores::raw(std::move(u_raw));
    const int n = loaded.data.graph().num_vertices();
    if (u_hat.size() != n)
      throw DimensionMismatch("fit has " + std::to_string(u_hat.size()) +
                              " scores but the data has " + std::to_string(n) +
                              " items");

    VarianceEstimate var;
    if (fj.contains("rho")) {
      var.rho = fj.at("rho").get<std::vector<double>>();
      var.source = VarianceSource::PlugIn;
      if (static_cast<int>(var.rho.size()) != n)
        throw DimensionMismatch("rho length does not match the data");
    } else {
      var = plugin_variance(*m, loaded.data, u_hat);
    }

    std::vector<TestResult> tests;
    for (auto [i, j] : pairs) {
      try {
        tests.push_back(z_test_difference(i, j, u_hat, var));
      } catch (const VertexOutOfRange& e) {
        return report_usage(e);
      } catch (const SelfComparison& e) {
        return report_usage(e);
      }
    }
    std::vector<bool> rejected(tests.size(), false);
    if (a.bh) {
      std::vector<double> pvals;
      for (const auto& t : tests) pvals.push_back(t.p);
      for (int idx : benjamini_hochberg(pvals, a.alpha)) rejected[idx] = true;
    } else {
      for (std::size_t k = 0; k < tests.size(); ++k)
        rejected[k] = tests[k].p < a.alpha;
    }

    nlohmann::json j = inference_report_json(u_hat, var, a.alpha, tests,
                                             rejected);
    j["labels"] = loaded.labels;
    j["correction"] = a.bh ? "benjamini-hochberg" : "none";
    const std::string text = j.dump(2) + "\n";
    if (a.out.empty()) {
      std::cout << text;
    } else {
      write_file_atomic(a.out, text);
      std::cout << "vertices=" << n << " tests=" << tests.size() << " -> "
                << a.out << "\n";
    }
    return kOk;
  } catch (const std::exception& e) {
    return report_runtime(e);
  }
}

struct SimulateArgs {
  std::string config;
  std::string out;
  std::string zout;
  std::optional<int> replications;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

int run_simulate(const SimulateArgs& a) {
  try {
    auto cfg = config_from_json_file(a.config);
    if (a.replications) cfg.replications = *a.replications;
    if (a.seed) cfg.seed = *a.seed;
    if (a.threads) cfg.threads = *a.threads;
    const auto s = run_experiment(cfg);
    char line[256];
    std::snprintf(line, sizeof line,
                  "model=%s n=%d M=%g p=%g q=%g replications=%d failed=%d "
                  "mean_sd=%.6f coverage=%.6f",
                  s.model.c_str(), s.n, s.M, s.p, s.q, s.replications, s.failed,
                  s.mean_sd, s.coverage);
    std::cout << line << "\n";
    if (!a.out.empty()) {
      std::ostringstream os;
      write_summary_csv(os, {s});
      write_file_atomic(a.out, os.str());
    }
    if (!a.zout.empty()) {
      std::ostringstream os;
      write_zscores_csv(os, s);
      write_file_atomic(a.zout, os.str());
    }
    return kOk;
  } catch (const std::exception& e) {
    return report_runtime(e);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pairwise comparison models: fitting, inference, simulation"};
  app.require_subcommand(1);

  ValidateArgs va;
  auto* validate = app.add_subcommand(
      "validate", "check the model axioms and report its constants");
  validate->add_option("--model", va.model, "model name")->required();
  validate->add_option("--params", va.params, "model parameters, key=value[,...]");
  validate->add_option("--M", va.M, "score range bound for the constants");
  validate->add_option("--grid-step", va.grid_step, "gap grid resolution");
  validate->add_option("--n", va.n, "design size for the condition report");
  validate->add_option("--p", va.p, "lower sampling probability");
  validate->add_option("--q", va.q, "upper sampling probability");
  validate->add_option("--out", va.out, "write the JSON report here");

  GraphgenArgs ga;
  auto* graphgen =
      app.add_subcommand("graphgen", "sample a comparison graph to an edge list");
  graphgen->add_option("--n", ga.n, "number of vertices")->required();
  graphgen->add_option("--p", ga.p, "lower sampling probability")->required();
  graphgen->add_option("--q", ga.q, "upper sampling probability (default: p)");
  graphgen->add_option("--rule", ga.rule,
                       "uniform-random | constant-p | constant-q | uniform-ordered");
  graphgen->add_option("--seed", ga.seed, "RNG seed");
  graphgen->add_option("--out", ga.out, "output path (default: stdout)");

  FitArgs fa;
  auto* fitcmd = app.add_subcommand("fit", "maximum likelihood scores from a CSV");
  fitcmd->add_option("--model", fa.model, "model name")->required();
  fitcmd->add_option("--params", fa.params, "model parameters, key=value[,...]");
  fitcmd->add_option("--data", fa.data, "CSV of i,j,outcome rows")->required();
  fitcmd->add_option("--out", fa.out, "write the fit JSON here (default: stdout)");
  fitcmd->add_option("--solver", fa.solver, "auto | dense | cg");
  fitcmd->add_option("--max-iter", fa.max_iter, "iteration cap");
  fitcmd->add_option("--tol", fa.tol, "gradient sup-norm tolerance");

  InferArgs ia;
  auto* infer = app.add_subcommand(
      "infer", "confidence intervals and score-difference tests from a fit");
  infer->add_option("--model", ia.model, "model name")->required();
  infer->add_option("--params", ia.params, "model parameters, key=value[,...]");
  infer->add_option("--data", ia.data, "CSV of i,j,outcome rows")->required();
  infer->add_option("--fit", ia.fit, "fit JSON (u_hat; optional rho overrides)")
      ->required();
  infer->add_option("--alpha", ia.alpha, "two-sided level (default 0.05)");
  infer->add_option("--test", ia.tests, "vertex pair \"i,j\" to test (repeatable)");
  infer->add_flag("--bh", ia.bh, "Benjamini-Hochberg across the tests");
  infer->add_option("--out", ia.out, "write the report JSON here (default: stdout)");

  SimulateArgs sa;
  auto* simulate = app.add_subcommand(
      "simulate", "replicate fit + inference over random designs");
  simulate->add_option("--config", sa.config, "experiment config JSON")->required();
  simulate->add_option("--out", sa.out, "write the summary CSV here");
  simulate->add_option("--zout", sa.zout, "write tracked z-scores CSV here");
  simulate->add_option("--replications", sa.replications, "override replications");
  simulate->add_option("--seed", sa.seed, "override seed");
  simulate->add_option("--threads", sa.threads, "override thread count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (validate->parsed()) return run_validate(va);
  if (graphgen->parsed()) return run_graphgen(ga);
  if (fitcmd->parsed()) return run_fit(fa);
  if (infer->parsed()) return run_infer(ia);
  if (simulate->parsed()) return run_simulate(sa);
  return kUsage;
}
