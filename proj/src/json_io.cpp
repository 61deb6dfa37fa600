#include "paircmp/json_io.hpp"

#include <cmath>

#include "paircmp/errors.hpp"

namespace paircmp {

namespace {

nlohmann::json axiom_json(const AxiomCheck& c) {
  return {{"pass", c.pass}, {"residual", c.residual}};
}

nlohmann::json matrix_json(const Eigen::MatrixXd& m) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) arr.push_back(m(i, j));
  return arr;
}

}  // namespace

nlohmann::json to_json(const FitResult& r) {
  return {{"u_hat", r.u_hat.values()},
          {"loglik", r.loglik},
          {"iterations", r.iterations},
          {"grad_norm", r.grad_norm},
          {"status", to_string(r.status)}};
}

FitResult fit_result_from_json(const nlohmann::json& j) {
  try {
    auto u = j.at("u_hat").get<std::vector<double>>();
    FitResult r{LatentScores::raw(std::move(u)), j.at("loglik").get<double>(),
                j.at("iterations").get<int>(),
                j.value("grad_norm", std::nan("")),
                fit_status_from_string(j.at("status").get<std::string>())};
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad fit result JSON: ") + e.what());
  }
}

nlohmann::json to_json(const ValidationReport& r) {
  return {{"model", r.model}, {"grid", r.grid},
          {"axioms",
           {{"a1", axiom_json(r.a1)},
            {"a2", axiom_json(r.a2)},
            {"a3", axiom_json(r.a3)},
            {"a4", axiom_json(r.a4)},
            {"a5", axiom_json(r.a5)}}},
          {"all_pass", r.all_pass()}};
}

nlohmann::json to_json(const ConstantsReport& r) {
  return {{"c1", r.c1},       {"c2", r.c2},   {"c3", r.c3},
          {"c4", r.c4},       {"c5", r.c5},   {"kappa", r.kappa},
          {"M", r.M},         {"grid_step", r.grid_step}};
}

nlohmann::json to_json(const ConditionReport& r) {
  return {{"alpha_n", r.alpha_n},   {"beta_n", r.beta_n},
          {"exist_ratio", r.exist_ratio}, {"alpha_ok", r.alpha_ok},
          {"beta_ok", r.beta_ok},   {"exist_ok", r.exist_ok}};
}

nlohmann::json to_json(const SpectralBundle& b) {
  return {{"n", b.A.rows()},
          {"H_star", matrix_json(b.H_star)},
          {"D", std::vector<double>(b.D.data(), b.D.data() + b.D.size())},
          {"A", matrix_json(b.A)},
          {"P1", matrix_json(b.P1)},
          {"L_sym", matrix_json(b.L_sym)},
          {"gap", b.gap}};
}

nlohmann::json inference_report_json(const LatentScores& u_hat,
                                     const VarianceEstimate& var, double alpha,
                                     const std::vector<TestResult>& tests,
                                     const std::vector<bool>& rejected) {
  if (static_cast<int>(var.rho.size()) != u_hat.size())
    throw DimensionMismatch("variance vector size does not match scores");
  if (rejected.size() != tests.size())
    throw DimensionMismatch("rejected flags do not match tests");
  nlohmann::json verts = nlohmann::json::array();
  for (int i = 0; i < u_hat.size(); ++i) {
    nlohmann::json v{{"i", i}, {"u_hat", u_hat[i]}};
    if (var.finite(i)) {
      auto [lo, hi] = confidence_interval(u_hat[i], var.rho[i], alpha);
      v["rho"] = var.rho[i];
      v["ci_lo"] = lo;
      v["ci_hi"] = hi;
    } else {
      v["rho"] = nullptr;  // isolated vertex: no finite variance
      v["ci_lo"] = nullptr;
      v["ci_hi"] = nullptr;
    }
    verts.push_back(std::move(v));
  }
  nlohmann::json ts = nlohmann::json::array();
  for (std::size_t k = 0; k < tests.size(); ++k)
    ts.push_back({{"i", tests[k].i},
                  {"j", tests[k].j},
                  {"z", tests[k].z},
                  {"p", tests[k].p},
                  {"rejected", static_cast<bool>(rejected[k])}});
  return {{"alpha", alpha}, {"vertices", verts}, {"tests", ts}};
}

}  // namespace paircmp
