#pragma once

#include <json.hpp>

#include "paircmp/inference.hpp"
#include "paircmp/mle.hpp"
#include "paircmp/spectral.hpp"
#include "paircmp/validation.hpp"

namespace paircmp {

// FitResult <-> {"u_hat": [...], "loglik": r, "iterations": k,
//                "grad_norm": g, "status": "converged" | ...}
nlohmann::json to_json(const FitResult& r);
FitResult fit_result_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ValidationReport& r);
nlohmann::json to_json(const ConstantsReport& r);
nlohmann::json to_json(const ConditionReport& r);
// Matrices as dense row-major arrays alongside "n".
nlohmann::json to_json(const SpectralBundle& b);

// {"alpha": a, "vertices": [{"i", "u_hat", "rho", "ci_lo", "ci_hi"}...],
//  "tests": [{"i", "j", "z", "p", "rejected"}...]}
nlohmann::json inference_report_json(const LatentScores& u_hat,
                                     const VarianceEstimate& var, double alpha,
                                     const std::vector<TestResult>& tests,
                                     const std::vector<bool>& rejected);

}  // namespace paircmp
