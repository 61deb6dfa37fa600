#pragma once

#include <utility>
#include <vector>

#include "paircmp/data.hpp"

namespace paircmp {

enum class VarianceSource { Truth, PlugIn };

// Per-vertex asymptotic variances rho_i. Isolated vertices get +inf rather
// than an exception; callers must check finite() before using an entry.
struct VarianceEstimate {
  std::vector<double> rho;
  VarianceSource source = VarianceSource::PlugIn;

  bool finite(int i) const;
};

// rho_i = 1 / sum_{j ~ i} multiplicity_ij * I(u_i - u_j), at the true scores.
VarianceEstimate asymptotic_variance(const Model& m, const ComparisonGraph& g,
                                     const LatentScores& u);

// Same formula evaluated at the fitted scores.
VarianceEstimate plugin_variance(const Model& m, const Dataset& d,
                                 const LatentScores& u_hat);

// Two-sided interval u_hat_i ± z_{alpha/2} * sqrt(rho_i).
std::pair<double, double> confidence_interval(double u_hat_i, double rho_i,
                                              double alpha);

struct TestResult {
  int i = 0;
  int j = 0;
  double z = 0.0;
  double p = 0.0;
};

// z = (u_i - u_j) / sqrt(rho_i + rho_j) against the standard normal.
// Throws IsolatedVertex if either variance is infinite.
TestResult z_test_difference(int i, int j, const LatentScores& u_hat,
                             const VarianceEstimate& rho);

// Benjamini-Hochberg step-up at level alpha; returns the indices of the
// rejected hypotheses in ascending order.
std::vector<int> benjamini_hochberg(const std::vector<double>& p_values,
                                    double alpha);

// High-probability bound C * (c2/c3) * sqrt(log n / degree) on |u_hat_i - u_i|.
double individual_error_bound(double c2, double c3, double n, long long degree,
                              double C = 1.0);

}  // namespace paircmp
