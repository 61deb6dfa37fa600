#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "paircmp/data.hpp"

namespace paircmp {

struct FitOptions {
  double grad_tol = 1e-10;       // sup-norm gradient tolerance
  int max_iter = 200;
  double divergence_bound = 50.0;  // sup-norm threshold on iterates
  double ls_shrink = 0.5;          // backtracking factor
  double ls_slope = 1e-4;          // sufficient-increase fraction
  std::optional<std::vector<double>> init;  // warm start (else zero)

  // Newton systems are solved on the sum-zero subspace either by a pinned
  // dense Cholesky or Jacobi-preconditioned CG (relative residual 1e-12).
  // Auto picks dense for small graphs and CG above that; both give the same
  // direction to solver precision.
  enum class Solver { Auto, Dense, Cg } solver = Solver::Auto;
};

enum class FitStatus { Converged, Nonexistent, MaxIterations };

std::string to_string(FitStatus s);
FitStatus fit_status_from_string(const std::string& s);

struct FitResult {
  LatentScores u_hat;
  double loglik = 0.0;
  int iterations = 0;
  double grad_norm = 0.0;
  FitStatus status = FitStatus::MaxIterations;
};

// Log-likelihood of the dataset at scores u.
double log_likelihood(const Model& m, const Dataset& d, const LatentScores& u);

// Gradient of the log-likelihood; its entries always sum to zero.
Eigen::VectorXd gradient(const Model& m, const Dataset& d, const LatentScores& u);

// Dense Hessian: the negated weighted Laplacian (negative semidefinite, with
// the all-ones kernel direction).
Eigen::MatrixXd hessian(const Model& m, const Dataset& d, const LatentScores& u);

// Damped Newton ascent on the sum-zero subspace. Returns status
// Nonexistent when the graph is disconnected or the iterates run past
// divergence_bound; never throws for fit failures.
FitResult fit(const Model& m, const Dataset& d, const FitOptions& opts = {});

// Profile likelihood over a grid of threshold parameters: refits the family
// at every theta in the grid and returns the maximizing theta with its fit.
std::pair<double, FitResult> profile_fit_threshold(
    const std::string& family, const Dataset& d,
    const std::vector<double>& theta_grid, const FitOptions& opts = {});

}  // namespace paircmp
