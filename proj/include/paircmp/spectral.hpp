#pragma once

#include <Eigen/Core>

#include "paircmp/data.hpp"
#include "paircmp/validation.hpp"

namespace paircmp {

// Population Hessian at scores u: off-diagonal (i,j) entries are
// multiplicity * I(u_i - u_j) for edges, and each diagonal entry is the
// negated sum of its row's off-diagonal part (so rows sum to zero and the
// matrix is a negated weighted Laplacian).
Eigen::MatrixXd expected_hessian(const Model& m, const ComparisonGraph& g,
                                 const LatentScores& u);

// Normalized objects derived from the expected Hessian H*:
//   D      diagonal of weighted degrees (negated diagonal of H*)
//   A      D^{-1/2} W D^{-1/2}, with W the off-diagonal part of H*
//   P1     projector onto span(D^{1/2} 1)
//   L_sym  I - A
//   gap    ||A - P1||_2, strictly below 1 exactly when the graph connects
struct SpectralBundle {
  Eigen::MatrixXd H_star;
  Eigen::VectorXd D;
  Eigen::MatrixXd A;
  Eigen::MatrixXd P1;
  Eigen::MatrixXd L_sym;
  double gap = 0.0;
};

SpectralBundle normalized_components(const Eigen::MatrixXd& H_star);

// Neumann-series pseudo-inverse of L_sym: sum_{t>=0} (A - P1)^t - P1,
// truncated at T = ceil(log tol / log gap), capped at 1e6 terms.
struct PseudoinverseResult {
  Eigen::MatrixXd value;
  long terms = 0;        // highest power of (A - P1) included
  double tail_bound = 0; // gap^(terms+1) / (1 - gap)
  bool truncated_by_cap = false;
};

PseudoinverseResult laplacian_pseudoinverse(const SpectralBundle& bundle,
                                            double tol);

// Sample-size diagnostics for an (n, p, q) design with the given model
// constants. Small values of alpha_n/beta_n (below 1) indicate the
// asymptotic regime; exist_ratio small indicates the MLE exists w.h.p.
struct ConditionReport {
  double alpha_n = 0.0;
  double beta_n = 0.0;
  double exist_ratio = 0.0;
  bool alpha_ok = false;
  bool beta_ok = false;
  bool exist_ok = false;
};

ConditionReport condition_report(const ConstantsReport& constants, double n,
                                 double p, double q);

}  // namespace paircmp
