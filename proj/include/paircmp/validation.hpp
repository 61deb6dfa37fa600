#pragma once

#include <string>
#include <vector>

#include "paircmp/model.hpp"

namespace paircmp {

struct AxiomCheck {
  bool pass = false;
  double residual = 0.0;
};

// Numerical audit of the defining properties of a comparison model over a
// symmetric grid of score gaps:
//   a1  normalization: sum/integral of f(.; y) equals 1        (tol 1e-8)
//   a2  flip symmetry: f(x; y) = f(-x; -y)                     (tol 1e-10)
//   a3  stochastic monotonicity: P(X <= x; y) decreasing in y
//       for x < 0 (checked on the sub-distribution function;
//       individual cell probabilities need not be monotone)    (tol 1e-12)
//   a4  boundedness of f over the grid
//   a5  strict concavity: d/dy score < 0 everywhere on the grid
struct ValidationReport {
  std::string model;
  std::string grid;
  AxiomCheck a1, a2, a3, a4, a5;

  bool all_pass() const {
    return a1.pass && a2.pass && a3.pass && a4.pass && a5.pass;
  }
};

// y_grid must be sorted and symmetric about zero.
ValidationReport validate_model(const Model& m, const std::vector<double>& y_grid);

// Convenience: uniform grid on [-span, span] with the given step.
std::vector<double> symmetric_grid(double span, double step);

// Constants controlling the theory bounds, extracted from the model:
//   c1     mass of nonnegative outcomes at gap M (in [1/2, 1))
//   c2     sub-gaussian norm of the score on |y| <= M (exact when the model
//          provides one, else the bounded-variable proxy max|g|/sqrt(ln 2))
//   c3,c4  inf/sup of |d/dy score| over x in support, |y| <= M+1
//   c5     sup of |d^2/dy^2 score| on the same window
//   kappa  c4/c3
struct ConstantsReport {
  double c1 = 0, c2 = 0, c3 = 0, c4 = 0, c5 = 0, kappa = 0;
  double M = 0;
  double grid_step = 0;
};

ConstantsReport model_constants(const Model& m, double M, double grid_step = 0.01);

}  // namespace paircmp
