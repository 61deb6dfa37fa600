#include "paircmp/quadrature.hpp"

#include <Eigen/Dense>

#include "paircmp/errors.hpp"

namespace paircmp {

GaussHermite::GaussHermite(int n) {
  if (n < 1) throw Error("GaussHermite: need at least one node");
  // Jacobi matrix for Hermite polynomials: zero diagonal, off-diagonal
  // sqrt(k/2). Eigenvalues are the nodes; weights come from the first
  // component of each normalized eigenvector.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = std::sqrt(0.5 * k);
    J(k, k - 1) = b;
    J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  const double sqrt_pi = 1.7724538509055160273;
  nodes_.resize(n);
  weights_.resize(n);
  exp_weights_.resize(n);
  for (int k = 0; k < n; ++k) {
    nodes_[k] = es.eigenvalues()(k);
    const double v0 = es.eigenvectors()(0, k);
    weights_[k] = sqrt_pi * v0 * v0;
    // Computed in log space: the raw weight underflows long before the
    // compensated one stops being useful.
    exp_weights_[k] =
        std::exp(std::log(weights_[k]) + nodes_[k] * nodes_[k]);
  }
}

const GaussHermite& GaussHermite::default64() {
  static const GaussHermite rule(64);
  return rule;
}

}  // namespace paircmp
