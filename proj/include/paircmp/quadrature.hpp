#pragma once

#include <cmath>
#include <vector>

namespace paircmp {

// Gauss-Hermite rule: nodes/weights for ∫ e^{-t^2} h(t) dt, built with
// Golub-Welsch (symmetric tridiagonal eigenproblem). All continuous-support
// integrands in this library have Gaussian tails, so a recentered/rescaled
// rule integrates them essentially to machine precision at 64 nodes.
class GaussHermite {
 public:
  explicit GaussHermite(int n);

  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  // ∫_{-inf}^{inf} h(x) dx for h decaying like exp(-(x-center)^2/(2 scale^2)).
  // Substitution x = center + sqrt(2)*scale*t.
  template <class F>
  double integrate(F&& h, double center, double scale) const {
    const double s = 1.4142135623730950488 * scale;
    double acc = 0.0;
    for (int k = 0; k < size(); ++k) {
      acc += exp_weights_[k] * h(center + s * nodes_[k]);
    }
    return acc * s;
  }

  // Shared 64-node rule.
  static const GaussHermite& default64();

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;      // for weight function e^{-t^2}
  std::vector<double> exp_weights_;  // weights_[k] * e^{t_k^2}
};

}  // namespace paircmp
