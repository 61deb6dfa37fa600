#include "paircmp/spectral.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "paircmp/errors.hpp"
#include "paircmp/kernels.hpp"

namespace paircmp {

Eigen::MatrixXd expected_hessian(const Model& m, const ComparisonGraph& g,
                                 const LatentScores& u) {
  if (u.size() != g.num_vertices())
    throw DimensionMismatch("score vector size does not match graph order");
  const int n = g.num_vertices();
  std::vector<double> w(g.num_edges());
  kernels::expected_edge_weights(m, g, u.values().data(), w.data());
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    H(ed.i, ed.j) = w[e];
    H(ed.j, ed.i) = w[e];
    H(ed.i, ed.i) -= w[e];
    H(ed.j, ed.j) -= w[e];
  }
  return H;
}

SpectralBundle normalized_components(const Eigen::MatrixXd& H_star) {
  const int n = static_cast<int>(H_star.rows());
  if (H_star.cols() != n) throw DimensionMismatch("H* must be square");
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      if (i != j) {
        if (H_star(i, j) < -1e-12)
          throw Error("H* off-diagonal entries must be nonnegative");
        row += H_star(i, j);
      }
    }
    if (std::fabs(row + H_star(i, i)) > 1e-8 * std::max(1.0, row))
      throw Error("H* rows must sum to zero");
  }

  SpectralBundle b;
  b.H_star = H_star;
  b.D = -H_star.diagonal();
  for (int i = 0; i < n; ++i)
    if (!(b.D(i) > 0.0)) throw ZeroDegree(i);

  Eigen::VectorXd dinv_sqrt = b.D.cwiseSqrt().cwiseInverse();
  b.A = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) b.A(i, j) = H_star(i, j) * dinv_sqrt(i) * dinv_sqrt(j);

  // P1 = v v^T for the unit vector v with v_i = sqrt(D_i / sum D).
  Eigen::VectorXd v = b.D.cwiseSqrt();
  v /= v.norm();
  b.P1 = v * v.transpose();
  b.L_sym = Eigen::MatrixXd::Identity(n, n) - b.A;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b.A - b.P1);
  b.gap = std::max(std::fabs(es.eigenvalues().minCoeff()),
                   std::fabs(es.eigenvalues().maxCoeff()));
  return b;
}

PseudoinverseResult laplacian_pseudoinverse(const SpectralBundle& bundle,
                                            double tol) {
  if (!(tol > 0.0 && tol < 1.0))
    throw Error("laplacian_pseudoinverse: tol must be in (0,1)");
  const double gap = bundle.gap;
  if (gap >= 1.0 - 1e-12)
    throw DisconnectedGraph("spectral gap is 1; L_sym is not invertible on "
                            "the complement of its kernel");
  const int n = static_cast<int>(bundle.A.rows());

  PseudoinverseResult out;
  constexpr long kCap = 1000000;
  long T;
  if (gap <= 0.0) {
    T = 0;  // A == P1: the series is the identity term alone
  } else {
    T = static_cast<long>(std::ceil(std::log(tol) / std::log(gap)));
    if (T < 0) T = 0;
    if (T > kCap) {
      T = kCap;
      out.truncated_by_cap = true;
    }
  }

  const Eigen::MatrixXd M = bundle.A - bundle.P1;
  Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
  for (long t = 1; t <= T; ++t) {
    term = term * M;
    sum += term;
  }
  out.value = sum - bundle.P1;
  out.terms = T;
  out.tail_bound = gap > 0.0 ? std::pow(gap, static_cast<double>(T + 1)) / (1.0 - gap)
                             : 0.0;
  return out;
}

ConditionReport condition_report(const ConstantsReport& constants, double n,
                                 double p, double q) {
  if (!(p > 0.0 && p <= 1.0) || !(q > 0.0 && q <= 1.0) || p > q)
    throw InvalidProbability("condition_report needs 0 < p <= q <= 1");
  if (!(n >= 2.0)) throw InvalidParameter("condition_report needs n >= 2");
  const double c1 = constants.c1, c2 = constants.c2, c3 = constants.c3,
               c4 = constants.c4, c5 = constants.c5;
  const double ln = std::log(n);

  ConditionReport rep;
  rep.alpha_n = (c2 / c3) * std::sqrt(q * q * ln * ln * ln / (n * p * p * p));
  const double lead = std::max(c2 * c2 * std::pow(c4, 2.5) * c5 / std::pow(c3, 5),
                               c2 * std::pow(c4, 5.5) / std::pow(c3, 6));
  rep.beta_n = lead * std::sqrt(std::pow(q, 10) * std::pow(ln, 8) /
                                (n * std::pow(p, 11)));
  rep.exist_ratio = ln / (n * p * std::fabs(std::log(c1)));
  rep.alpha_ok = rep.alpha_n < 1.0;
  rep.beta_ok = rep.beta_n < 1.0;
  rep.exist_ok = rep.exist_ratio < 1.0;
  return rep;
}

}  // namespace paircmp
