#include "paircmp/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "paircmp/errors.hpp"
#include "paircmp/kernels.hpp"
#include "paircmp/normal.hpp"

namespace paircmp {

bool VarianceEstimate::finite(int i) const {
  if (i < 0 || i >= static_cast<int>(rho.size()))
    throw VertexOutOfRange(i, static_cast<int>(rho.size()));
  return std::isfinite(rho[i]);
}

namespace {

VarianceEstimate variance_impl(const Model& m, const ComparisonGraph& g,
                               const LatentScores& u, VarianceSource source) {
  if (u.size() != g.num_vertices())
    throw DimensionMismatch("score vector size does not match graph order");
  std::vector<double> w(g.num_edges());
  kernels::expected_edge_weights(m, g, u.values().data(), w.data());
  VarianceEstimate est;
  est.source = source;
  est.rho.assign(g.num_vertices(), std::numeric_limits<double>::infinity());
  for (int v = 0; v < g.num_vertices(); ++v) {
    double info = 0.0;
    for (int k = g.adj_offset(v); k < g.adj_offset(v + 1); ++k)
      info += w[g.adj_edge(k)];
    if (info > 0.0) est.rho[v] = 1.0 / info;
  }
  return est;
}

}  // namespace

VarianceEstimate asymptotic_variance(const Model& m, const ComparisonGraph& g,
                                     const LatentScores& u) {
  return variance_impl(m, g, u, VarianceSource::Truth);
}

VarianceEstimate plugin_variance(const Model& m, const Dataset& d,
                                 const LatentScores& u_hat) {
  return variance_impl(m, d.graph(), u_hat, VarianceSource::PlugIn);
}

std::pair<double, double> confidence_interval(double u_hat_i, double rho_i,
                                              double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidAlpha(alpha);
  if (!(rho_i > 0.0) || !std::isfinite(rho_i))
    throw InvalidParameter("confidence_interval needs a positive finite variance");
  const double half = two_sided_z(alpha) * std::sqrt(rho_i);
  return {u_hat_i - half, u_hat_i + half};
}

TestResult z_test_difference(int i, int j, const LatentScores& u_hat,
                             const VarianceEstimate& rho) {
  const int n = u_hat.size();
  if (i < 0 || i >= n) throw VertexOutOfRange(i, n);
  if (j < 0 || j >= n) throw VertexOutOfRange(j, n);
  if (i == j) throw SelfComparison("z test of a vertex against itself");
  if (static_cast<int>(rho.rho.size()) != n)
    throw DimensionMismatch("variance vector size does not match scores");
  if (!rho.finite(i)) throw IsolatedVertex(i);
  if (!rho.finite(j)) throw IsolatedVertex(j);
  TestResult t;
  t.i = i;
  t.j = j;
  t.z = (u_hat[i] - u_hat[j]) / std::sqrt(rho.rho[i] + rho.rho[j]);
  t.p = 2.0 * norm_cdf(-std::fabs(t.z));
  return t;
}

std::vector<int> benjamini_hochberg(const std::vector<double>& p_values,
                                    double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidAlpha(alpha);
  const int m = static_cast<int>(p_values.size());
  for (double p : p_values)
    if (!(p >= 0.0 && p <= 1.0))
      throw InvalidParameter("p-values must lie in [0,1]");
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return p_values[a] < p_values[b]; });
  int cut = 0;  // number of rejections
  for (int k = m; k >= 1; --k) {
    if (p_values[order[k - 1]] <= alpha * k / m) {
      cut = k;
      break;
    }
  }
  std::vector<int> rejected(order.begin(), order.begin() + cut);
  std::sort(rejected.begin(), rejected.end());
  return rejected;
}

double individual_error_bound(double c2, double c3, double n, long long degree,
                              double C) {
  if (degree <= 0) throw ZeroDegree(0);
  if (!(n >= 2.0)) throw InvalidParameter("individual_error_bound needs n >= 2");
  if (!(c2 > 0.0) || !(c3 > 0.0))
    throw InvalidParameter("individual_error_bound needs positive c2, c3");
  return C * (c2 / c3) * std::sqrt(std::log(n) / static_cast<double>(degree));
}

}  // namespace paircmp
