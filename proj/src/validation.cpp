#include "paircmp/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "paircmp/errors.hpp"
#include "paircmp/quadrature.hpp"

namespace paircmp {

namespace {

void check_grid(const std::vector<double>& ys) {
  if (ys.empty()) throw InvalidParameter("validation grid is empty");
  if (!std::is_sorted(ys.begin(), ys.end()))
    throw InvalidParameter("validation grid must be sorted");
  const std::size_t n = ys.size();
  for (std::size_t k = 0; k < n; ++k)
    if (std::fabs(ys[k] + ys[n - 1 - k]) > 1e-12)
      throw InvalidParameter("validation grid must be symmetric about zero");
}

// Outcome sample points: the support itself when finite, otherwise a
// symmetric grid wide enough to cover the gaps plus the model's scale.
std::vector<double> outcome_samples(const Model& m, double span) {
  if (m.support().is_finite()) return m.support().values();
  const double X = span + 4.0 * m.quad_scale();
  std::vector<double> xs;
  const int half = 20;
  for (int j = -half; j <= half; ++j)
    xs.push_back(X * static_cast<double>(j) / half);
  return xs;
}

}  // namespace

std::vector<double> symmetric_grid(double span, double step) {
  if (!(span >= 0.0) || !(step > 0.0))
    throw InvalidParameter("symmetric_grid: need span >= 0 and step > 0");
  std::vector<double> g;
  const int half = static_cast<int>(std::llround(span / step));
  for (int k = -half; k <= half; ++k) g.push_back(k * step);
  // Guarantee the exact endpoints regardless of rounding.
  if (g.front() > -span + 1e-15) {
    g.insert(g.begin(), -span);
    g.push_back(span);
  } else {
    g.front() = -span;
    g.back() = span;
  }
  return g;
}

ValidationReport validate_model(const Model& m, const std::vector<double>& ys) {
  check_grid(ys);
  ValidationReport rep;
  rep.model = m.name();
  {
    std::ostringstream os;
    os << ys.size() << " gaps on [" << ys.front() << ", " << ys.back() << "]";
    rep.grid = os.str();
  }
  const double span = std::max(std::fabs(ys.front()), std::fabs(ys.back()));
  const std::vector<double> xs = outcome_samples(m, span);
  const bool finite = m.support().is_finite();

  // a1: normalization
  double worst = 0.0;
  for (double y : ys) {
    double total;
    if (finite) {
      total = 0.0;
      for (double x : xs) total += m.pdf(x, y);
    } else {
      total = GaussHermite::default64().integrate(
          [&](double x) { return m.pdf(x, y); }, m.quad_center(y),
          m.quad_scale());
    }
    worst = std::max(worst, std::fabs(total - 1.0));
  }
  rep.a1 = {worst <= 1e-8, worst};

  // a2: f(x; y) = f(-x; -y)
  worst = 0.0;
  for (double y : ys)
    for (double x : xs)
      worst = std::max(worst, std::fabs(m.pdf(x, y) - m.pdf(-x, -y)));
  rep.a2 = {worst <= 1e-10, worst};

  // a3: P(X <= x; y) non-increasing in y, for x < 0
  worst = 0.0;
  for (double x : xs) {
    if (!(x < 0.0)) continue;
    double prev = m.cdf(x, ys.front());
    for (std::size_t k = 1; k < ys.size(); ++k) {
      const double cur = m.cdf(x, ys[k]);
      worst = std::max(worst, cur - prev);
      prev = cur;
    }
  }
  rep.a3 = {worst <= 1e-12, worst};

  // a4: bounded density
  double peak = 0.0;
  bool all_finite = true;
  for (double y : ys)
    for (double x : xs) {
      const double f = m.pdf(x, y);
      all_finite = all_finite && std::isfinite(f);
      peak = std::max(peak, f);
    }
  rep.a4 = {all_finite && std::isfinite(peak), peak};

  // a5: strict concavity of log f in y
  double max_d1 = -std::numeric_limits<double>::infinity();
  for (double y : ys)
    for (double x : xs) max_d1 = std::max(max_d1, m.score_d1(x, y));
  rep.a5 = {max_d1 < 0.0, max_d1};

  return rep;
}

ConstantsReport model_constants(const Model& m, double M, double grid_step) {
  if (!(M >= 0.0)) throw InvalidParameter("model_constants: M must be >= 0");
  if (!(grid_step > 0.0)) throw InvalidParameter("model_constants: grid_step must be > 0");

  ConstantsReport rep;
  rep.M = M;
  rep.grid_step = grid_step;

  // c1: mass of nonnegative outcomes at the widest gap.
  if (m.support().is_finite()) {
    double mass = 0.0;
    for (double v : m.support().values())
      if (v >= 0.0) mass += m.pdf(v, M);
    rep.c1 = mass;
  } else {
    rep.c1 = 1.0 - m.cdf(0.0, M);
  }

  // c2 on |y| <= M.
  if (auto exact = m.exact_subgaussian_norm(M)) {
    rep.c2 = *exact;
  } else if (!m.support().is_finite()) {
    throw UnsupportedForContinuousSupport(
        "c2 has no closed form and the support is continuous");
  } else {
    const auto ys = symmetric_grid(M, grid_step);
    double peak = 0.0;
    for (double y : ys)
      for (double x : m.support().values())
        peak = std::max(peak, std::fabs(m.score(x, y)));
    rep.c2 = peak / std::sqrt(std::log(2.0));
  }

  // c3..c5 on |y| <= M+1.
  const auto ys = symmetric_grid(M + 1.0, grid_step);
  std::vector<double> xs;
  if (m.support().is_finite()) {
    xs = m.support().values();
  } else {
    // Curvature of every in-scope continuous model is outcome-free, but
    // sample a few outcomes anyway.
    xs = {-3.0, -1.0, 0.0, 1.0, 3.0};
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  double hi2 = 0.0;
  for (double y : ys) {
    for (double x0 : xs) {
      const double x = m.support().is_finite() ? x0 : m.quad_center(y) + x0 * m.quad_scale();
      const double d1 = std::fabs(m.score_d1(x, y));
      lo = std::min(lo, d1);
      hi = std::max(hi, d1);
      hi2 = std::max(hi2, std::fabs(m.score_d2(x, y)));
    }
  }
  rep.c3 = lo;
  rep.c4 = hi;
  rep.c5 = hi2;
  rep.kappa = hi / lo;
  return rep;
}

}  // namespace paircmp
