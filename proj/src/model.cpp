#include "paircmp/model.hpp"

#include <cmath>

#include "paircmp/errors.hpp"

namespace paircmp {

double Model::log_pdf(double x, double y) const { return std::log(pdf(x, y)); }

double Model::cdf(double x, double y) const {
  if (!support_.is_finite())
    throw Error("model " + name_ + " does not implement cdf()");
  double acc = 0.0;
  for (double v : support_.values()) {
    if (v <= x + 1e-12) acc += pdf(v, y);
  }
  return acc;
}

std::optional<double> Model::exact_subgaussian_norm(double) const {
  return std::nullopt;
}

double Model::quad_center(double) const {
  throw Error("model " + name_ + " has no quadrature hint (finite support)");
}

double Model::quad_scale() const {
  throw Error("model " + name_ + " has no quadrature hint (finite support)");
}

void Model::require_in_support(double x) const {
  if (!support_.contains(x)) throw OutcomeNotInSupport(x);
}

std::pair<double, double> score_derivatives(const Model& m, double x, double y) {
  return {m.score(x, y), m.score_d1(x, y)};
}

}  // namespace paircmp
