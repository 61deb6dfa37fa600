#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "paircmp/support.hpp"

namespace paircmp {

// A pairwise comparison model: a family of outcome distributions f(x; y)
// indexed by the score difference y, together with the derived quantities
// inference needs. Conventions:
//   score(x, y)     = d/dy log f(x; y)
//   score_d1(x, y)  = d^2/dy^2 log f(x; y)   (negative for valid models)
//   score_d2(x, y)  = d^3/dy^3 log f(x; y)
//   fisher_info(y)  = per-comparison information of one outcome at gap y
class Model {
 public:
  virtual ~Model() = default;

  const std::string& name() const { return name_; }
  const OutcomeSupport& support() const { return support_; }
  const std::map<std::string, double>& params() const { return params_; }

  virtual double pdf(double x, double y) const = 0;
  virtual double log_pdf(double x, double y) const;
  virtual double score(double x, double y) const = 0;
  virtual double score_d1(double x, double y) const = 0;
  virtual double score_d2(double x, double y) const = 0;
  virtual double fisher_info(double y) const = 0;

  // P(X <= x; y). Finite supports get the partial-sum default; continuous
  // models must override.
  virtual double cdf(double x, double y) const;

  // Exact sub-gaussian norm of the score on {|y| <= M}, when the model has a
  // closed form (continuous models are expected to provide one).
  virtual std::optional<double> exact_subgaussian_norm(double M) const;

  // Location/scale hint for quadrature over a continuous support: f(.; y)
  // concentrates around quad_center(y) at width quad_scale(). Throws for
  // finite supports.
  virtual double quad_center(double y) const;
  virtual double quad_scale() const;

 protected:
  Model(std::string name, OutcomeSupport support,
        std::map<std::string, double> params)
      : name_(std::move(name)),
        support_(std::move(support)),
        params_(std::move(params)) {}

  // Throws OutcomeNotInSupport unless x is a support point.
  void require_in_support(double x) const;

 private:
  std::string name_;
  OutcomeSupport support_;
  std::map<std::string, double> params_;
};

// (score, score_d1) in one call.
std::pair<double, double> score_derivatives(const Model& m, double x, double y);

// Factory. Case-insensitive identifiers: "bt", "thurstone", "rao-kupper",
// "davidson", "clm4", "cardinal" (plus a few long-form aliases). Parameter
// requirements: rao-kupper/clm4 need theta > 1, davidson theta > 0,
// cardinal sigma > 0. Throws UnknownModel / InvalidParameter.
std::unique_ptr<const Model> make_model(std::string_view name,
                                        const std::map<std::string, double>& params = {});

// Canonical identifiers accepted by make_model.
const std::vector<std::string>& model_names();

}  // namespace paircmp
