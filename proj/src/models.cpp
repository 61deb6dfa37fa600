#include <algorithm>
#include <cctype>
#include <cmath>

#include "paircmp/errors.hpp"
#include "paircmp/model.hpp"
#include "paircmp/normal.hpp"

namespace paircmp {

namespace {

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

// sigma'(t) = sigma(t)(1-sigma(t)), evaluated without cancellation.
double sigmoid_d(double t) {
  const double e = std::exp(-std::fabs(t));
  const double d = 1.0 + e;
  return e / (d * d);
}

// sigma''(t) = sigma'(t)(1 - 2 sigma(t))
double sigmoid_dd(double t) { return sigmoid_d(t) * (1.0 - 2.0 * sigmoid(t)); }

double log_sigmoid(double t) {
  if (t >= 0.0) return -std::log1p(std::exp(-t));
  return t - std::log1p(std::exp(t));
}

// Closed-form Fisher brackets below blow up past |y| ~ 80 while the true
// value is under 1e-30 there; clamping keeps them finite without visible
// error.
double clamp_gap(double y) { return std::clamp(y, -80.0, 80.0); }

// ---------------------------------------------------------------- Bradley-Terry

class BradleyTerry final : public Model {
 public:
  BradleyTerry() : Model("bt", OutcomeSupport::finite({-1.0, 1.0}), {}) {}

  double pdf(double x, double y) const override {
    require_in_support(x);
    return sigmoid(x * y);
  }
  double log_pdf(double x, double y) const override {
    require_in_support(x);
    return log_sigmoid(x * y);
  }
  double score(double x, double y) const override {
    require_in_support(x);
    return x * sigmoid(-x * y);
  }
  double score_d1(double x, double y) const override {
    require_in_support(x);
    return -sigmoid_d(y);
  }
  double score_d2(double x, double y) const override {
    require_in_support(x);
    return -sigmoid_dd(y);
  }
  double fisher_info(double y) const override { return sigmoid_d(y); }
};

// ---------------------------------------------------------- Thurstone-Mosteller

// Mills-type ratio r(t) = phi(t) / Phi(t), with the asymptotic expansion in
// the far left tail where Phi underflows.
double mills(double t) {
  if (t < -25.0) {
    const double t2 = t * t;
    return -t / (1.0 - 1.0 / t2 + 3.0 / (t2 * t2) - 15.0 / (t2 * t2 * t2));
  }
  return norm_pdf(t) / norm_cdf(t);
}

double mills_d(double t) {
  const double r = mills(t);
  return -r * (t + r);
}

class Thurstone final : public Model {
 public:
  Thurstone() : Model("thurstone", OutcomeSupport::finite({-1.0, 1.0}), {}) {}

  double pdf(double x, double y) const override {
    require_in_support(x);
    return norm_cdf(x * y);
  }
  double score(double x, double y) const override {
    require_in_support(x);
    return x * mills(x * y);
  }
  double score_d1(double x, double y) const override {
    require_in_support(x);
    return mills_d(x * y);
  }
  double score_d2(double x, double y) const override {
    require_in_support(x);
    const double t = x * y;
    const double r = mills(t);
    const double rd = mills_d(t);
    return x * (-rd * (t + 2.0 * r) - r);
  }
  double fisher_info(double y) const override {
    const double p = norm_cdf(y);
    const double f = norm_pdf(y);
    return f * f / (p * (1.0 - p));
  }
};

// ------------------------------------------------------------------- Rao-Kupper

class RaoKupper final : public Model {
 public:
  explicit RaoKupper(double theta)
      : Model("rao-kupper", OutcomeSupport::finite({-1.0, 0.0, 1.0}),
              {{"theta", theta}}),
        theta_(theta),
        log_theta_(std::log(theta)) {}

  double pdf(double x, double y) const override {
    require_in_support(x);
    if (x > 0.5) return sigmoid(y - log_theta_);
    if (x < -0.5) return sigmoid(-y - log_theta_);
    return (theta_ * theta_ - 1.0) /
           ((std::exp(y) + theta_) * (theta_ + std::exp(-y)));
  }
  double score(double x, double y) const override {
    require_in_support(x);
    const double s1 = sigmoid(y - log_theta_);
    const double s2 = sigmoid(y + log_theta_);
    if (x > 0.5) return 1.0 - s1;
    if (x < -0.5) return -s2;
    return 1.0 - s1 - s2;
  }
  double score_d1(double x, double y) const override {
    require_in_support(x);
    const double d1 = sigmoid_d(y - log_theta_);
    const double d2 = sigmoid_d(y + log_theta_);
    if (x > 0.5) return -d1;
    if (x < -0.5) return -d2;
    return -d1 - d2;
  }
  double score_d2(double x, double y) const override {
    require_in_support(x);
    const double d1 = sigmoid_dd(y - log_theta_);
    const double d2 = sigmoid_dd(y + log_theta_);
    if (x > 0.5) return -d1;
    if (x < -0.5) return -d2;
    return -d1 - d2;
  }
  double fisher_info(double y) const override {
    const double t = theta_;
    const double e = std::exp(clamp_gap(y));
    const double a = t + e;
    const double b = t * e + 1.0;
    const double ee = e * e - 1.0;
    return t * t * e / (a * a * a) +
           t * t * (t * t - 1.0) * e * ee * ee / (a * a * a * b * b * b) +
           t * t * e * e / (b * b * b);
  }

 private:
  double theta_;
  double log_theta_;
};

// --------------------------------------------------------------------- Davidson

class Davidson final : public Model {
 public:
  explicit Davidson(double theta)
      : Model("davidson", OutcomeSupport::finite({-1.0, 0.0, 1.0}),
              {{"theta", theta}}),
        theta_(theta) {}

  double pdf(double x, double y) const override {
    require_in_support(x);
    // Divide through by the dominant exponential so nothing overflows.
    if (y <= 0.0) {
      const double h = std::exp(0.5 * y);
      const double d = h * h + theta_ * h + 1.0;
      if (x > 0.5) return h * h / d;
      if (x < -0.5) return 1.0 / d;
      return theta_ * h / d;
    }
    const double hm = std::exp(-0.5 * y);
    const double d = 1.0 + theta_ * hm + hm * hm;
    if (x > 0.5) return 1.0 / d;
    if (x < -0.5) return hm * hm / d;
    return theta_ * hm / d;
  }
  double score(double x, double y) const override {
    require_in_support(x);
    return 0.5 * (x + 1.0) - moment(y, 1);
  }
  double score_d1(double x, double y) const override {
    require_in_support(x);
    const double m = moment(y, 1);
    return m * m - moment(y, 2);
  }
  double score_d2(double x, double y) const override {
    require_in_support(x);
    const double m1 = moment(y, 1);
    const double m2 = moment(y, 2);
    const double m3 = moment(y, 3);
    return -(m3 - 3.0 * m1 * m2 + 2.0 * m1 * m1 * m1);
  }
  double fisher_info(double y) const override {
    const double m = moment(y, 1);
    return moment(y, 2) - m * m;
  }

 private:
  // E[((X+1)/2)^k]: the win indicator contributes f(1), the tie contributes
  // (1/2)^k f(0).
  double moment(double y, int k) const {
    const double half = std::pow(0.5, k);
    return pdf(1.0, y) + half * pdf(0.0, y);
  }

  double theta_;
};

// ------------------------------------------------------------ 4-level link model

class Clm4 final : public Model {
 public:
  explicit Clm4(double theta)
      : Model("clm4", OutcomeSupport::finite({-2.0, -1.0, 1.0, 2.0}),
              {{"theta", theta}}),
        theta_(theta),
        log_theta_(std::log(theta)) {}

  double pdf(double x, double y) const override {
    require_in_support(x);
    if (x > 1.5) return sigmoid(y - log_theta_);
    if (x < -1.5) return sigmoid(-y - log_theta_);
    if (x < 0.0) return inner(-y);
    return inner(y);
  }
  double score(double x, double y) const override {
    require_in_support(x);
    const double sm = sigmoid(y - log_theta_);
    const double s0 = sigmoid(y);
    const double sp = sigmoid(y + log_theta_);
    if (x > 1.5) return 1.0 - sm;
    if (x > 0.0) return 1.0 - sm - s0;
    if (x > -1.5) return 1.0 - sp - s0;
    return -sp;
  }
  double score_d1(double x, double y) const override {
    require_in_support(x);
    const double dm = sigmoid_d(y - log_theta_);
    const double d0 = sigmoid_d(y);
    const double dp = sigmoid_d(y + log_theta_);
    if (x > 1.5) return -dm;
    if (x > 0.0) return -dm - d0;
    if (x > -1.5) return -dp - d0;
    return -dp;
  }
  double score_d2(double x, double y) const override {
    require_in_support(x);
    const double dm = sigmoid_dd(y - log_theta_);
    const double d0 = sigmoid_dd(y);
    const double dp = sigmoid_dd(y + log_theta_);
    if (x > 1.5) return -dm;
    if (x > 0.0) return -dm - d0;
    if (x > -1.5) return -dp - d0;
    return -dp;
  }
  double fisher_info(double y) const override {
    const double t = theta_;
    const double e = std::exp(clamp_gap(y));
    const double a = t + e;
    const double b = t * e + 1.0;
    const double c = 1.0 + e;
    const double u = t - e * e;
    const double v = 1.0 - t * e * e;
    return t * t * e / (a * a * a) + t * t * e * e / (b * b * b) +
           (t - 1.0) * e / (c * c * c) *
               (u * u / (a * a * a) + v * v / (b * b * b));
  }

 private:
  // f(1; y) = (theta-1) e^y / ((theta + e^y)(1 + e^y)); f(-1; y) = f(1; -y).
  double inner(double y) const {
    if (y <= 0.0) {
      const double e = std::exp(y);
      return (theta_ - 1.0) * e / ((theta_ + e) * (1.0 + e));
    }
    const double em = std::exp(-y);
    return (theta_ - 1.0) * em / ((theta_ * em + 1.0) * (em + 1.0));
  }

  double theta_;
  double log_theta_;
};

// ---------------------------------------------------------------- paired cardinal

class Cardinal final : public Model {
 public:
  explicit Cardinal(double sigma)
      : Model("cardinal", OutcomeSupport::real_line(), {{"sigma", sigma}}),
        sigma_(sigma),
        inv_var_(1.0 / (sigma * sigma)),
        log_norm_(std::log(sigma) + 0.91893853320467274178) {}

  double pdf(double x, double y) const override {
    require_in_support(x);
    return norm_pdf((x - y) / sigma_) / sigma_;
  }
  double log_pdf(double x, double y) const override {
    require_in_support(x);
    const double z = (x - y) / sigma_;
    return -0.5 * z * z - log_norm_;
  }
  double score(double x, double y) const override {
    require_in_support(x);
    return (x - y) * inv_var_;
  }
  double score_d1(double x, double) const override {
    require_in_support(x);
    return -inv_var_;
  }
  double score_d2(double x, double) const override {
    require_in_support(x);
    return 0.0;
  }
  double fisher_info(double) const override { return inv_var_; }
  double cdf(double x, double y) const override {
    return norm_cdf((x - y) / sigma_);
  }
  std::optional<double> exact_subgaussian_norm(double) const override {
    return std::sqrt(8.0 / 3.0) / sigma_;
  }
  double quad_center(double y) const override { return y; }
  double quad_scale() const override { return sigma_; }

 private:
  double sigma_;
  double inv_var_;
  double log_norm_;  // log(sigma * sqrt(2 pi))
};

// ---------------------------------------------------------------------- factory

std::string normalize(std::string_view name) {
  std::string s;
  s.reserve(name.size());
  for (char c : name) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return s;
}

double require_param(const std::map<std::string, double>& params,
                     const std::string& model, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end())
    throw InvalidParameter("model " + model + " requires parameter " + key);
  return it->second;
}

void reject_unknown(const std::map<std::string, double>& params,
                    const std::string& model,
                    std::initializer_list<const char*> known) {
  for (const auto& [k, v] : params) {
    bool ok = false;
    for (const char* name : known)
      if (k == name) ok = true;
    if (!ok)
      throw InvalidParameter("model " + model + " does not take parameter " + k);
  }
}

}  // namespace

std::unique_ptr<const Model> make_model(
    std::string_view name, const std::map<std::string, double>& params) {
  const std::string id = normalize(name);
  if (id == "bt" || id == "bradley-terry") {
    reject_unknown(params, "bt", {});
    return std::make_unique<BradleyTerry>();
  }
  if (id == "thurstone" || id == "thurstone-mosteller") {
    reject_unknown(params, "thurstone", {});
    return std::make_unique<Thurstone>();
  }
  if (id == "rao-kupper" || id == "raokupper") {
    reject_unknown(params, "rao-kupper", {"theta"});
    const double theta = require_param(params, "rao-kupper", "theta");
    if (!(theta > 1.0))
      throw InvalidParameter("rao-kupper requires theta > 1");
    return std::make_unique<RaoKupper>(theta);
  }
  if (id == "davidson") {
    reject_unknown(params, "davidson", {"theta"});
    const double theta = require_param(params, "davidson", "theta");
    if (!(theta > 0.0)) throw InvalidParameter("davidson requires theta > 0");
    return std::make_unique<Davidson>(theta);
  }
  if (id == "clm4" || id == "cumulative-link-4") {
    reject_unknown(params, "clm4", {"theta"});
    const double theta = require_param(params, "clm4", "theta");
    if (!(theta > 1.0)) throw InvalidParameter("clm4 requires theta > 1");
    return std::make_unique<Clm4>(theta);
  }
  if (id == "cardinal" || id == "paired-cardinal") {
    reject_unknown(params, "cardinal", {"sigma"});
    const double sigma = require_param(params, "cardinal", "sigma");
    if (!(sigma > 0.0)) throw InvalidParameter("cardinal requires sigma > 0");
    return std::make_unique<Cardinal>(sigma);
  }
  throw UnknownModel(std::string(name));
}

const std::vector<std::string>& model_names() {
  static const std::vector<std::string> names = {
      "bt", "thurstone", "rao-kupper", "davidson", "clm4", "cardinal"};
  return names;
}

}  // namespace paircmp
