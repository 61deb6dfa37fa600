#pragma once

#include <vector>

namespace paircmp {

enum class SupportKind { Finite, RealLine };

// The set of outcome values a model can produce. Finite supports are
// symmetric about zero and strictly increasing; the continuous case is all
// of R.
class OutcomeSupport {
 public:
  static OutcomeSupport finite(std::vector<double> values);
  static OutcomeSupport real_line();

  SupportKind kind() const { return kind_; }
  bool is_finite() const { return kind_ == SupportKind::Finite; }

  // Finite support only; empty for the real line.
  const std::vector<double>& values() const { return values_; }

  // Membership test. For a finite support this matches values up to a small
  // absolute tolerance (outcomes arrive through text formats); the real line
  // contains every finite double.
  bool contains(double x, double tol = 1e-9) const;

 private:
  OutcomeSupport(SupportKind kind, std::vector<double> values)
      : kind_(kind), values_(std::move(values)) {}

  SupportKind kind_;
  std::vector<double> values_;
};

}  // namespace paircmp
