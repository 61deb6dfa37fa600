#include "paircmp/support.hpp"

#include <algorithm>
#include <cmath>

#include "paircmp/errors.hpp"

namespace paircmp {

OutcomeSupport OutcomeSupport::finite(std::vector<double> values) {
  if (values.empty()) throw Error("finite support must be nonempty");
  if (!std::is_sorted(values.begin(), values.end()))
    throw Error("finite support values must be strictly increasing");
  for (std::size_t k = 1; k < values.size(); ++k)
    if (values[k] == values[k - 1])
      throw Error("finite support values must be strictly increasing");
  // Symmetry about zero: for every x the value -x must be present.
  for (double x : values) {
    bool found = false;
    for (double v : values)
      if (v == -x) {
        found = true;
        break;
      }
    if (!found) throw Error("finite support must be symmetric about zero");
  }
  return OutcomeSupport(SupportKind::Finite, std::move(values));
}

OutcomeSupport OutcomeSupport::real_line() {
  return OutcomeSupport(SupportKind::RealLine, {});
}

bool OutcomeSupport::contains(double x, double tol) const {
  if (kind_ == SupportKind::RealLine) return std::isfinite(x);
  for (double v : values_)
    if (std::fabs(x - v) <= tol) return true;
  return false;
}

}  // namespace paircmp
