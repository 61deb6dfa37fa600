#pragma once

namespace paircmp {

// Standard normal density.
double norm_pdf(double x);

// Standard normal CDF. Hart-style rational approximation (the variant
// published by West, 2005); absolute error below 1e-15, relative accuracy
// holds far into the lower tail (|x| up to 37).
double norm_cdf(double x);

// Inverse of norm_cdf on (0,1). Acklam's rational initial guess polished
// with one Halley step, giving close to full double precision on every
// platform. Throws paircmp::Error for p outside (0,1).
double norm_quantile(double p);

// Two-sided z threshold for a level-alpha interval/test: norm_quantile(1-alpha/2).
double two_sided_z(double alpha);

}  // namespace paircmp
