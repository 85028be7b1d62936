#pragma once

#include <vector>

namespace trustcf {

/// Standard normal density.
double normal_pdf(double x);

/// Standard normal CDF, accurate over the full double range (erfc based).
double normal_cdf(double x);

/// Inverse standard normal CDF for p in (0, 1).
///
/// Rational initial guess refined with one Halley step against normal_cdf;
/// absolute error is below 1e-13 across (1e-300, 1 - 1e-16).
/// Throws std::invalid_argument outside (0, 1).
double normal_quantile(double p);

/// Nearest-rank percentile: the value at rank ceil(p/100 * n) (1-based) of
/// the sorted sample.  `sorted` must be ascending and non-empty; p in [0,100].
double percentile_nearest_rank(const std::vector<double>& sorted, double p);

/// Mean of `values` (throws on empty input).
double mean(const std::vector<double>& values);

/// Sample variance with n-1 denominator; 0 for fewer than two values.
double sample_variance(const std::vector<double>& values);

}  // namespace trustcf
