#pragma once

#include <span>

namespace reflkit::stats {

double mean(std::span<const double> xs);
/// Unbiased sample variance (divisor m - 1); 0 for fewer than two values.
double sample_variance(std::span<const double> xs);
double sample_std(std::span<const double> xs);
double median(std::span<const double> xs);

double normal_cdf(double z);

/// Kolmogorov-Smirnov distance between the empirical CDF of `xs` and the
/// standard normal CDF.
double ks_statistic_normal(std::span<const double> xs);

}  // namespace reflkit::stats
