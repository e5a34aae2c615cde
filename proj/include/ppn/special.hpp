#pragma once

#include <functional>
#include <span>

namespace ppn {

/// Regularized lower incomplete gamma P(a, x) for a > 0, x >= 0.
double regularized_gamma_p(double a, double x);

/// CDF of the chi-square distribution with k degrees of freedom, P(k/2, x/2).
/// Throws DomainError for x < 0 or k < 1.
double chi_square_cdf(double x, double k);

/// Kolmogorov-Smirnov distance sup_x |F_n(x) - F(x)| between the empirical
/// CDF of `samples` and `cdf`. Samples need not be sorted.
double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf);

/// Natural log of sum(exp(v)), stable for large magnitudes.
double log_sum_exp(std::span<const double> v);

}  // namespace ppn
