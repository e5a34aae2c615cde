#pragma once

#include <span>
#include <vector>

#include "ppn/parallel.hpp"

namespace ppn {

inline constexpr double kDensityFloor = 1e-12;
inline constexpr std::size_t kKlGridPoints = 1024;

/// Silverman's rule 0.9 min(sd, IQR/1.34) R^{-1/5}. Falls back to sd when
/// the IQR is zero. Throws DataError for R < 2 or zero variance.
double silverman_bandwidth(std::span<const double> samples);

/// Gaussian KDE with Silverman bandwidth evaluated on `grid`, floored at 1e-12.
std::vector<double> kde_density(std::span<const double> samples, std::span<const double> grid,
                                Execution exec = Execution::parallel);

/// Same, with an explicit bandwidth.
std::vector<double> kde_density(std::span<const double> samples, std::span<const double> grid, double bandwidth,
                                Execution exec = Execution::parallel);

/// Trapezoid estimate of KL(P || Q) from densities on a uniform grid.
double kl_trapezoid(std::span<const double> p, std::span<const double> q, double spacing);

/// 0.5 KL(P||Q) + 0.5 KL(Q||P) from KDEs of the two sample sets on a shared
/// 1024-point grid over [min - 3h, max + 3h] of the pooled samples, where h
/// is the larger of the two bandwidths. Clamped at 0.
double sym_kl_estimate(std::span<const double> samples_p, std::span<const double> samples_q,
                       Execution exec = Execution::parallel);

/// log of the harmonic mean of the likelihoods: log R - logsumexp(-loglik).
double harmonic_mean_marginal_likelihood(std::span<const double> loglik_draws);

/// exp(log_ml_a - log_ml_b), equal prior model probabilities.
double bayes_factor(double log_ml_a, double log_ml_b);

}  // namespace ppn
