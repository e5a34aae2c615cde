#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "ppn/dataset.hpp"
#include "ppn/random.hpp"

namespace ppn {

/// Intercept-only model: predictive Normal(mean, 2) for every row.
struct RegressionPosteriorA {
  double mean = 0.0;
  double variance = 2.0;
  std::size_t n = 0;

};

/// Intercept plus p covariates, flat prior. Predictive for a row x is
/// Normal(intercept + x'beta, 2 + x'(X'X)^{-1}x).
struct RegressionPosteriorB {
  double intercept = 0.0;
  Vector beta;
  Matrix gram_inverse;  // (X'X)^{-1} of the fitting covariates
  std::size_t n = 0;
};

using RegressionPosterior = std::variant<RegressionPosteriorA, RegressionPosteriorB>;

RegressionPosteriorA regression_fit_A(std::span<const double> y);

/// OLS: beta from the column-centered design, intercept = ybar - Xbar beta.
/// Throws SingularityError when X'X (or its centered form) has condition
/// number above 1e12.
RegressionPosteriorB regression_fit_B(const Vector& y, const Matrix& X);

/// Fits from a dataset whose single value column is y and covariates are X.
RegressionPosterior regression_fit(const Dataset& data, bool with_covariates);

/// Predictive means and variances for every covariate row.
Vector predictive_means(const RegressionPosterior& post, const Matrix& covariates);
Vector predictive_variances(const RegressionPosterior& post, const Matrix& covariates);

/// Draws y_i ~ Normal(means_i, variances_i).
Vector sample_normal_vector(const Vector& means, const Vector& variances, VariateStream& stream);

/// One replicate response vector at the given covariate rows.
Vector regression_replicate(const RegressionPosterior& post, const Matrix& covariates, VariateStream& stream);

/// R i.i.d. replicate vectors; replicate r uses stream seed.child(r).
std::vector<Vector> regression_predictive(const RegressionPosterior& post, const Matrix& covariates, std::size_t R,
                                          Seed seed);

/// Sum of squared deviations of y from the fitted posterior's predictive means.
double regression_diagnostic(const Vector& y, const Matrix& covariates, const RegressionPosterior& fitted_on_val);

}  // namespace ppn
