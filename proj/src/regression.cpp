#include "ppn/regression.hpp"

#include <cmath>

#include "ppn/error.hpp"

namespace ppn {

namespace {

void require_well_conditioned(const Matrix& gram, const char* what) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > 1e12) throw SingularityError(std::string("regression: ") + what + " is rank deficient");
}

}  // namespace

RegressionPosteriorA regression_fit_A(std::span<const double> y) {
  if (y.empty()) throw DataError("regression_fit_A: need at least one observation");
  double sum = 0.0;
  for (double v : y) {
    if (!std::isfinite(v)) throw DataError("regression_fit_A: non-finite response");
    sum += v;
  }
  return RegressionPosteriorA{sum / static_cast<double>(y.size()), 2.0, y.size()};
}

RegressionPosteriorB regression_fit_B(const Vector& y, const Matrix& X) {
  const auto n = X.rows();
  const auto p = X.cols();
  if (y.size() != n) throw DimensionError("regression_fit_B: y and X row counts differ");
  if (n <= p) throw DimensionError("regression_fit_B: need n > p");
  if (!y.allFinite() || !X.allFinite()) throw DataError("regression_fit_B: non-finite input");

  const Matrix gram = X.transpose() * X;
  require_well_conditioned(gram, "X'X");
  const Eigen::RowVectorXd xbar = X.colwise().mean();
  const Matrix Xc = X.rowwise() - xbar;
  const Matrix cgram = Xc.transpose() * Xc;
  require_well_conditioned(cgram, "centered X'X");

  RegressionPosteriorB post;
  const double ybar = y.mean();
  post.beta = cgram.ldlt().solve(Xc.transpose() * (y.array() - ybar).matrix());
  post.intercept = ybar - xbar.dot(post.beta);
  post.gram_inverse = gram.ldlt().solve(Matrix::Identity(p, p));
  post.gram_inverse = 0.5 * (post.gram_inverse + post.gram_inverse.transpose()).eval();
  post.n = static_cast<std::size_t>(n);
  return post;
}

RegressionPosterior regression_fit(const Dataset& data, bool with_covariates) {
  if (data.kind() != DataKind::continuous || data.cols() != 1) {
    throw DataError("regression: dataset must have a single response column");
  }
  const Vector y = data.values().col(0);
  if (!with_covariates) return regression_fit_A(std::span<const double>(y.data(), static_cast<std::size_t>(y.size())));
  if (!data.covariates()) throw DataError("regression: model B needs covariates");
  return regression_fit_B(y, *data.covariates());
}

namespace {

void check_covariates(const RegressionPosterior& post, const Matrix& covariates) {
  if (const auto* b = std::get_if<RegressionPosteriorB>(&post); b && covariates.cols() != b->beta.size()) {
    throw DimensionError("regression: covariate count does not match fitted model");
  }
}

}  // namespace

Vector predictive_means(const RegressionPosterior& post, const Matrix& covariates) {
  check_covariates(post, covariates);
  if (const auto* a = std::get_if<RegressionPosteriorA>(&post)) return Vector::Constant(covariates.rows(), a->mean);
  const auto& b = std::get<RegressionPosteriorB>(post);
  return (covariates * b.beta).array() + b.intercept;
}

Vector predictive_variances(const RegressionPosterior& post, const Matrix& covariates) {
  check_covariates(post, covariates);
  if (const auto* a = std::get_if<RegressionPosteriorA>(&post)) return Vector::Constant(covariates.rows(), a->variance);
  const auto& b = std::get<RegressionPosteriorB>(post);
  // Row-wise x_i' G x_i.
  return ((covariates * b.gram_inverse).array() * covariates.array()).rowwise().sum() + 2.0;
}

Vector sample_normal_vector(const Vector& means, const Vector& variances, VariateStream& stream) {
  Vector y(means.size());
  for (Eigen::Index i = 0; i < means.size(); ++i) y(i) = means(i) + std::sqrt(variances(i)) * stream.normal();
  return y;
}

Vector regression_replicate(const RegressionPosterior& post, const Matrix& covariates, VariateStream& stream) {
  return sample_normal_vector(predictive_means(post, covariates), predictive_variances(post, covariates), stream);
}

std::vector<Vector> regression_predictive(const RegressionPosterior& post, const Matrix& covariates, std::size_t R,
                                          Seed seed) {
  if (R < 1) throw ParameterError("regression_predictive: R must be >= 1");
  const Vector means = predictive_means(post, covariates);
  const Vector vars = predictive_variances(post, covariates);
  std::vector<Vector> out;
  out.reserve(R);
  for (std::size_t r = 0; r < R; ++r) {
    VariateStream stream(seed.child(r));
    out.push_back(sample_normal_vector(means, vars, stream));
  }
  return out;
}

double regression_diagnostic(const Vector& y, const Matrix& covariates, const RegressionPosterior& fitted_on_val) {
  if (y.size() != covariates.rows()) throw DimensionError("regression_diagnostic: length mismatch");
  return (y - predictive_means(fitted_on_val, covariates)).squaredNorm();
}

}  // namespace ppn
