#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "ppn/datagen.hpp"
#include "ppn/error.hpp"
#include "ppn/ppca.hpp"
#include "ppn/regression.hpp"
#include "ppn/special.hpp"

using namespace ppn;

namespace {

Matrix standard_normal(Eigen::Index n, Eigen::Index p, std::uint64_t seed) {
  VariateStream s{Seed(seed)};
  Matrix m(n, p);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < p; ++j) m(i, j) = s.normal();
  return m;
}

// Largest principal angle between the column spans of A and B, in radians.
double max_principal_angle(const Matrix& A, const Matrix& B) {
  const Matrix qa = Eigen::HouseholderQR<Matrix>(A).householderQ() * Matrix::Identity(A.rows(), A.cols());
  const Matrix qb = Eigen::HouseholderQR<Matrix>(B).householderQ() * Matrix::Identity(B.rows(), B.cols());
  const Eigen::JacobiSVD<Matrix> svd(qa.transpose() * qb);
  return std::acos(std::min(1.0, svd.singularValues().minCoeff()));
}

}  // namespace

TEST_CASE("model A predictive is N(mean, 2)") {
  const std::vector<double> y{1.0, 3.0};
  const auto a = regression_fit_A(y);
  CHECK(a.mean == 2.0);
  CHECK(a.variance == 2.0);
  const std::vector<double> c(7, 4.25);
  CHECK(regression_fit_A(c).mean == doctest::Approx(4.25));
  const std::vector<double> p1{5, 1, 9, 2}, p2{9, 2, 1, 5};
  CHECK(regression_fit_A(p1).mean == regression_fit_A(p2).mean);
  CHECK_THROWS_AS(regression_fit_A(std::vector<double>{}), DataError);
}

TEST_CASE("OLS hand case and noiseless interpolation") {
  Matrix X(2, 1);
  X << 1.0, -1.0;
  Vector y(2);
  y << 1.0, -1.0;
  const auto b = regression_fit_B(y, X);
  CHECK(b.beta(0) == doctest::Approx(1.0));
  CHECK(std::abs(b.intercept) < 1e-14);

  const Matrix Z = standard_normal(40, 4, 1);
  Vector beta0(4);
  beta0 << 1.5, -2.0, 0.0, 3.25;
  const auto fit = regression_fit_B(Z * beta0, Z);
  CHECK((fit.beta - beta0).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(std::abs(fit.intercept) < 1e-10);
}

TEST_CASE("OLS matches the normal-equations oracle") {
  const Matrix X = standard_normal(50, 3, 2);
  VariateStream s(Seed(3));
  Vector y(50);
  for (Eigen::Index i = 0; i < 50; ++i) y(i) = 0.7 - 1.2 * X(i, 0) + 0.4 * X(i, 2) + s.normal();
  const auto fit = regression_fit_B(y, X);
  const Vector ref = oracle::ols_normal_equations(y, X);
  CHECK(std::abs(fit.intercept - ref(0)) < 1e-10);
  CHECK((fit.beta - ref.tail(3)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("shifting y moves only the intercept") {
  const Matrix X = standard_normal(30, 2, 4);
  const Vector y = standard_normal(30, 1, 5).col(0);
  const auto a = regression_fit_B(y, X);
  const auto b = regression_fit_B((y.array() + 10.0).matrix(), X);
  CHECK(b.intercept == doctest::Approx(a.intercept + 10.0).epsilon(1e-12));
  CHECK((a.beta - b.beta).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("OLS errors") {
  Matrix X = standard_normal(10, 2, 6);
  X.col(1) = 2.0 * X.col(0);
  CHECK_THROWS_AS(regression_fit_B(Vector::Zero(10), X), SingularityError);
  CHECK_THROWS_AS(regression_fit_B(Vector::Zero(2), standard_normal(2, 3, 7)), DimensionError);
  CHECK_THROWS_AS(regression_fit_B(Vector::Zero(9), standard_normal(10, 2, 8)), DimensionError);
}

TEST_CASE("model B predictive variances are 2 + x'(X'X)^-1 x") {
  const Matrix X = standard_normal(25, 3, 9);
  const Vector y = standard_normal(25, 1, 10).col(0);
  const RegressionPosterior post = regression_fit_B(y, X);
  const Matrix Xn = standard_normal(6, 3, 11);
  const Vector v = predictive_variances(post, Xn);
  const Matrix G = (X.transpose() * X).inverse();
  for (Eigen::Index i = 0; i < 6; ++i) {
    CHECK(v(i) == doctest::Approx(2.0 + Xn.row(i) * G * Xn.row(i).transpose()).epsilon(1e-10));
    CHECK(v(i) >= 2.0);
  }
  const auto& b = std::get<RegressionPosteriorB>(post);
  CHECK((b.gram_inverse - b.gram_inverse.transpose()).norm() < 1e-12);
}

TEST_CASE("model A replicates have mean and variance of the predictive") {
  const std::vector<double> y(100, 2.5);
  const RegressionPosterior post = regression_fit_A(y);
  const auto reps = regression_predictive(post, Matrix(200, 0), 10000, Seed(12));
  double s = 0.0, ss = 0.0, n = 0.0;
  for (const auto& r : reps)
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      s += r(i);
      ss += r(i) * r(i);
      n += 1.0;
    }
  const double m = s / n;
  CHECK(std::abs(m - 2.5) < 0.05);
  CHECK((ss / n - m * m) == doctest::Approx(2.0).epsilon(0.05));
  const auto again = regression_predictive(post, Matrix(200, 0), 3, Seed(12));
  CHECK(again[2] == reps[2]);
  CHECK_THROWS_AS(regression_predictive(post, Matrix(5, 0), 0, Seed(1)), ParameterError);
}

TEST_CASE("regression diagnostic hand values") {
  const std::vector<double> yv{1.0, 2.0, 3.0};
  const RegressionPosterior a = regression_fit_A(yv);
  Vector at(5);
  at.setConstant(2.0);
  CHECK(regression_diagnostic(at, Matrix(5, 0), a) == 0.0);
  CHECK(regression_diagnostic((at.array() + 1.0).matrix(), Matrix(5, 0), a) == doctest::Approx(5.0));
  CHECK_THROWS_AS(regression_diagnostic(at, Matrix(4, 0), a), DimensionError);

  const Matrix X = standard_normal(20, 2, 13);
  const Vector y = standard_normal(20, 1, 14).col(0);
  const RegressionPosterior b = regression_fit_B(y, X);
  const Matrix Xo = standard_normal(7, 2, 15);
  CHECK(regression_diagnostic(predictive_means(b, Xo), Xo, b) == doctest::Approx(0.0));
}

TEST_CASE("model A diagnostic over its own predictive is 2 chi2_n") {
  const std::size_t n = 2000;
  const std::vector<double> yv{0.0, 1.0, 2.0};
  const RegressionPosterior a = regression_fit_A(yv);
  const auto reps = regression_predictive(a, Matrix(static_cast<Eigen::Index>(n), 0), 10000, Seed(16));
  std::vector<double> half;
  for (const auto& r : reps) half.push_back(regression_diagnostic(r, Matrix(static_cast<Eigen::Index>(n), 0), a) / 2.0);
  CHECK(ks_distance(half, [&](double x) { return chi_square_cdf(x, static_cast<double>(n)); }) < 0.02);
}

TEST_CASE("PPCA sigma2 is the discarded eigenvalue mean") {
  const Dataset lin = gen_linear_factor_data(1000, Seed(17));
  const auto fit = ppca_em_fit(lin, 2, 1e-12, 10000);
  CHECK(std::abs(fit.params.sigma2 - oracle::discarded_eigen_mean(lin.values(), 2)) < 1e-6);
  CHECK(fit.converged);
  for (std::size_t i = 1; i < fit.log_likelihood_trace.size(); ++i) {
    const double prev = fit.log_likelihood_trace[i - 1];
    REQUIRE(fit.log_likelihood_trace[i] >= prev - 1e-9 * std::abs(prev));
  }
}

TEST_CASE("PPCA on noiseless subspace data") {
  const Matrix basis = standard_normal(6, 2, 18);
  const Matrix z = standard_normal(300, 2, 19);
  const Matrix x = z * basis.transpose();
  const auto fit = ppca_em_fit(Dataset::continuous(x), 2);
  CHECK(fit.params.sigma2 <= 1e-8);
  CHECK(max_principal_angle(fit.params.loading, basis) < 1e-4);
}

TEST_CASE("PPCA log-likelihood is monotone across EM iterations") {
  const Dataset nl = gen_nonlinear_factor_data(500, Seed(20));
  const auto fit = ppca_em_fit(nl, 3, 1e-10, 500);
  REQUIRE(fit.log_likelihood_trace.size() >= 2);
  for (std::size_t i = 1; i < fit.log_likelihood_trace.size(); ++i) {
    const double prev = fit.log_likelihood_trace[i - 1];
    REQUIRE(fit.log_likelihood_trace[i] >= prev - 1e-9 * std::abs(prev));
  }
}

TEST_CASE("PPCA replicate covariance is WW' + sigma2 I") {
  const Dataset lin = gen_linear_factor_data(800, Seed(21));
  const auto params = ppca_em_fit(lin, 2).params;
  VariateStream s(Seed(22));
  const Matrix rows = ppca_sample_rows(params, 100000, s);
  const Matrix c = rows.rowwise() - rows.colwise().mean();
  const Matrix cov = c.transpose() * c / static_cast<double>(rows.rows() - 1);
  const Matrix expected = params.covariance();
  CHECK((cov - expected).norm() / expected.norm() < 0.05);
  const Matrix ref = params.loading * params.loading.transpose() +
                     params.sigma2 * Matrix::Identity(expected.rows(), expected.cols());
  CHECK((expected - ref).norm() < 1e-9 * ref.norm());
}

TEST_CASE("PPCA predictive covariance is rotation invariant") {
  const Dataset lin = gen_linear_factor_data(300, Seed(23));
  auto params = ppca_em_fit(lin, 2).params;
  const double t = 0.7;
  Matrix rot(2, 2);
  rot << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  auto rotated = params;
  rotated.loading = params.loading * rot;
  CHECK((params.covariance() - rotated.covariance()).norm() < 1e-9 * params.covariance().norm());
  // The reconstruction depends on W only through its span.
  CHECK(ppca_reconstruction_diagnostic(lin.values(), params) ==
        doctest::Approx(ppca_reconstruction_diagnostic(lin.values(), rotated)).epsilon(1e-10));
}

TEST_CASE("PPCA predictive determinism and errors") {
  const Dataset lin = gen_linear_factor_data(200, Seed(24));
  const auto params = ppca_em_fit(lin, 2).params;
  const auto a = ppca_predictive(params, 50, 3, Seed(25));
  const auto b = ppca_predictive(params, 50, 3, Seed(25));
  CHECK(a[1].values() == b[1].values());
  CHECK_THROWS_AS(ppca_em_fit(lin, 0), DimensionError);
  CHECK_THROWS_AS(ppca_em_fit(lin, 10), DimensionError);
  Matrix bad = lin.values();
  bad(3, 3) = NAN;
  CHECK_THROWS_AS(ppca_em_fit(Dataset::continuous(bad), 2), DataError);
  CHECK_THROWS_AS(ppca_predictive(params, 50, 0, Seed(1)), ParameterError);
}

TEST_CASE("reconstruction diagnostic hand values") {
  PpcaParams p;
  p.loading = Matrix::Zero(4, 1);
  p.loading(0, 0) = 1.0;
  p.sigma2 = 1e-300;
  p.mean = Vector::Zero(4);
  // With a vanishing noise variance the reconstruction is the projection on e1.
  Matrix on(1, 4);
  on << 2.5, 0, 0, 0;
  CHECK(ppca_reconstruction_diagnostic(on, p) == doctest::Approx(0.0));
  Matrix off(1, 4);
  off << 0, 3, 4, 0;
  CHECK(ppca_reconstruction_diagnostic(off, p) == doctest::Approx(25.0));
}

TEST_CASE("on nonlinear data a richer subspace reconstructs better") {
  const Dataset val = gen_nonlinear_factor_data(1000, Seed(26));
  const Dataset x = gen_nonlinear_factor_data(1000, Seed(27));
  const auto p2 = ppca_em_fit(val, 2).params;
  const auto p5 = ppca_em_fit(val, 5).params;
  CHECK(ppca_reconstruction_diagnostic(x.values(), p2) > ppca_reconstruction_diagnostic(x.values(), p5));
}
