#include "ppn/datagen.hpp"

#include <cmath>
#include <numbers>

#include "ppn/error.hpp"

namespace ppn {

namespace {

void require_rows(std::size_t n, const char* who) {
  if (n < 1) throw ParameterError(std::string(who) + ": n must be >= 1");
}

std::vector<std::string> numbered(const char* prefix, std::size_t count) {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < count; ++j) names.push_back(prefix + std::to_string(j + 1));
  return names;
}

}  // namespace

Matrix gmm_preset_means() {
  Matrix m(3, 2);
  m << -5, 5, 0, 0, 10, 5;
  return m;
}

Matrix gmm_preset_variances() {
  Matrix v(3, 2);
  v << 1, 1, 2, 1, 2, 4;
  return v;
}

Dataset gen_gmm_data(std::size_t n, Seed seed) {
  require_rows(n, "gen_gmm_data");
  const Matrix means = gmm_preset_means();
  const Matrix vars = gmm_preset_variances();
  const double w[3] = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  VariateStream stream(seed.child("gmm-data"));
  Matrix x(static_cast<Eigen::Index>(n), 2);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const auto k = static_cast<Eigen::Index>(stream.categorical(w));
    for (Eigen::Index d = 0; d < 2; ++d) x(i, d) = stream.normal(means(k, d), vars(k, d));
  }
  return Dataset::continuous(std::move(x), std::nullopt, {"x1", "x2"});
}

Dataset gen_regression_data(std::size_t n, std::size_t p, double theta, Seed seed) {
  require_rows(n, "gen_regression_data");
  if (p < 1) throw ParameterError("gen_regression_data: p must be >= 1");
  VariateStream stream(seed.child("regression-data"));
  const auto rows = static_cast<Eigen::Index>(n);
  Matrix y(rows, 1);
  Matrix X(rows, static_cast<Eigen::Index>(p));
  for (Eigen::Index i = 0; i < rows; ++i) {
    y(i, 0) = stream.normal(theta, 1.0);
    for (Eigen::Index j = 0; j < X.cols(); ++j) X(i, j) = stream.normal();
  }
  auto names = numbered("x", p);
  names.insert(names.begin(), "y");
  return Dataset::continuous(std::move(y), std::move(X), std::move(names));
}

Matrix linear_factor_loading() {
  Matrix w = Matrix::Zero(10, 2);
  w.block(0, 0, 5, 1).setConstant(5.0);
  w.block(5, 1, 5, 1).setConstant(5.0);
  return w;
}

Dataset gen_linear_factor_data(std::size_t n, Seed seed) {
  require_rows(n, "gen_linear_factor_data");
  const Matrix w = linear_factor_loading();
  VariateStream stream(seed.child("linear-factor-data"));
  Matrix x(static_cast<Eigen::Index>(n), 10);
  Vector z(2);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    z << stream.normal(), stream.normal();
    const Vector mean = w * z;
    for (Eigen::Index g = 0; g < 10; ++g) x(i, g) = mean(g) + stream.normal();
  }
  return Dataset::continuous(std::move(x), std::nullopt, numbered("g", 10));
}

Vector nonlinear_mean(double z1, double z2) {
  Vector m(7);
  m << 7 * z1, 6 * z1, 5 * z1 * z1, 4 * z2, 3 * z2, 2 * std::sin(std::numbers::pi / 2 * z2), z1 * z2;
  return m;
}

Dataset gen_nonlinear_factor_data(std::size_t n, Seed seed) {
  require_rows(n, "gen_nonlinear_factor_data");
  VariateStream stream(seed.child("nonlinear-factor-data"));
  Matrix x(static_cast<Eigen::Index>(n), 7);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double z1 = stream.normal();
    const double z2 = stream.normal();
    const Vector mean = nonlinear_mean(z1, z2);
    for (Eigen::Index g = 0; g < 7; ++g) x(i, g) = mean(g) + stream.normal();
  }
  return Dataset::continuous(std::move(x), std::nullopt, numbered("g", 7));
}

Dataset gen_multmix_data(std::size_t n, const ClassTables& tables, const std::vector<double>& weights, Seed seed) {
  require_rows(n, "gen_multmix_data");
  if (tables.empty() || tables.size() != weights.size()) {
    throw ParameterError("gen_multmix_data: weights must have one entry per class table");
  }
  validate_probabilities(weights, "weights");
  std::vector<std::size_t> levels;
  for (const auto& t : tables.front()) levels.push_back(t.size());
  for (std::size_t k = 0; k < tables.size(); ++k) {
    if (tables[k].size() != levels.size()) throw ParameterError("gen_multmix_data: tables differ in variable count");
    for (std::size_t j = 0; j < levels.size(); ++j) {
      if (tables[k][j].size() != levels[j]) throw ParameterError("gen_multmix_data: tables differ in level count");
      validate_probabilities(tables[k][j], "tables[" + std::to_string(k) + "][" + std::to_string(j) + "]");
    }
  }
  MultMixState state;
  state.weights = weights;
  state.tables = tables;
  VariateStream stream(seed.child("multmix-data"));
  return multmix_sample(state, levels, n, stream);
}

MultMixPreset multmix_preset() {
  MultMixPreset p;
  p.level_sizes = {4, 3, 3};
  p.weights = {0.5, 0.5};
  p.tables = {
      {{0.05, 0.1, 0.15, 0.7}, {0.1, 0.2, 0.7}, {0.1, 0.2, 0.7}},
      {{0.7, 0.15, 0.1, 0.05}, {0.7, 0.2, 0.1}, {0.7, 0.2, 0.1}},
  };
  return p;
}

std::vector<std::string> preset_names() { return {"gmm", "regression", "linear-factor", "nonlinear-factor", "multmix"}; }

Dataset generate_preset(const std::string& name, std::size_t n, Seed seed) {
  if (name == "gmm") return gen_gmm_data(n, seed);
  if (name == "regression") return gen_regression_data(n, 10, 2.5, seed);
  if (name == "linear-factor") return gen_linear_factor_data(n, seed);
  if (name == "nonlinear-factor") return gen_nonlinear_factor_data(n, seed);
  if (name == "multmix") {
    const auto p = multmix_preset();
    return gen_multmix_data(n, p.tables, p.weights, seed);
  }
  throw ParameterError("unknown preset '" + name + "'");
}

}  // namespace ppn
