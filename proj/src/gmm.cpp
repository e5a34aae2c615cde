#include "ppn/gmm.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "ppn/error.hpp"
#include "ppn/special.hpp"

namespace ppn {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;

// Per-component constants for repeated density evaluation.
struct ComponentCache {
  Matrix inv_var;
  Vector log_norm;  // -0.5 * (D log 2pi + log|Sigma_k|)
  Vector half_logdet;

  explicit ComponentCache(const GmmState& s) {
    const auto K = s.means.rows();
    const auto D = s.means.cols();
    inv_var.resize(K, D);
    log_norm.resize(K);
    half_logdet.resize(K);
    for (Eigen::Index k = 0; k < K; ++k) {
      double logdet = 0.0;
      for (Eigen::Index d = 0; d < D; ++d) {
        const double v = s.variances(k, d);
        if (!(v > 0.0) || !std::isfinite(v)) throw StateError("gmm: variances must be positive and finite");
        inv_var(k, d) = 1.0 / v;
        logdet += std::log(v);
      }
      half_logdet(k) = 0.5 * logdet;
      log_norm(k) = -0.5 * (static_cast<double>(D) * kLog2Pi + logdet);
    }
  }

  [[nodiscard]] double half_mahalanobis(const GmmState& s, const Matrix& x, Eigen::Index i, Eigen::Index k) const {
    double q = 0.0;
    for (Eigen::Index d = 0; d < x.cols(); ++d) {
      const double r = x(i, d) - s.means(k, d);
      q += r * r * inv_var(k, d);
    }
    return 0.5 * q;
  }
};

double inverse_gamma_log_pdf(double v, double shape, double scale) {
  return shape * std::log(scale) - std::lgamma(shape) - (shape + 1.0) * std::log(v) - scale / v;
}

void check_dims(const Matrix& x, const GmmState& s) {
  if (x.cols() != s.means.cols()) throw DimensionError("gmm: data dimension does not match state");
  if (s.variances.rows() != s.means.rows() || s.variances.cols() != s.means.cols()) {
    throw DimensionError("gmm: means and variances shapes differ");
  }
}

}  // namespace

GmmState gmm_prior_draw(std::size_t components, std::size_t dims, VariateStream& stream, const GmmPrior& prior) {
  GmmState s;
  const auto K = static_cast<Eigen::Index>(components);
  const auto D = static_cast<Eigen::Index>(dims);
  s.means.resize(K, D);
  s.variances.resize(K, D);
  for (Eigen::Index k = 0; k < K; ++k) {
    for (Eigen::Index d = 0; d < D; ++d) {
      s.means(k, d) = stream.normal(0.0, prior.mean_variance);
      s.variances(k, d) = stream.inverse_gamma(prior.variance_shape, prior.variance_scale);
    }
  }
  return s;
}

GmmGibbs::GmmGibbs(Matrix x, std::size_t components, Seed seed, GmmPrior prior)
    : x_(std::move(x)), prior_(prior), stream_(seed) {
  if (components < 1) throw ParameterError("gmm: K must be >= 1");
  if (x_.cols() < 1) throw DimensionError("gmm: data must have at least one column");
  if (!x_.allFinite()) throw DataError("gmm: data must be finite");
  const auto K = static_cast<Eigen::Index>(components);
  const auto D = x_.cols();
  const auto n = x_.rows();
  state_ = gmm_prior_draw(components, static_cast<std::size_t>(D), stream_, prior_);
  if (n >= K && n > 0) {
    // Start means at distinct data rows and variances at the data variance.
    std::vector<std::size_t> rows(static_cast<std::size_t>(n));
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    for (Eigen::Index k = 0; k < K; ++k) {
      const auto span = static_cast<std::size_t>(n - k);
      const auto j = static_cast<std::size_t>(k) + std::min(span - 1, static_cast<std::size_t>(stream_.uniform() * span));
      std::swap(rows[static_cast<std::size_t>(k)], rows[j]);
      state_.means.row(k) = x_.row(static_cast<Eigen::Index>(rows[static_cast<std::size_t>(k)]));
    }
    if (n >= 2) {
      const Eigen::RowVectorXd mean = x_.colwise().mean();
      const Eigen::RowVectorXd var = (x_.rowwise() - mean).colwise().squaredNorm() / static_cast<double>(n - 1);
      for (Eigen::Index k = 0; k < K; ++k)
        for (Eigen::Index d = 0; d < D; ++d) state_.variances(k, d) = var(d) > 0.0 ? var(d) : 1.0;
    }
  }
  state_.assignments.assign(static_cast<std::size_t>(n), 0);
}

void GmmGibbs::set_data(Matrix x) {
  if (x.cols() != x_.cols()) throw DimensionError("gmm: set_data dimension mismatch");
  x_ = std::move(x);
  state_.assignments.assign(static_cast<std::size_t>(x_.rows()), 0);
}

void GmmGibbs::set_state(GmmState state) {
  if (state.means.rows() != state_.means.rows() || state.means.cols() != state_.means.cols()) {
    throw DimensionError("gmm: set_state shape mismatch");
  }
  state.assignments.resize(static_cast<std::size_t>(x_.rows()), 0);
  state_ = std::move(state);
}

void GmmGibbs::sweep() {
  sample_assignments();
  sample_means();
  sample_variances();
}

void GmmGibbs::sample_assignments() {
  const ComponentCache cache(state_);
  const auto K = state_.means.rows();
  std::vector<double> logw(static_cast<std::size_t>(K));
  for (Eigen::Index i = 0; i < x_.rows(); ++i) {
    for (Eigen::Index k = 0; k < K; ++k)
      logw[static_cast<std::size_t>(k)] = cache.log_norm(k) - cache.half_mahalanobis(state_, x_, i, k);
    state_.assignments[static_cast<std::size_t>(i)] = stream_.categorical_log(logw);
  }
}

void GmmGibbs::sample_means() {
  const auto K = state_.means.rows();
  const auto D = state_.means.cols();
  Matrix sums = Matrix::Zero(K, D);
  Vector counts = Vector::Zero(K);
  for (Eigen::Index i = 0; i < x_.rows(); ++i) {
    const auto k = static_cast<Eigen::Index>(state_.assignments[static_cast<std::size_t>(i)]);
    sums.row(k) += x_.row(i);
    counts(k) += 1.0;
  }
  for (Eigen::Index k = 0; k < K; ++k) {
    for (Eigen::Index d = 0; d < D; ++d) {
      // Conjugate Normal update; with no points this is the prior.
      const double precision = 1.0 / prior_.mean_variance + counts(k) / state_.variances(k, d);
      const double mean = (sums(k, d) / state_.variances(k, d)) / precision;
      state_.means(k, d) = stream_.normal(mean, 1.0 / precision);
    }
  }
}

void GmmGibbs::sample_variances() {
  const auto K = state_.means.rows();
  const auto D = state_.means.cols();
  Matrix ss = Matrix::Zero(K, D);
  Vector counts = Vector::Zero(K);
  for (Eigen::Index i = 0; i < x_.rows(); ++i) {
    const auto k = static_cast<Eigen::Index>(state_.assignments[static_cast<std::size_t>(i)]);
    ss.row(k) += (x_.row(i) - state_.means.row(k)).array().square().matrix();
    counts(k) += 1.0;
  }
  for (Eigen::Index k = 0; k < K; ++k) {
    for (Eigen::Index d = 0; d < D; ++d) {
      const double shape = prior_.variance_shape + 0.5 * counts(k);
      const double scale = prior_.variance_scale + 0.5 * ss(k, d);
      state_.variances(k, d) = stream_.inverse_gamma(shape, scale);
    }
  }
}

double GmmGibbs::log_joint() const {
  const ComponentCache cache(state_);
  const auto K = state_.means.rows();
  double lp = -static_cast<double>(x_.rows()) * std::log(static_cast<double>(K));
  for (Eigen::Index i = 0; i < x_.rows(); ++i) {
    const auto k = static_cast<Eigen::Index>(state_.assignments[static_cast<std::size_t>(i)]);
    lp += cache.log_norm(k) - cache.half_mahalanobis(state_, x_, i, k);
  }
  for (Eigen::Index k = 0; k < K; ++k) {
    for (Eigen::Index d = 0; d < state_.means.cols(); ++d) {
      const double m = state_.means(k, d);
      lp += -0.5 * (kLog2Pi + std::log(prior_.mean_variance)) - 0.5 * m * m / prior_.mean_variance;
      lp += inverse_gamma_log_pdf(state_.variances(k, d), prior_.variance_shape, prior_.variance_scale);
    }
  }
  return lp;
}

PosteriorDraws<GmmState> gmm_gibbs_fit(const Dataset& x, std::size_t components, const GibbsConfig& config, Seed seed,
                                       const GmmPrior& prior) {
  if (x.kind() != DataKind::continuous) throw DataError("gmm: data must be continuous");
  config.validate();
  auto chain = best_of_starts(config, seed, [&](Seed s) { return GmmGibbs(x.values(), components, s, prior); });
  PosteriorDraws<GmmState> draws;
  draws.model_id = "gmm-K" + std::to_string(components);
  for (std::size_t it = 0; it < config.iters; ++it) {
    chain.sweep();
    if (it >= config.burnin && (it - config.burnin) % config.thin == 0) {
      draws.states.push_back(chain.state());
      draws.log_posterior.push_back(chain.log_joint());
      draws.log_likelihood.push_back(gmm_log_likelihood(x.values(), chain.state()));
    }
  }
  return draws;
}

double gmm_log_likelihood(const Matrix& x, const GmmState& state) {
  check_dims(x, state);
  const ComponentCache cache(state);
  const auto K = state.means.rows();
  const double log_weight = -std::log(static_cast<double>(K));
  std::vector<double> terms(static_cast<std::size_t>(K));
  double total = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index k = 0; k < K; ++k)
      terms[static_cast<std::size_t>(k)] = log_weight + cache.log_norm(k) - cache.half_mahalanobis(state, x, i, k);
    total += log_sum_exp(terms);
  }
  return total;
}

Matrix gmm_sample_rows(const GmmState& state, std::size_t n_rep, VariateStream& stream) {
  const auto K = state.means.rows();
  const auto D = state.means.cols();
  Matrix out(static_cast<Eigen::Index>(n_rep), D);
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const auto k = std::min(static_cast<Eigen::Index>(stream.uniform() * static_cast<double>(K)), K - 1);
    for (Eigen::Index d = 0; d < D; ++d) out(i, d) = stream.normal(state.means(k, d), state.variances(k, d));
  }
  return out;
}

Dataset gmm_replicate(const PosteriorDraws<GmmState>& draws, std::size_t r, std::size_t n_rep, Seed seed) {
  if (draws.states.empty()) throw StateError("gmm: no posterior draws");
  if (n_rep == 0) throw ParameterError("gmm: n_rep must be >= 1");
  VariateStream stream(seed);
  return Dataset::continuous(gmm_sample_rows(draws.states[r % draws.size()], n_rep, stream));
}

std::vector<Dataset> gmm_predictive(const Dataset& x_in, std::size_t components, std::size_t replicates,
                                    const GibbsConfig& config, Seed seed, std::size_t n_rep) {
  if (replicates < 1) throw ParameterError("gmm_predictive: R must be >= 1");
  const auto draws = gmm_gibbs_fit(x_in, components, config, seed.child("fit"));
  const std::size_t rows = n_rep == 0 ? x_in.rows() : n_rep;
  std::vector<Dataset> out;
  out.reserve(replicates);
  for (std::size_t r = 0; r < replicates; ++r) out.push_back(gmm_replicate(draws, r, rows, seed.child("replicate", r)));
  return out;
}

double gmm_loglik_diagnostic(const Matrix& x, const GmmState& state, VariateStream& stream) {
  check_dims(x, state);
  const ComponentCache cache(state);
  const auto K = state.means.rows();
  std::vector<double> logw(static_cast<std::size_t>(K));
  std::vector<double> quad(static_cast<std::size_t>(K));
  double total = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index k = 0; k < K; ++k) {
      quad[static_cast<std::size_t>(k)] = cache.half_mahalanobis(state, x, i, k);
      logw[static_cast<std::size_t>(k)] = cache.log_norm(k) - quad[static_cast<std::size_t>(k)];
    }
    const std::size_t k = K == 1 ? 0 : stream.categorical_log(logw);
    total += -quad[k] - cache.half_logdet(static_cast<Eigen::Index>(k));
  }
  return total;
}

}  // namespace ppn
