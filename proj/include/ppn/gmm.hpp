#pragma once

#include <cstddef>
#include <vector>

#include "ppn/dataset.hpp"
#include "ppn/posterior.hpp"
#include "ppn/random.hpp"

namespace ppn {

/// Equal-weight Gaussian mixture with diagonal covariances.
struct GmmState {
  Matrix means;      // K x D
  Matrix variances;  // K x D, all > 0
  std::vector<std::size_t> assignments;

  [[nodiscard]] std::size_t components() const { return static_cast<std::size_t>(means.rows()); }
  [[nodiscard]] std::size_t dims() const { return static_cast<std::size_t>(means.cols()); }
};

/// mu_kd ~ Normal(0, mean_variance), sigma2_kd ~ Inverse-Gamma(shape, scale).
struct GmmPrior {
  double mean_variance = 25.0;
  double variance_shape = 1.0;
  double variance_scale = 1.0;
};

/// Gibbs sampler over (assignments, means, variances). Components that
/// receive no points redraw their parameters from the prior.
class GmmGibbs {
 public:
  GmmGibbs(Matrix x, std::size_t components, Seed seed, GmmPrior prior = {});

  /// One full sweep: assignments, then means, then variances.
  void sweep();
  /// Replaces the data (dimension must match); keeps the parameter state.
  void set_data(Matrix x);
  /// Overwrites the parameter state, e.g. with a prior draw.
  void set_state(GmmState state);

  [[nodiscard]] const GmmState& state() const { return state_; }
  [[nodiscard]] const Matrix& data() const { return x_; }
  /// log p(x | assignments, theta) + log p(theta).
  [[nodiscard]] double log_joint() const;

  VariateStream& stream() { return stream_; }

 private:
  void sample_assignments();
  void sample_means();
  void sample_variances();

  Matrix x_;
  GmmPrior prior_;
  VariateStream stream_;
  GmmState state_;
};

/// Draws a parameter state from the prior.
GmmState gmm_prior_draw(std::size_t components, std::size_t dims, VariateStream& stream, const GmmPrior& prior = {});

PosteriorDraws<GmmState> gmm_gibbs_fit(const Dataset& x, std::size_t components, const GibbsConfig& config,
                                       Seed seed, const GmmPrior& prior = {});

/// Observed-data log-likelihood sum_i log sum_k (1/K) N(x_i; mu_k, Sigma_k).
double gmm_log_likelihood(const Matrix& x, const GmmState& state);

/// n_rep rows: uniform component, then Normal(mu_k, Sigma_k).
Matrix gmm_sample_rows(const GmmState& state, std::size_t n_rep, VariateStream& stream);

/// Posterior predictive replicate r: uses retained draw r mod B.
Dataset gmm_replicate(const PosteriorDraws<GmmState>& draws, std::size_t r, std::size_t n_rep, Seed seed);

/// Fits on x_in and returns R replicates of n_rep rows (n_rep = 0 uses x_in's size).
std::vector<Dataset> gmm_predictive(const Dataset& x_in, std::size_t components, std::size_t replicates,
                                    const GibbsConfig& config, Seed seed, std::size_t n_rep = 0);

/// Realized log-likelihood diagnostic with a fresh assignment draw per row.
double gmm_loglik_diagnostic(const Matrix& x, const GmmState& state, VariateStream& stream);

}  // namespace ppn
