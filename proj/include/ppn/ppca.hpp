#pragma once

#include <cstddef>
#include <vector>

#include "ppn/dataset.hpp"
#include "ppn/random.hpp"

namespace ppn {

/// x = mean + W z + eps, z ~ Normal(0, I_K), eps ~ Normal(0, sigma2 I_G).
struct PpcaParams {
  Matrix loading;  // G x K
  double sigma2 = 1.0;
  Vector mean;     // G

  [[nodiscard]] std::size_t observed_dims() const { return static_cast<std::size_t>(loading.rows()); }
  [[nodiscard]] std::size_t latent_dims() const { return static_cast<std::size_t>(loading.cols()); }
  /// Model covariance W W' + sigma2 I.
  [[nodiscard]] Matrix covariance() const;
};

struct PpcaFit {
  PpcaParams params;
  /// Log-likelihood after each EM iteration.
  std::vector<double> log_likelihood_trace;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Maximum-likelihood PPCA by EM on mean-centered data. Stops when the
/// relative log-likelihood change falls below `tol` or after `max_iters`.
PpcaFit ppca_em_fit(const Dataset& x, std::size_t latent_dims, double tol = 1e-8, std::size_t max_iters = 1000);

/// Gaussian log-likelihood of the rows of x under the model.
double ppca_log_likelihood(const Matrix& x, const PpcaParams& params);

Matrix ppca_sample_rows(const PpcaParams& params, std::size_t n_rep, VariateStream& stream);

/// R replicate datasets of n_rep rows; replicate r uses seed.child(r).
std::vector<Dataset> ppca_predictive(const PpcaParams& params, std::size_t n_rep, std::size_t R, Seed seed);

/// Posterior-mean reconstruction mean + W M^{-1} W'(x - mean), M = W'W + sigma2 I.
Matrix ppca_reconstruct(const Matrix& x, const PpcaParams& params);

/// Sum over rows of the squared reconstruction error.
double ppca_reconstruction_diagnostic(const Matrix& x, const PpcaParams& params);

}  // namespace ppn
