#pragma once

#include <cstddef>
#include <vector>

#include "ppn/dataset.hpp"
#include "ppn/posterior.hpp"
#include "ppn/random.hpp"

namespace ppn {

/// Probability table per class and variable: tables[k][j][c].
using ClassTables = std::vector<std::vector<std::vector<double>>>;

struct MultMixState {
  std::vector<double> weights;  // pi, on the K-simplex
  ClassTables tables;
  std::vector<std::size_t> assignments;

  [[nodiscard]] std::size_t components() const { return weights.size(); }
};

/// theta_k^(j) ~ Dirichlet(alpha 1), pi ~ Dirichlet(alpha_pi 1).
struct MultMixPrior {
  double alpha = 2.0;
  double alpha_pi = 2.0;
};

/// Level index of every cell, decoded once from the one-hot blocks.
struct LevelCodes {
  std::vector<std::size_t> level_sizes;
  std::vector<std::size_t> codes;  // row-major n x J

  [[nodiscard]] std::size_t rows() const { return level_sizes.empty() ? 0 : codes.size() / level_sizes.size(); }
  [[nodiscard]] std::size_t vars() const { return level_sizes.size(); }
  [[nodiscard]] std::size_t at(std::size_t i, std::size_t j) const { return codes[i * level_sizes.size() + j]; }
};

/// Throws DataError unless x is categorical one-hot.
LevelCodes level_codes(const Dataset& x);

class MultMixGibbs {
 public:
  MultMixGibbs(const Dataset& x, std::size_t components, Seed seed, MultMixPrior prior = {});

  /// Assignments, then weights, then class tables.
  void sweep();
  [[nodiscard]] const MultMixState& state() const { return state_; }
  [[nodiscard]] double log_joint() const;

 private:
  LevelCodes codes_;
  MultMixPrior prior_;
  VariateStream stream_;
  MultMixState state_;
};

PosteriorDraws<MultMixState> multmix_gibbs_fit(const Dataset& x, std::size_t components, const GibbsConfig& config,
                                               Seed seed, const MultMixPrior& prior = {});

/// Observed-data log-likelihood sum_i log sum_k pi_k prod_j theta_k^(j)[x_ij].
double multmix_log_likelihood(const Dataset& x, const MultMixState& state);
double multmix_log_likelihood(const LevelCodes& x, const MultMixState& state);

/// n_rep one-hot rows: z ~ Categorical(pi), then one draw per variable.
Dataset multmix_sample(const MultMixState& state, const std::vector<std::size_t>& level_sizes, std::size_t n_rep,
                       VariateStream& stream);

Dataset multmix_replicate(const PosteriorDraws<MultMixState>& draws, const std::vector<std::size_t>& level_sizes,
                          std::size_t r, std::size_t n_rep, Seed seed);

std::vector<Dataset> multmix_predictive(const Dataset& x_in, std::size_t components, std::size_t replicates,
                                        const GibbsConfig& config, Seed seed, std::size_t n_rep = 0);

/// Class posterior p(z_i = k | x_i, theta) for one row.
std::vector<double> multmix_class_posterior(const Dataset& x, std::size_t row, const MultMixState& state);

/// Chi-square discrepancy 2 sum_i sum_j sum_c x log(x / E[x | theta]) with
/// 0 log 0 = 0. Returns +infinity when an observed cell has zero predicted
/// probability.
double multmix_chi2_diagnostic(const Dataset& x, const MultMixState& state);
double multmix_chi2_diagnostic(const LevelCodes& x, const MultMixState& state);

}  // namespace ppn
