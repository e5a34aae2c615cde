#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ppn/dataset.hpp"
#include "ppn/multmix.hpp"
#include "ppn/random.hpp"

namespace ppn {

/// Equal-weight three-component 2-D Gaussian mixture with diagonal
/// covariances; means (-5,5), (0,0), (10,5), variances (1,1), (2,1), (2,4).
Dataset gen_gmm_data(std::size_t n, Seed seed);

/// Component means and variances of gen_gmm_data, one row per component.
Matrix gmm_preset_means();
Matrix gmm_preset_variances();

/// y ~ Normal(theta, 1) with p independent standard-normal covariates.
Dataset gen_regression_data(std::size_t n = 2000, std::size_t p = 10, double theta = 2.5, Seed seed = Seed{0});

/// x = W z + eps, G = 10, K = 2, W with two blocks of 5s, unit noise.
Dataset gen_linear_factor_data(std::size_t n, Seed seed);
Matrix linear_factor_loading();

/// Noise-free mean of the nonlinear factor map at latent (z1, z2).
Vector nonlinear_mean(double z1, double z2);

/// x = f(z) + eps with f the seven-coordinate nonlinear map, unit noise.
Dataset gen_nonlinear_factor_data(std::size_t n, Seed seed);

/// Categorical mixture data: z ~ Categorical(weights), then one draw per
/// variable from tables[z][j].
Dataset gen_multmix_data(std::size_t n, const ClassTables& tables, const std::vector<double>& weights, Seed seed);

/// Two well-separated classes over variables with 4, 3, 3 levels.
struct MultMixPreset {
  ClassTables tables;
  std::vector<double> weights;
  std::vector<std::size_t> level_sizes;
};
MultMixPreset multmix_preset();

/// Named generator used by the CLI: gmm, regression, linear-factor,
/// nonlinear-factor, multmix.
Dataset generate_preset(const std::string& name, std::size_t n, Seed seed);
std::vector<std::string> preset_names();

}  // namespace ppn
