#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "ppn/error.hpp"
#include "ppn/random.hpp"

namespace ppn {

/// Retained posterior states of one chain, with the log joint density and
/// the observed-data log-likelihood recorded at each state.
template <typename State>
struct PosteriorDraws {
  std::string model_id;
  std::string source_id;
  std::vector<State> states;
  std::vector<double> log_posterior;
  std::vector<double> log_likelihood;

  [[nodiscard]] std::size_t size() const { return states.size(); }

  /// Index of the retained draw with the highest log posterior.
  [[nodiscard]] std::size_t map_index() const {
    if (states.empty()) throw StateError("posterior draws are empty");
    return static_cast<std::size_t>(std::max_element(log_posterior.begin(), log_posterior.end()) -
                                    log_posterior.begin());
  }
};

/// Gibbs schedule shared by the mixture samplers.
struct GibbsConfig {
  std::size_t iters = 2000;
  std::size_t burnin = 1000;
  std::size_t thin = 5;
  /// Independent starts, each run `pilot` sweeps; the one with the highest
  /// log joint continues as the chain.
  std::size_t restarts = 10;
  std::size_t pilot = 50;

  void validate() const {
    if (iters <= burnin) throw ParameterError("gibbs: iters must exceed burnin");
    if (thin == 0) throw ParameterError("gibbs: thin must be >= 1");
    if (restarts == 0) throw ParameterError("gibbs: restarts must be >= 1");
  }
  [[nodiscard]] std::size_t retained() const { return (iters - burnin + thin - 1) / thin; }
};

/// Builds `config.restarts` chains with make(seed of start s), runs each for
/// the pilot sweeps and returns the one with the highest log joint.
template <typename Make>
auto best_of_starts(const GibbsConfig& config, Seed seed, Make&& make) {
  auto best = make(seed.child("start", std::size_t{0}));
  if (config.restarts == 1) return best;
  for (std::size_t it = 0; it < config.pilot; ++it) best.sweep();
  double best_lj = best.log_joint();
  for (std::size_t s = 1; s < config.restarts; ++s) {
    auto chain = make(seed.child("start", s));
    for (std::size_t it = 0; it < config.pilot; ++it) chain.sweep();
    const double lj = chain.log_joint();
    if (lj > best_lj) {
      best_lj = lj;
      best = std::move(chain);
    }
  }
  return best;
}

}  // namespace ppn
