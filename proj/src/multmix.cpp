#include "ppn/multmix.hpp"

#include <cmath>
#include <limits>

#include "ppn/error.hpp"
#include "ppn/special.hpp"

namespace ppn {

namespace {

double dirichlet_log_pdf(const std::vector<double>& p, double alpha) {
  const double k = static_cast<double>(p.size());
  double lp = std::lgamma(alpha * k) - k * std::lgamma(alpha);
  for (double v : p) lp += (alpha - 1.0) * std::log(v);
  return lp;
}

void check_state(const std::vector<std::size_t>& level_sizes, const MultMixState& state) {
  if (state.tables.size() != state.weights.size()) throw DimensionError("multmix: weights and tables disagree on K");
  for (const auto& tk : state.tables) {
    if (tk.size() != level_sizes.size()) throw DimensionError("multmix: variable count mismatch");
    for (std::size_t j = 0; j < tk.size(); ++j)
      if (tk[j].size() != level_sizes[j]) throw DimensionError("multmix: level count mismatch");
  }
}

// log pi_k and log theta_k^(j)[c], flattened per class.
struct LogTables {
  std::vector<double> log_weights;
  std::vector<double> log_cells;  // K x (sum of level sizes)
  std::vector<std::size_t> offsets;
  std::size_t width = 0;

  LogTables(const MultMixState& state, const std::vector<std::size_t>& level_sizes) {
    for (const std::size_t L : level_sizes) {
      offsets.push_back(width);
      width += L;
    }
    for (std::size_t k = 0; k < state.weights.size(); ++k) {
      log_weights.push_back(std::log(state.weights[k]));
      for (std::size_t j = 0; j < level_sizes.size(); ++j)
        for (const double p : state.tables[k][j]) log_cells.push_back(std::log(p));
    }
  }
  [[nodiscard]] double cell(std::size_t k, std::size_t j, std::size_t c) const {
    return log_cells[k * width + offsets[j] + c];
  }
  // log pi_k + sum_j log theta_k^(j)[x_ij] for every k.
  void row_terms(const LevelCodes& x, std::size_t i, std::vector<double>& out) const {
    for (std::size_t k = 0; k < log_weights.size(); ++k) {
      double lw = log_weights[k];
      for (std::size_t j = 0; j < x.vars(); ++j) lw += cell(k, j, x.at(i, j));
      out[k] = lw;
    }
  }
};

}  // namespace

LevelCodes level_codes(const Dataset& x) {
  if (x.kind() != DataKind::categorical_onehot) throw DataError("multmix: data must be categorical one-hot");
  LevelCodes out;
  out.level_sizes = x.level_sizes();
  out.codes.resize(x.rows() * out.vars());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < out.vars(); ++j) out.codes[i * out.vars() + j] = x.level(i, j);
  return out;
}

MultMixGibbs::MultMixGibbs(const Dataset& x, std::size_t components, Seed seed, MultMixPrior prior)
    : codes_(level_codes(x)), prior_(prior), stream_(seed) {
  if (components < 1) throw ParameterError("multmix: K must be >= 1");
  if (!(prior.alpha > 0.0)) throw ParameterError("multmix: alpha must be positive");
  if (!(prior.alpha_pi > 0.0)) throw ParameterError("multmix: alpha_pi must be positive");
  state_.weights = stream_.dirichlet(std::vector<double>(components, prior_.alpha_pi));
  state_.tables.resize(components);
  for (auto& tk : state_.tables) {
    tk.resize(codes_.vars());
    for (std::size_t j = 0; j < codes_.vars(); ++j)
      tk[j] = stream_.dirichlet(std::vector<double>(codes_.level_sizes[j], prior_.alpha));
  }
  state_.assignments.assign(codes_.rows(), 0);
}

void MultMixGibbs::sweep() {
  const std::size_t K = state_.weights.size();
  std::vector<double> logw(K);
  std::vector<double> counts(K, 0.0);
  const LogTables logs(state_, codes_.level_sizes);
  for (std::size_t i = 0; i < codes_.rows(); ++i) {
    logs.row_terms(codes_, i, logw);
    state_.assignments[i] = K == 1 ? 0 : stream_.categorical_log(logw);
    counts[state_.assignments[i]] += 1.0;
  }

  std::vector<double> conc(K);
  for (std::size_t k = 0; k < K; ++k) conc[k] = prior_.alpha_pi + counts[k];
  state_.weights = stream_.dirichlet(conc);

  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t j = 0; j < codes_.vars(); ++j) {
      std::vector<double> a(codes_.level_sizes[j], prior_.alpha);
      for (std::size_t i = 0; i < codes_.rows(); ++i)
        if (state_.assignments[i] == k) a[codes_.at(i, j)] += 1.0;
      state_.tables[k][j] = stream_.dirichlet(a);
    }
  }
}

double MultMixGibbs::log_joint() const {
  double lp = dirichlet_log_pdf(state_.weights, prior_.alpha_pi);
  for (const auto& tk : state_.tables)
    for (const auto& t : tk) lp += dirichlet_log_pdf(t, prior_.alpha);
  for (std::size_t i = 0; i < codes_.rows(); ++i) {
    const std::size_t k = state_.assignments[i];
    lp += std::log(state_.weights[k]);
    for (std::size_t j = 0; j < codes_.vars(); ++j) lp += std::log(state_.tables[k][j][codes_.at(i, j)]);
  }
  return lp;
}

PosteriorDraws<MultMixState> multmix_gibbs_fit(const Dataset& x, std::size_t components, const GibbsConfig& config,
                                               Seed seed, const MultMixPrior& prior) {
  config.validate();
  auto chain = best_of_starts(config, seed, [&](Seed s) { return MultMixGibbs(x, components, s, prior); });
  const LevelCodes codes = level_codes(x);
  PosteriorDraws<MultMixState> draws;
  draws.model_id = "multmix-K" + std::to_string(components);
  for (std::size_t it = 0; it < config.iters; ++it) {
    chain.sweep();
    if (it >= config.burnin && (it - config.burnin) % config.thin == 0) {
      draws.states.push_back(chain.state());
      draws.log_posterior.push_back(chain.log_joint());
      draws.log_likelihood.push_back(multmix_log_likelihood(codes, chain.state()));
    }
  }
  return draws;
}

double multmix_log_likelihood(const LevelCodes& x, const MultMixState& state) {
  check_state(x.level_sizes, state);
  const LogTables logs(state, x.level_sizes);
  std::vector<double> terms(state.weights.size());
  double total = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    logs.row_terms(x, i, terms);
    total += log_sum_exp(terms);
  }
  return total;
}

double multmix_log_likelihood(const Dataset& x, const MultMixState& state) {
  return multmix_log_likelihood(level_codes(x), state);
}

Dataset multmix_sample(const MultMixState& state, const std::vector<std::size_t>& level_sizes, std::size_t n_rep,
                       VariateStream& stream) {
  if (n_rep == 0) throw ParameterError("multmix: n_rep must be >= 1");
  std::vector<std::vector<std::size_t>> codes(n_rep, std::vector<std::size_t>(level_sizes.size()));
  for (auto& row : codes) {
    const std::size_t z = stream.categorical(state.weights);
    for (std::size_t j = 0; j < level_sizes.size(); ++j) row[j] = stream.categorical(state.tables[z][j]);
  }
  return Dataset::from_codes(codes, level_sizes);
}

Dataset multmix_replicate(const PosteriorDraws<MultMixState>& draws, const std::vector<std::size_t>& level_sizes,
                          std::size_t r, std::size_t n_rep, Seed seed) {
  if (draws.states.empty()) throw StateError("multmix: no posterior draws");
  VariateStream stream(seed);
  return multmix_sample(draws.states[r % draws.size()], level_sizes, n_rep, stream);
}

std::vector<Dataset> multmix_predictive(const Dataset& x_in, std::size_t components, std::size_t replicates,
                                        const GibbsConfig& config, Seed seed, std::size_t n_rep) {
  if (replicates < 1) throw ParameterError("multmix_predictive: R must be >= 1");
  const auto draws = multmix_gibbs_fit(x_in, components, config, seed.child("fit"));
  const std::size_t rows = n_rep == 0 ? x_in.rows() : n_rep;
  std::vector<Dataset> out;
  out.reserve(replicates);
  for (std::size_t r = 0; r < replicates; ++r)
    out.push_back(multmix_replicate(draws, x_in.level_sizes(), r, rows, seed.child("replicate", r)));
  return out;
}

std::vector<double> multmix_class_posterior(const Dataset& x, std::size_t row, const MultMixState& state) {
  check_state(x.level_sizes(), state);
  const std::size_t K = state.weights.size();
  std::vector<double> logw(K);
  for (std::size_t k = 0; k < K; ++k) {
    double lw = std::log(state.weights[k]);
    for (std::size_t j = 0; j < x.level_sizes().size(); ++j) lw += std::log(state.tables[k][j][x.level(row, j)]);
    logw[k] = lw;
  }
  const double norm = log_sum_exp(logw);
  std::vector<double> post(K);
  for (std::size_t k = 0; k < K; ++k) post[k] = std::isfinite(norm) ? std::exp(logw[k] - norm) : 1.0 / static_cast<double>(K);
  return post;
}

double multmix_chi2_diagnostic(const LevelCodes& x, const MultMixState& state) {
  check_state(x.level_sizes, state);
  const std::size_t K = state.weights.size();
  const LogTables logs(state, x.level_sizes);
  std::vector<double> logw(K);
  std::vector<double> post(K);
  double total = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    logs.row_terms(x, i, logw);
    const double norm = log_sum_exp(logw);
    for (std::size_t k = 0; k < K; ++k) post[k] = std::isfinite(norm) ? std::exp(logw[k] - norm) : 1.0 / static_cast<double>(K);
    for (std::size_t j = 0; j < x.vars(); ++j) {
      // Only the observed cell has x = 1; every other cell contributes 0 log 0 = 0.
      const std::size_t c = x.at(i, j);
      double expected = 0.0;
      for (std::size_t k = 0; k < K; ++k) expected += state.tables[k][j][c] * post[k];
      if (!(expected > 0.0)) return std::numeric_limits<double>::infinity();
      total -= std::log(expected);
    }
  }
  return 2.0 * total;
}

double multmix_chi2_diagnostic(const Dataset& x, const MultMixState& state) {
  return multmix_chi2_diagnostic(level_codes(x), state);
}

}  // namespace ppn
