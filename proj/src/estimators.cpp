#include "ppn/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ppn/error.hpp"
#include "ppn/special.hpp"

namespace ppn {

namespace {

// Linear-interpolation quantile on sorted data.
double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

double silverman_bandwidth(std::span<const double> samples) {
  if (samples.size() < 2) throw DataError("kde: need at least two samples");
  double mean = 0.0;
  for (double v : samples) {
    if (!std::isfinite(v)) throw DataError("kde: samples must be finite");
    mean += v;
  }
  mean /= static_cast<double>(samples.size());
  double ss = 0.0;
  for (double v : samples) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(samples.size() - 1));
  if (!(sd > 0.0)) throw DataError("kde: degenerate sample (zero variance)");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
  const double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
  return 0.9 * spread * std::pow(static_cast<double>(samples.size()), -0.2);
}

std::vector<double> kde_density(std::span<const double> samples, std::span<const double> grid, Execution exec) {
  return kde_density(samples, grid, silverman_bandwidth(samples), exec);
}

std::vector<double> kde_density(std::span<const double> samples, std::span<const double> grid, double bandwidth,
                                Execution exec) {
  if (samples.empty()) throw DataError("kde: no samples");
  if (!(bandwidth > 0.0)) throw DataError("kde: bandwidth must be positive");
  const double norm = 1.0 / (static_cast<double>(samples.size()) * bandwidth * std::sqrt(2.0 * std::numbers::pi));
  const double inv_h = 1.0 / bandwidth;
  std::vector<double> out(grid.size());
  for_each_index(grid.size(), exec, [&](std::size_t g) {
    double acc = 0.0;
    for (double s : samples) {
      const double u = (grid[g] - s) * inv_h;
      acc += std::exp(-0.5 * u * u);
    }
    out[g] = std::max(acc * norm, kDensityFloor);
  });
  return out;
}

double kl_trapezoid(std::span<const double> p, std::span<const double> q, double spacing) {
  if (p.size() != q.size() || p.size() < 2) throw DataError("kl: density grids must match and have >= 2 points");
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double f = p[i] * std::log(p[i] / q[i]);
    total += (i == 0 || i + 1 == p.size()) ? 0.5 * f : f;
  }
  return total * spacing;
}

double sym_kl_estimate(std::span<const double> samples_p, std::span<const double> samples_q, Execution exec) {
  const double hp = silverman_bandwidth(samples_p);
  const double hq = silverman_bandwidth(samples_q);
  const double h = std::max(hp, hq);
  double lo = std::min(*std::min_element(samples_p.begin(), samples_p.end()),
                       *std::min_element(samples_q.begin(), samples_q.end()));
  double hi = std::max(*std::max_element(samples_p.begin(), samples_p.end()),
                       *std::max_element(samples_q.begin(), samples_q.end()));
  lo -= 3.0 * h;
  hi += 3.0 * h;
  const double spacing = (hi - lo) / static_cast<double>(kKlGridPoints - 1);
  std::vector<double> grid(kKlGridPoints);
  for (std::size_t i = 0; i < kKlGridPoints; ++i) grid[i] = lo + spacing * static_cast<double>(i);
  const auto p = kde_density(samples_p, grid, hp, exec);
  const auto q = kde_density(samples_q, grid, hq, exec);
  const double d = 0.5 * kl_trapezoid(p, q, spacing) + 0.5 * kl_trapezoid(q, p, spacing);
  return std::max(d, 0.0);
}

double harmonic_mean_marginal_likelihood(std::span<const double> loglik_draws) {
  if (loglik_draws.empty()) throw DataError("harmonic mean: need at least one draw");
  std::vector<double> neg(loglik_draws.size());
  for (std::size_t i = 0; i < neg.size(); ++i) {
    if (!std::isfinite(loglik_draws[i])) throw DataError("harmonic mean: non-finite log-likelihood");
    neg[i] = -loglik_draws[i];
  }
  return std::log(static_cast<double>(neg.size())) - log_sum_exp(neg);
}

double bayes_factor(double log_ml_a, double log_ml_b) {
  if (!std::isfinite(log_ml_a) || !std::isfinite(log_ml_b)) throw DataError("bayes_factor: non-finite evidence");
  return std::exp(log_ml_a - log_ml_b);
}

}  // namespace ppn
