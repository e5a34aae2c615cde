#pragma once

#include <cstddef>
#include <string>

#include "ppn/dataset.hpp"
#include "ppn/error.hpp"
#include "ppn/posterior.hpp"
#include "ppn/random.hpp"

namespace ppn {

/// How a realized diagnostic d(x, theta) is reduced to a function of x.
enum class Reduction {
  average,  // (1/B) sum_b d(x, theta_b) over draws fitted on x_val
  map,      // d(x, theta_hat) at the highest-posterior draw / point estimate
};

std::string to_string(Reduction r);
Reduction reduction_from_string(const std::string& s);

struct DiagnosticSpec {
  std::string owner;
  Reduction reduction = Reduction::average;
  /// Posterior draws used by the average reduction; 0 means all retained.
  std::size_t draws = 0;
};

/// Indices of `used` draws spread evenly over `available`.
std::vector<std::size_t> thinned_indices(std::size_t available, std::size_t used);

/// Validation diagnostic d(x; x_val). `realized(x, state, stream)` evaluates
/// the model's realized diagnostic; `draws` must come from a fit on x_val.
/// Each retained state gets its own child stream of `seed`, so the value is
/// a pure function of (x, draws, seed).
template <typename Data, typename State, typename Realized>
double validation_diagnostic(const Data& x, const DiagnosticSpec& spec, const PosteriorDraws<State>& draws,
                             Realized&& realized, Seed seed) {
  if (draws.states.empty()) throw WiringError("validation diagnostic: no posterior draws");
  if (!spec.owner.empty() && !draws.model_id.empty() && spec.owner != draws.model_id) {
    throw WiringError("validation diagnostic: draws of '" + draws.model_id + "' used for diagnostic of '" +
                      spec.owner + "'");
  }
  if (spec.reduction == Reduction::map) {
    VariateStream stream(seed.child("map"));
    return realized(x, draws.states[draws.map_index()], stream);
  }
  const std::size_t B = spec.draws == 0 ? draws.size() : spec.draws;
  if (B > draws.size()) {
    throw WiringError("validation diagnostic: B=" + std::to_string(B) + " exceeds " + std::to_string(draws.size()) +
                      " retained draws");
  }
  double total = 0.0;
  for (const std::size_t b : thinned_indices(draws.size(), B)) {
    VariateStream stream(seed.child(b));
    total += realized(x, draws.states[b], stream);
  }
  return total / static_cast<double>(B);
}

/// Overall chi-square diagnostic sum over cells of (x - mean)^2 / var.
double chi2_overall_diagnostic(const Matrix& x, const Matrix& predictive_mean, const Matrix& predictive_var);

}  // namespace ppn
