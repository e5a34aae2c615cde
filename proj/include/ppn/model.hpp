#pragma once

#include <memory>
#include <string>

#include "ppn/dataset.hpp"
#include "ppn/diagnostics.hpp"
#include "ppn/gmm.hpp"
#include "ppn/multmix.hpp"
#include "ppn/posterior.hpp"
#include "ppn/random.hpp"

namespace ppn {

/// Posterior predictive of a model fitted on x_in.
class Replicator {
 public:
  virtual ~Replicator() = default;
  /// Replicate number r, shaped like `shape` (row count; covariates for
  /// regression). Pure function of (r, shape, seed).
  [[nodiscard]] virtual Dataset replicate(std::size_t r, const Dataset& shape, Seed seed) const = 0;
};

/// A validation diagnostic d(.; x_val) with its x_val fit frozen inside.
class ValidationDiagnostic {
 public:
  virtual ~ValidationDiagnostic() = default;
  [[nodiscard]] virtual double evaluate(const Dataset& x, Seed seed) const = 0;
};

enum class ModelFamily { gmm, multmix, regression, ppca };

std::string to_string(ModelFamily f);

class Model {
 public:
  virtual ~Model() = default;

  [[nodiscard]] virtual const std::string& id() const = 0;
  [[nodiscard]] virtual ModelFamily family() const = 0;
  [[nodiscard]] virtual Reduction default_reduction() const = 0;

  [[nodiscard]] virtual std::shared_ptr<const Replicator> fit_predictive(const Dataset& x_in, Seed seed) const = 0;
  [[nodiscard]] virtual std::shared_ptr<const ValidationDiagnostic> fit_diagnostic(const Dataset& x_val,
                                                                                   const DiagnosticSpec& spec,
                                                                                   Seed seed) const = 0;

  /// Diagnostic spec for this model with its default reduction.
  [[nodiscard]] DiagnosticSpec default_spec(std::size_t draws = 0) const {
    return DiagnosticSpec{id(), default_reduction(), draws};
  }
};

using ModelPtr = std::shared_ptr<const Model>;

enum class RegressionKind { intercept_only, with_covariates };

ModelPtr make_gmm_model(std::string id, std::size_t components, GibbsConfig config = {}, GmmPrior prior = {});
ModelPtr make_multmix_model(std::string id, std::size_t components, GibbsConfig config = {}, MultMixPrior prior = {});
ModelPtr make_regression_model(std::string id, RegressionKind kind);
ModelPtr make_ppca_model(std::string id, std::size_t latent_dims, double tol = 1e-8, std::size_t max_iters = 1000);

}  // namespace ppn
