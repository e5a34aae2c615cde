#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "ppn/dataset.hpp"
#include "ppn/model.hpp"
#include "ppn/outcomes.hpp"
#include "ppn/parallel.hpp"
#include "ppn/random.hpp"

namespace ppn {

struct CheckConfig {
  /// Posterior-predictive replicates per model.
  std::size_t replicates = 200;
  /// Posterior draws for the average reduction; 0 uses every retained draw.
  std::size_t draws = 0;
  double alpha = 0.1;
  double tau = 1.0;
  Execution exec = Execution::parallel;

  void validate() const;
};

/// A model with its x_in predictive and x_val diagnostic fitted.
struct FittedModel {
  ModelPtr model;
  std::shared_ptr<const Replicator> predictive;
  std::shared_ptr<const ValidationDiagnostic> diagnostic;
};

/// Fits the predictive on x_in and the diagnostic on x_val. The diagnostic
/// uses the model's default reduction unless `spec` is given.
FittedModel fit_model(const DataSplit& split, const ModelPtr& model, const CheckConfig& config, Seed seed,
                      const DiagnosticSpec* spec = nullptr);

/// d(x_rep,r; x_val) for r in [0, R): replicates of `source` shaped like
/// `shape`, scored by `owner`'s diagnostic. Every replicate and every
/// evaluation draws from its own labeled stream, so the serial and parallel
/// paths agree bit for bit.
std::vector<double> replicate_diagnostics(const FittedModel& owner, const FittedModel& source, const Dataset& shape,
                                          std::size_t R, Seed seed, Execution exec);

/// Heldout predictive check: reference from x_in replicates, located at
/// d(x_out; x_val).
CheckOutcome heldout_predictive_check(const DataSplit& split, const ModelPtr& model, const DiagnosticSpec& spec,
                                      const CheckConfig& config, Seed seed);
CheckOutcome heldout_predictive_check(const DataSplit& split, const ModelPtr& model, const CheckConfig& config,
                                      Seed seed);

/// Classical posterior predictive p-value: everything fitted on x_obs.
/// Uncalibrated; provided for comparison.
CheckOutcome posterior_predictive_pvalue(const Dataset& x_obs, const ModelPtr& model, const DiagnosticSpec& spec,
                                         const CheckConfig& config, Seed seed);

/// PPN with A's diagnostic: A's replicates versus B's replicates, both
/// conditioned on x_in. Standalone calls are flagged `unchecked`.
PpnOutcome ppn_check(const DataSplit& split, const ModelPtr& model_a, const ModelPtr& model_b,
                     const DiagnosticSpec& spec_a, const CheckConfig& config, Seed seed);
PpnOutcome ppn_check(const DataSplit& split, const ModelPtr& model_a, const ModelPtr& model_b,
                     const CheckConfig& config, Seed seed);

struct StudyConfig {
  CheckConfig check;
  StudyMode mode = StudyMode::full;
};

/// Heldout checks for every model, then PPNs among the passers: all ordered
/// pairs in full mode, consecutive pairs (owner = later model) in chain mode.
/// `specs` may be empty (default reductions) or one per model.
StudyReport ppn_study(const DataSplit& split, const std::vector<ModelPtr>& models,
                      const std::vector<DiagnosticSpec>& specs, const StudyConfig& config, Seed seed);

}  // namespace ppn
