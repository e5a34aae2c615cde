#include "ppn/checks.hpp"

#include <exception>
#include <set>
#include <string>

#include "ppn/error.hpp"
#include "ppn/estimators.hpp"

namespace ppn {

void CheckConfig::validate() const {
  if (replicates < 1) throw ParameterError("check: replicates R must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("check: alpha must lie in (0, 1)");
  if (!(tau >= 0.0)) throw ParameterError("check: tau must be >= 0");
}

namespace {

// Runs fn, rethrowing any failure tagged with the model and stage.
template <typename Fn>
auto staged(const std::string& model, const char* stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    std::throw_with_nested(StageError(model, stage, e.what()));
  }
}

DiagnosticSpec spec_for(const Model& model, const CheckConfig& config, const DiagnosticSpec* spec) {
  if (spec != nullptr) return *spec;
  return model.default_spec(config.draws);
}

double observed_diagnostic(const FittedModel& fitted, const Dataset& x, Seed seed) {
  const auto& id = fitted.model->id();
  return staged(id, "observed diagnostic",
                [&] { return fitted.diagnostic->evaluate(x, seed.child("observed", id)); });
}

PpnOutcome make_ppn(const FittedModel& owner, const FittedModel& source, std::vector<double> own_samples,
                    const Dataset& shape, const CheckConfig& config, Seed seed) {
  PpnOutcome out;
  out.diagnostic_owner = owner.model->id();
  out.data_source = source.model->id();
  out.samples_a = std::move(own_samples);
  out.samples_b = replicate_diagnostics(owner, source, shape, config.replicates, seed, config.exec);
  out.sym_kl = staged(out.diagnostic_owner, "symmetric KL",
                      [&] { return sym_kl_estimate(out.samples_a, out.samples_b, config.exec); });
  out.fools = out.sym_kl <= config.tau;
  return out;
}

}  // namespace

FittedModel fit_model(const DataSplit& split, const ModelPtr& model, const CheckConfig& config, Seed seed,
                      const DiagnosticSpec* spec) {
  if (!model) throw WiringError("fit_model: null model");
  const auto& id = model->id();
  FittedModel fitted{model, nullptr, nullptr};
  fitted.predictive = staged(id, "fit on x_in", [&] { return model->fit_predictive(split.x_in, seed.child("fit", id, "in")); });
  const DiagnosticSpec s = spec_for(*model, config, spec);
  fitted.diagnostic = staged(id, "fit on x_val", [&] {
    return model->fit_diagnostic(split.x_val, s, seed.child("fit", id, "val"));
  });
  return fitted;
}

std::vector<double> replicate_diagnostics(const FittedModel& owner, const FittedModel& source, const Dataset& shape,
                                          std::size_t R, Seed seed, Execution exec) {
  if (R < 1) throw ParameterError("replicate_diagnostics: R must be >= 1");
  const auto& owner_id = owner.model->id();
  const auto& source_id = source.model->id();
  const Seed replicate_seed = seed.child("replicate", source_id);
  const Seed diagnostic_seed = seed.child("diagnostic", owner_id, source_id);
  std::vector<double> out(R);
  for_each_index(R, exec, [&](std::size_t r) {
    const Dataset x = staged(source_id, "replicate", [&] {
      return source.predictive->replicate(r, shape, replicate_seed.child(static_cast<std::uint64_t>(r)));
    });
    out[r] = staged(owner_id, "replicate diagnostic", [&] {
      return owner.diagnostic->evaluate(x, diagnostic_seed.child(static_cast<std::uint64_t>(r)));
    });
  });
  return out;
}

CheckOutcome heldout_predictive_check(const DataSplit& split, const ModelPtr& model, const DiagnosticSpec& spec,
                                      const CheckConfig& config, Seed seed) {
  config.validate();
  const FittedModel fitted = fit_model(split, model, config, seed, &spec);
  const double observed = observed_diagnostic(fitted, split.x_out, seed);
  auto reps = replicate_diagnostics(fitted, fitted, split.x_out, config.replicates, seed, config.exec);
  return make_check_outcome(model->id(), std::move(reps), observed, config.alpha);
}

CheckOutcome heldout_predictive_check(const DataSplit& split, const ModelPtr& model, const CheckConfig& config,
                                      Seed seed) {
  if (!model) throw WiringError("heldout_predictive_check: null model");
  return heldout_predictive_check(split, model, model->default_spec(config.draws), config, seed);
}

CheckOutcome posterior_predictive_pvalue(const Dataset& x_obs, const ModelPtr& model, const DiagnosticSpec& spec,
                                         const CheckConfig& config, Seed seed) {
  config.validate();
  if (!model) throw WiringError("posterior_predictive_pvalue: null model");
  const auto& id = model->id();
  FittedModel fitted{model, nullptr, nullptr};
  fitted.predictive = staged(id, "fit on x_obs", [&] { return model->fit_predictive(x_obs, seed.child("fit", id, "obs")); });
  fitted.diagnostic = staged(id, "fit on x_obs", [&] {
    return model->fit_diagnostic(x_obs, spec, seed.child("fit", id, "obs-diagnostic"));
  });
  const double observed = observed_diagnostic(fitted, x_obs, seed);
  auto reps = replicate_diagnostics(fitted, fitted, x_obs, config.replicates, seed, config.exec);
  return make_check_outcome(id, std::move(reps), observed, config.alpha);
}

PpnOutcome ppn_check(const DataSplit& split, const ModelPtr& model_a, const ModelPtr& model_b,
                     const DiagnosticSpec& spec_a, const CheckConfig& config, Seed seed) {
  config.validate();
  if (!model_a || !model_b) throw WiringError("ppn_check: null model");
  if (spec_a.owner != model_a->id()) {
    throw WiringError("ppn_check: diagnostic of '" + spec_a.owner + "' does not belong to '" + model_a->id() + "'");
  }
  const FittedModel a = fit_model(split, model_a, config, seed, &spec_a);
  // B only contributes replicates; its own diagnostic is never evaluated.
  FittedModel b{model_b, nullptr, nullptr};
  b.predictive = staged(model_b->id(), "fit on x_in",
                        [&] { return model_b->fit_predictive(split.x_in, seed.child("fit", model_b->id(), "in")); });
  auto own = replicate_diagnostics(a, a, split.x_out, config.replicates, seed, config.exec);
  PpnOutcome out = make_ppn(a, b, std::move(own), split.x_out, config, seed);
  out.unchecked = true;
  return out;
}

PpnOutcome ppn_check(const DataSplit& split, const ModelPtr& model_a, const ModelPtr& model_b,
                     const CheckConfig& config, Seed seed) {
  if (!model_a) throw WiringError("ppn_check: null model");
  return ppn_check(split, model_a, model_b, model_a->default_spec(config.draws), config, seed);
}

StudyReport ppn_study(const DataSplit& split, const std::vector<ModelPtr>& models,
                      const std::vector<DiagnosticSpec>& specs, const StudyConfig& config, Seed seed) {
  config.check.validate();
  if (models.size() < 2) throw ParameterError("ppn_study: at least two models are required");
  if (!specs.empty() && specs.size() != models.size()) {
    throw ParameterError("ppn_study: specs must be empty or one per model");
  }
  std::set<std::string> ids;
  for (const auto& m : models) {
    if (!m) throw WiringError("ppn_study: null model");
    if (!ids.insert(m->id()).second) throw ParameterError("ppn_study: duplicate model id '" + m->id() + "'");
  }

  const std::size_t M = models.size();
  const auto& cfg = config.check;

  // Fits are independent across models; each replicate loop below is itself
  // parallel, so the fits run with one task per model.
  std::vector<FittedModel> fitted(M);
  for_each_index(M, cfg.exec, [&](std::size_t m) {
    fitted[m] = fit_model(split, models[m], cfg, seed, specs.empty() ? nullptr : &specs[m]);
  });

  StudyReport report;
  report.alpha = cfg.alpha;
  report.tau = cfg.tau;
  report.mode = config.mode;
  for (const auto& m : models) report.models.push_back(m->id());

  std::vector<std::size_t> passers;
  for (std::size_t m = 0; m < M; ++m) {
    const double observed = observed_diagnostic(fitted[m], split.x_out, seed);
    auto reps = replicate_diagnostics(fitted[m], fitted[m], split.x_out, cfg.replicates, seed, cfg.exec);
    report.diagonal.push_back(make_check_outcome(models[m]->id(), std::move(reps), observed, cfg.alpha));
    if (report.diagonal.back().pass) passers.push_back(m);
  }
  if (passers.size() < 2) return report;

  auto run = [&](std::size_t owner, std::size_t source) {
    report.off_diagonal.push_back(make_ppn(fitted[owner], fitted[source], report.diagonal[owner].diagnostic_replicates,
                                           split.x_out, cfg, seed));
  };

  if (config.mode == StudyMode::chain) {
    for (std::size_t i = 1; i < passers.size(); ++i) run(passers[i], passers[i - 1]);
    return report;
  }

  for (const std::size_t owner : passers) {
    for (const std::size_t source : passers) {
      if (owner != source) run(owner, source);
    }
  }
  for (std::size_t i = 0; i < passers.size(); ++i) {
    for (std::size_t j = i + 1; j < passers.size(); ++j) {
      const auto& a = models[passers[i]]->id();
      const auto& b = models[passers[j]]->id();
      const bool a_fools_b = report.ppn(b, a)->fools;
      const bool b_fools_a = report.ppn(a, b)->fools;
      report.verdicts.push_back(PairVerdict{a, b, classify_pair(a_fools_b, b_fools_a)});
    }
  }
  return report;
}

}  // namespace ppn
