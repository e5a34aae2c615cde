#include "ppn/model.hpp"

#include "ppn/error.hpp"
#include "ppn/ppca.hpp"
#include "ppn/regression.hpp"

namespace ppn {

std::string to_string(ModelFamily f) {
  switch (f) {
    case ModelFamily::gmm:
      return "gmm";
    case ModelFamily::multmix:
      return "multmix";
    case ModelFamily::regression:
      return "regression";
    case ModelFamily::ppca:
      return "ppca";
  }
  return "gmm";
}

namespace {

// Mixture families share the fit-draws-then-reduce structure. `prepare`
// converts the dataset once per evaluation, before the loop over draws.
template <typename State, typename Fit, typename Sample, typename Prepare, typename Realized>
class MixtureModel final : public Model {
 public:
  MixtureModel(std::string id, ModelFamily family, Fit fit, Sample sample, Prepare prepare, Realized realized)
      : id_(std::move(id)), family_(family), fit_(std::move(fit)), sample_(std::move(sample)),
        prepare_(std::move(prepare)), realized_(std::move(realized)) {}

  const std::string& id() const override { return id_; }
  ModelFamily family() const override { return family_; }
  Reduction default_reduction() const override { return Reduction::average; }

  std::shared_ptr<const Replicator> fit_predictive(const Dataset& x_in, Seed seed) const override {
    auto draws = fit_(x_in, seed);
    draws.model_id = id_;
    return std::make_shared<Replicas>(std::move(draws), sample_);
  }

  std::shared_ptr<const ValidationDiagnostic> fit_diagnostic(const Dataset& x_val, const DiagnosticSpec& spec,
                                                             Seed seed) const override {
    if (spec.owner != id_) throw WiringError("diagnostic spec of '" + spec.owner + "' given to model '" + id_ + "'");
    auto draws = fit_(x_val, seed);
    draws.model_id = id_;
    return std::make_shared<Diagnostic>(std::move(draws), spec, prepare_, realized_);
  }

 private:
  class Replicas final : public Replicator {
   public:
    Replicas(PosteriorDraws<State> draws, Sample sample) : draws_(std::move(draws)), sample_(std::move(sample)) {}
    Dataset replicate(std::size_t r, const Dataset& shape, Seed seed) const override {
      VariateStream stream(seed);
      return sample_(draws_.states[r % draws_.size()], shape, stream);
    }

   private:
    PosteriorDraws<State> draws_;
    Sample sample_;
  };

  class Diagnostic final : public ValidationDiagnostic {
   public:
    Diagnostic(PosteriorDraws<State> draws, DiagnosticSpec spec, Prepare prepare, Realized realized)
        : draws_(std::move(draws)), spec_(std::move(spec)), prepare_(std::move(prepare)),
          realized_(std::move(realized)) {}
    double evaluate(const Dataset& x, Seed seed) const override {
      decltype(auto) prepared = prepare_(x);
      return validation_diagnostic(prepared, spec_, draws_, realized_, seed);
    }

   private:
    PosteriorDraws<State> draws_;
    DiagnosticSpec spec_;
    Prepare prepare_;
    Realized realized_;
  };

  std::string id_;
  ModelFamily family_;
  Fit fit_;
  Sample sample_;
  Prepare prepare_;
  Realized realized_;
};

template <typename State, typename Fit, typename Sample, typename Prepare, typename Realized>
ModelPtr make_mixture(std::string id, ModelFamily family, Fit fit, Sample sample, Prepare prepare, Realized realized) {
  return std::make_shared<MixtureModel<State, Fit, Sample, Prepare, Realized>>(
      std::move(id), family, std::move(fit), std::move(sample), std::move(prepare), std::move(realized));
}

Matrix covariates_or_empty(const Dataset& d) {
  return d.covariates() ? *d.covariates() : Matrix(static_cast<Eigen::Index>(d.rows()), 0);
}

class RegressionModel final : public Model {
 public:
  RegressionModel(std::string id, RegressionKind kind) : id_(std::move(id)), kind_(kind) {}

  const std::string& id() const override { return id_; }
  ModelFamily family() const override { return ModelFamily::regression; }
  Reduction default_reduction() const override { return Reduction::map; }

  std::shared_ptr<const Replicator> fit_predictive(const Dataset& x_in, Seed) const override {
    return std::make_shared<Replicas>(fit(x_in));
  }

  std::shared_ptr<const ValidationDiagnostic> fit_diagnostic(const Dataset& x_val, const DiagnosticSpec& spec,
                                                             Seed) const override {
    if (spec.owner != id_) throw WiringError("diagnostic spec of '" + spec.owner + "' given to model '" + id_ + "'");
    // The diagnostic is built from the validation posterior's predictive mean,
    // which does not depend on a draw; both reductions coincide.
    return std::make_shared<Diagnostic>(fit(x_val));
  }

 private:
  RegressionPosterior fit(const Dataset& d) const {
    return regression_fit(d, kind_ == RegressionKind::with_covariates);
  }

  class Replicas final : public Replicator {
   public:
    explicit Replicas(RegressionPosterior post) : post_(std::move(post)) {}
    Dataset replicate(std::size_t, const Dataset& shape, Seed seed) const override {
      VariateStream stream(seed);
      const Matrix x = covariates_or_empty(shape);
      Matrix y = regression_replicate(post_, x, stream);
      if (shape.covariates()) return Dataset::continuous(std::move(y), *shape.covariates());
      return Dataset::continuous(std::move(y));
    }

   private:
    RegressionPosterior post_;
  };

  class Diagnostic final : public ValidationDiagnostic {
   public:
    explicit Diagnostic(RegressionPosterior post) : post_(std::move(post)) {}
    double evaluate(const Dataset& x, Seed) const override {
      if (x.cols() != 1) throw DataError("regression diagnostic: expected a single response column");
      return regression_diagnostic(x.values().col(0), covariates_or_empty(x), post_);
    }

   private:
    RegressionPosterior post_;
  };

  std::string id_;
  RegressionKind kind_;
};

class PpcaModel final : public Model {
 public:
  PpcaModel(std::string id, std::size_t latent, double tol, std::size_t max_iters)
      : id_(std::move(id)), latent_(latent), tol_(tol), max_iters_(max_iters) {
    if (latent_ < 1) throw DimensionError("ppca: latent dimension must be >= 1");
  }

  const std::string& id() const override { return id_; }
  ModelFamily family() const override { return ModelFamily::ppca; }
  Reduction default_reduction() const override { return Reduction::map; }

  std::shared_ptr<const Replicator> fit_predictive(const Dataset& x_in, Seed) const override {
    return std::make_shared<Replicas>(ppca_em_fit(x_in, latent_, tol_, max_iters_).params);
  }

  std::shared_ptr<const ValidationDiagnostic> fit_diagnostic(const Dataset& x_val, const DiagnosticSpec& spec,
                                                             Seed) const override {
    if (spec.owner != id_) throw WiringError("diagnostic spec of '" + spec.owner + "' given to model '" + id_ + "'");
    // Point estimate only: the average reduction over one state equals MAP.
    return std::make_shared<Diagnostic>(ppca_em_fit(x_val, latent_, tol_, max_iters_).params);
  }

 private:
  class Replicas final : public Replicator {
   public:
    explicit Replicas(PpcaParams params) : params_(std::move(params)) {}
    Dataset replicate(std::size_t, const Dataset& shape, Seed seed) const override {
      VariateStream stream(seed);
      return Dataset::continuous(ppca_sample_rows(params_, shape.rows(), stream));
    }

   private:
    PpcaParams params_;
  };

  class Diagnostic final : public ValidationDiagnostic {
   public:
    explicit Diagnostic(PpcaParams params) : params_(std::move(params)) {}
    double evaluate(const Dataset& x, Seed) const override {
      return ppca_reconstruction_diagnostic(x.values(), params_);
    }

   private:
    PpcaParams params_;
  };

  std::string id_;
  std::size_t latent_;
  double tol_;
  std::size_t max_iters_;
};

}  // namespace

ModelPtr make_gmm_model(std::string id, std::size_t components, GibbsConfig config, GmmPrior prior) {
  if (components < 1) throw ParameterError("gmm: K must be >= 1");
  config.validate();
  auto fit = [=](const Dataset& x, Seed seed) { return gmm_gibbs_fit(x, components, config, seed, prior); };
  auto sample = [](const GmmState& s, const Dataset& shape, VariateStream& stream) {
    return Dataset::continuous(gmm_sample_rows(s, shape.rows(), stream));
  };
  auto prepare = [](const Dataset& x) -> const Matrix& { return x.values(); };
  auto realized = [](const Matrix& x, const GmmState& s, VariateStream& stream) {
    return gmm_loglik_diagnostic(x, s, stream);
  };
  return make_mixture<GmmState>(std::move(id), ModelFamily::gmm, fit, sample, prepare, realized);
}

ModelPtr make_multmix_model(std::string id, std::size_t components, GibbsConfig config, MultMixPrior prior) {
  if (components < 1) throw ParameterError("multmix: K must be >= 1");
  config.validate();
  auto fit = [=](const Dataset& x, Seed seed) { return multmix_gibbs_fit(x, components, config, seed, prior); };
  auto sample = [](const MultMixState& s, const Dataset& shape, VariateStream& stream) {
    return multmix_sample(s, shape.level_sizes(), shape.rows(), stream);
  };
  auto prepare = [](const Dataset& x) { return level_codes(x); };
  auto realized = [](const LevelCodes& x, const MultMixState& s, VariateStream&) {
    return multmix_chi2_diagnostic(x, s);
  };
  return make_mixture<MultMixState>(std::move(id), ModelFamily::multmix, fit, sample, prepare, realized);
}

ModelPtr make_regression_model(std::string id, RegressionKind kind) {
  return std::make_shared<RegressionModel>(std::move(id), kind);
}

ModelPtr make_ppca_model(std::string id, std::size_t latent_dims, double tol, std::size_t max_iters) {
  return std::make_shared<PpcaModel>(std::move(id), latent_dims, tol, max_iters);
}

}  // namespace ppn
