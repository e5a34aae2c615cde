#include "ppn/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

#include "ppn/datagen.hpp"
#include "ppn/error.hpp"

namespace ppn {

namespace {

ModelFamily family_from(const std::string& s) {
  if (s == "gmm") return ModelFamily::gmm;
  if (s == "multmix") return ModelFamily::multmix;
  if (s == "regression") return ModelFamily::regression;
  if (s == "ppca") return ModelFamily::ppca;
  throw ParameterError("unknown model family '" + s + "'");
}

void reject_unknown(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, _] : j.items()) {
    if (!allowed.contains(key)) throw ParameterError(where + ": unknown key '" + key + "'");
  }
}

std::string default_id(const ModelConfig& m) {
  switch (m.family) {
    case ModelFamily::regression:
      return m.regression == RegressionKind::with_covariates ? "B" : "A";
    case ModelFamily::ppca:
      return "PPCA-" + std::to_string(m.k);
    default:
      return "K" + std::to_string(m.k);
  }
}

RegressionKind regression_from(const std::string& s) {
  if (s == "A" || s == "a" || s == "intercept") return RegressionKind::intercept_only;
  if (s == "B" || s == "b" || s == "covariates") return RegressionKind::with_covariates;
  throw ParameterError("regression kind must be A or B, got '" + s + "'");
}

ModelConfig model_from_json(const Json& j) {
  reject_unknown(j, {"id", "family", "K", "kind", "iters", "burnin", "thin", "restarts", "tol", "max_iters", "reduction"}, "model");
  ModelConfig m;
  m.family = family_from(j.at("family").get<std::string>());
  if (m.family == ModelFamily::regression) {
    m.regression = regression_from(j.at("kind").get<std::string>());
  } else {
    const auto k = j.at("K").get<long long>();
    if (k < 1) throw ParameterError("model: K must be >= 1");
    m.k = static_cast<std::size_t>(k);
  }
  m.gibbs.iters = j.value("iters", m.gibbs.iters);
  m.gibbs.burnin = j.value("burnin", m.gibbs.burnin);
  m.gibbs.thin = j.value("thin", m.gibbs.thin);
  m.gibbs.restarts = j.value("restarts", m.gibbs.restarts);
  m.tol = j.value("tol", m.tol);
  m.max_iters = j.value("max_iters", m.max_iters);
  if (j.contains("reduction")) m.reduction = reduction_from_string(j.at("reduction").get<std::string>());
  m.id = j.value("id", default_id(m));
  return m;
}

}  // namespace

ModelConfig parse_model_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ParameterError("model spec must look like family:K, got '" + spec + "'");
  ModelConfig m;
  m.family = family_from(spec.substr(0, colon));
  const std::string arg = spec.substr(colon + 1);
  if (m.family == ModelFamily::regression) {
    m.regression = regression_from(arg);
  } else {
    std::size_t used = 0;
    long long k = 0;
    try {
      k = std::stoll(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != arg.size() || k < 1) throw ParameterError("model spec '" + spec + "': K must be a positive integer");
    m.k = static_cast<std::size_t>(k);
  }
  m.id = default_id(m);
  return m;
}

ModelPtr build_model(const ModelConfig& m) {
  switch (m.family) {
    case ModelFamily::gmm:
      return make_gmm_model(m.id, m.k, m.gibbs);
    case ModelFamily::multmix:
      return make_multmix_model(m.id, m.k, m.gibbs);
    case ModelFamily::regression:
      return make_regression_model(m.id, m.regression);
    case ModelFamily::ppca:
      return make_ppca_model(m.id, m.k, m.tol, m.max_iters);
  }
  throw ParameterError("unknown model family");
}

DiagnosticSpec build_spec(const ModelConfig& m, const ModelPtr& model, std::size_t draws) {
  DiagnosticSpec s = model->default_spec(draws);
  if (m.reduction) s.reduction = *m.reduction;
  return s;
}

RunConfig parse_run_config(const Json& j, const std::filesystem::path& base_dir) {
  try {
    reject_unknown(j,
                   {"data", "generate", "data_kind", "level_sizes", "response_first", "models", "split", "R", "B",
                    "alpha", "tau", "seed", "mode", "serial"},
                   "config");
    RunConfig c;
    if (j.contains("data")) {
      std::filesystem::path p = j.at("data").get<std::string>();
      c.data.path = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
    } else if (j.contains("generate")) {
      const auto& g = j.at("generate");
      reject_unknown(g, {"preset", "n"}, "generate");
      c.data.preset = g.at("preset").get<std::string>();
      c.data.n = g.at("n").get<std::size_t>();
    }
    const std::string kind = j.value("data_kind", std::string("continuous"));
    if (kind == "categorical") {
      c.data.csv.kind = DataKind::categorical_onehot;
    } else if (kind != "continuous") {
      throw ParameterError("config: data_kind must be continuous or categorical");
    }
    c.data.csv.level_sizes = j.value("level_sizes", std::vector<std::size_t>{});
    c.data.csv.response_first = j.value("response_first", false);

    if (j.contains("models"))
      for (const auto& m : j.at("models")) c.models.push_back(model_from_json(m));
    if (j.contains("split")) {
      const auto f = j.at("split").get<std::vector<double>>();
      if (f.size() != 3) throw ParameterError("config: split needs three fractions");
      c.split = {f[0], f[1], f[2]};
    }
    c.study.check.replicates = j.value("R", c.study.check.replicates);
    c.study.check.draws = j.value("B", c.study.check.draws);
    c.study.check.alpha = j.value("alpha", c.study.check.alpha);
    c.study.check.tau = j.value("tau", c.study.check.tau);
    if (j.value("serial", false)) c.study.check.exec = Execution::serial;
    const std::string mode = j.value("mode", std::string("full"));
    if (mode == "chain") {
      c.study.mode = StudyMode::chain;
    } else if (mode != "full") {
      throw ParameterError("config: mode must be full or chain");
    }
    c.seed = j.value("seed", std::uint64_t{0});
    c.study.check.validate();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("config: ") + e.what());
  }
}

std::optional<std::uint64_t> seed_from_env() {
  const char* env = std::getenv("PPN_SEED");
  if (env == nullptr || *env == '\0') return std::nullopt;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(env, &used);
    if (env[used] != '\0') throw ParameterError("PPN_SEED must be an unsigned integer");
    return v;
  } catch (const std::logic_error&) {
    throw ParameterError("PPN_SEED must be an unsigned integer");
  }
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError("config " + path.string() + ": " + e.what());
  }
  RunConfig c = parse_run_config(j, path.parent_path());
  if (const auto s = seed_from_env()) c.seed = *s;
  return c;
}

Dataset load_data(const DataSource& source, Seed seed) {
  if (source.path) return read_csv(*source.path, source.csv);
  if (source.preset.empty()) throw ParameterError("no data source: give a data path or a generate preset");
  return generate_preset(source.preset, source.n, seed.child("data"));
}

}  // namespace ppn
