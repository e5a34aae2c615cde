#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ppn/checks.hpp"
#include "ppn/dataset.hpp"
#include "ppn/diagnostics.hpp"
#include "ppn/model.hpp"
#include "ppn/report.hpp"

namespace ppn {

/// One model entry of a study configuration.
struct ModelConfig {
  std::string id;
  ModelFamily family = ModelFamily::gmm;
  /// Components (mixtures) or latent dimensions (ppca).
  std::size_t k = 1;
  RegressionKind regression = RegressionKind::intercept_only;
  GibbsConfig gibbs;
  double tol = 1e-8;
  std::size_t max_iters = 1000;
  std::optional<Reduction> reduction;
};

/// Short model form used on the command line: gmm:3, multmix:2,
/// regression:A, regression:B, ppca:2.
ModelConfig parse_model_spec(const std::string& spec);

ModelPtr build_model(const ModelConfig& m);
DiagnosticSpec build_spec(const ModelConfig& m, const ModelPtr& model, std::size_t draws);

struct DataSource {
  std::optional<std::filesystem::path> path;
  CsvOptions csv;
  /// Generator preset and size, used when no path is given.
  std::string preset;
  std::size_t n = 0;
};

struct RunConfig {
  DataSource data;
  std::vector<ModelConfig> models;
  SplitFractions split = kEqualThirds;
  StudyConfig study;
  std::uint64_t seed = 0;
};

/// Parses a configuration object. Relative data paths resolve against
/// `base_dir`. Unknown keys are rejected.
RunConfig parse_run_config(const Json& j, const std::filesystem::path& base_dir = {});

/// Reads a JSON configuration file; PPN_SEED, when set, overrides the seed.
RunConfig load_run_config(const std::filesystem::path& path);

/// Seed from PPN_SEED, if set and valid.
std::optional<std::uint64_t> seed_from_env();

Dataset load_data(const DataSource& source, Seed seed);

}  // namespace ppn
