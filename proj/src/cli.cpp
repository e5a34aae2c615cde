#include "ppn/cli.hpp"

#include <CLI11.hpp>
#include <fstream>

#include "ppn/checks.hpp"
#include "ppn/config.hpp"
#include "ppn/datagen.hpp"
#include "ppn/error.hpp"
#include "ppn/report.hpp"

namespace ppn {

namespace {

struct DataFlags {
  std::string data;
  std::string config;
  bool categorical = false;
  std::vector<std::size_t> levels;
  bool response_first = false;
  std::optional<std::uint64_t> seed;
  std::string out;
};

void add_data_flags(CLI::App* cmd, DataFlags& f) {
  cmd->add_option("--data", f.data, "Dataset CSV (header row)")->required();
  cmd->add_option("--config", f.config, "JSON configuration (R, B, alpha, tau, split, seed)");
  cmd->add_flag("--categorical", f.categorical, "CSV holds 1-based level codes");
  cmd->add_option("--levels", f.levels, "Level count per categorical column");
  cmd->add_flag("--response-first", f.response_first, "First column is the response, the rest covariates");
  cmd->add_option("--seed", f.seed, "Root seed (PPN_SEED overrides the config seed)");
  cmd->add_option("--out", f.out, "Output JSON path (stdout when omitted)");
}

RunConfig resolve(const DataFlags& f) {
  RunConfig c = f.config.empty() ? parse_run_config(Json::object()) : load_run_config(f.config);
  if (f.config.empty())
    if (const auto s = seed_from_env()) c.seed = *s;
  if (f.seed) c.seed = *f.seed;
  c.data.path = f.data;
  if (f.categorical) c.data.csv.kind = DataKind::categorical_onehot;
  if (!f.levels.empty()) c.data.csv.level_sizes = f.levels;
  if (f.response_first) c.data.csv.response_first = true;
  return c;
}

void write_json(const Json& j, const std::string& path, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot write " + path);
  file << text;
  if (!file) throw IoError("write failed for " + path);
}

DataSplit load_split(const RunConfig& c) {
  const Seed root(c.seed);
  return split_data(load_data(c.data, root), c.split, root.child("split-data"));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Posterior predictive null checks and studies", "ppn"};
  app.require_subcommand(1);

  std::string preset;
  std::size_t gen_n = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "Write a synthetic dataset CSV");
  generate->add_option("preset", preset, "gmm | regression | linear-factor | nonlinear-factor | multmix")
      ->required()
      ->check(CLI::IsMember(preset_names()));
  generate->add_option("--n", gen_n, "Rows")->required()->check(CLI::PositiveNumber);
  generate->add_option("--seed", gen_seed, "Seed");
  generate->add_option("--out", gen_out, "Output CSV")->required();

  DataFlags check_flags;
  std::string check_model;
  auto* check = app.add_subcommand("check", "Heldout predictive check of one model");
  add_data_flags(check, check_flags);
  check->add_option("--model", check_model, "Model, e.g. gmm:3, multmix:2, regression:B, ppca:2")->required();

  DataFlags ppn_flags;
  std::string model_a;
  std::string model_b;
  auto* ppn = app.add_subcommand("ppn", "Posterior predictive null: B's data under A's diagnostic");
  add_data_flags(ppn, ppn_flags);
  ppn->add_option("--model-a", model_a, "Diagnostic owner")->required();
  ppn->add_option("--model-b", model_b, "Data source")->required();

  std::string study_config;
  std::string out_dir;
  auto* study = app.add_subcommand("study", "Full PPN study from a configuration file");
  study->add_option("--config", study_config, "JSON configuration")->required();
  study->add_option("--out-dir", out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (generate->parsed()) {
      write_csv(generate_preset(preset, gen_n, Seed(gen_seed)), gen_out);
      return 0;
    }
    if (check->parsed()) {
      const RunConfig c = resolve(check_flags);
      const ModelConfig mc = parse_model_spec(check_model);
      const ModelPtr model = build_model(mc);
      const auto outcome = heldout_predictive_check(load_split(c), model, build_spec(mc, model, c.study.check.draws),
                                                    c.study.check, Seed(c.seed));
      write_json(to_json(outcome), check_flags.out, out);
      return 0;
    }
    if (ppn->parsed()) {
      const RunConfig c = resolve(ppn_flags);
      const ModelConfig ma = parse_model_spec(model_a);
      ModelConfig mb = parse_model_spec(model_b);
      if (mb.id == ma.id) mb.id += "'";
      const ModelPtr a = build_model(ma);
      const ModelPtr b = build_model(mb);
      const auto outcome = ppn_check(load_split(c), a, b, build_spec(ma, a, c.study.check.draws), c.study.check,
                                     Seed(c.seed));
      write_json(to_json(outcome), ppn_flags.out, out);
      return 0;
    }
    if (study->parsed()) {
      const RunConfig c = load_run_config(study_config);
      std::vector<ModelPtr> models;
      std::vector<DiagnosticSpec> specs;
      for (const auto& mc : c.models) {
        models.push_back(build_model(mc));
        specs.push_back(build_spec(mc, models.back(), c.study.check.draws));
      }
      const auto report = ppn_study(load_split(c), models, specs, c.study, Seed(c.seed));
      emit_report(report, out_dir);
      for (const auto& d : report.diagonal)
        out << d.model << ": p = " << d.p_value << (d.pass ? " pass" : " fail") << '\n';
      for (const auto& p : report.off_diagonal)
        out << p.diagnostic_owner << " <- " << p.data_source << ": sym_kl = " << p.sym_kl
            << (p.fools ? " fools" : "") << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace ppn
