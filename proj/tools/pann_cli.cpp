//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

// Command-line driver: gen-data, calibrate, evaluate, verify, sweep.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pann/cli.hpp"
#include "pann/errors.hpp"

namespace fs = std::filesystem;
using namespace pann;

namespace {

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::string out = "out";
};

void add_common(CLI::App *cmd, CommonOptions &o) {
  cmd->add_option("--config", o.config, "Experiment config (JSON)");
  cmd->add_option("--seed", o.seed, "Override the global seed");
  cmd->add_option("--threads", o.threads, "Cap on worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out, "Output directory")->capture_default_str();
}

cli::ExperimentConfig resolve_config(const CommonOptions &o) {
  cli::ExperimentConfig c = o.config.empty() ? cli::config_from_json(nlohmann::json::object())
                                             : cli::load_config(o.config);
  if (o.seed)
    c.seed = *o.seed;
  if (o.threads)
    c.threads = *o.threads;
  c.resolve();
  return c;
}

std::optional<fs::path> opt_path(const std::string &s) {
  if (s.empty())
    return std::nullopt;
  return fs::path(s);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app { "Physics-augmented neural network hyperelasticity" };
  app.set_version_flag("--version", cli::version());
  app.require_subcommand(1);

  CommonOptions common;
  std::string data, model;

  CLI::App *gen = app.add_subcommand("gen-data", "Generate a strain-stress dataset");
  add_common(gen, common);

  CLI::App *cal = app.add_subcommand("calibrate", "Calibrate a model on a dataset");
  add_common(cal, common);
  cal->add_option("--data", data, "Dataset CSV (default <out>/data.csv)");

  CLI::App *eval = app.add_subcommand("evaluate", "Evaluate a model along load paths");
  add_common(eval, common);
  eval->add_option("--model", model, "Model JSON (default <out>/model.json)");
  eval->add_option("--data", data, "Dataset CSV for MSE and epsilon");

  CLI::App *ver = app.add_subcommand("verify", "Non-negativity scan and gradient audit");
  add_common(ver, common);
  ver->add_option("--model", model, "Model JSON (default <out>/model.json)");

  CLI::App *sweep = app.add_subcommand("sweep", "Variant ladder study");
  add_common(sweep, common);
  sweep->add_option("--data", data, "Dataset CSV (default: generate from the config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kExitConfig;
  }

  try {
    const cli::ExperimentConfig config = resolve_config(common);
    const fs::path out = common.out;
    const fs::path model_path = model.empty() ? out / "model.json" : fs::path(model);
    cli::CommandOutput r;
    if (gen->parsed())
      r = cli::cmd_gen_data(config, out);
    else if (cal->parsed())
      r = cli::cmd_calibrate(config, data.empty() ? out / "data.csv" : fs::path(data), out);
    else if (eval->parsed())
      r = cli::cmd_evaluate(config, model_path, opt_path(data), out);
    else if (ver->parsed())
      r = cli::cmd_verify(config, model_path, out);
    else
      r = cli::cmd_sweep(config, opt_path(data), out);
    std::cout << r.summary << "\n";
    for (const fs::path &f: r.files)
      std::cout << "  " << f.generic_string() << "\n";
    return r.exit_code;
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::exit_code_for(e.code());
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitIo;
  }
}
