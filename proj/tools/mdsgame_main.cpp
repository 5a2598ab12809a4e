#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mdsgame/config.hpp"
#include "mdsgame/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidationFailed = 2;

struct CliOptions {
  std::string config_path;
  std::string scenario_override;
  std::int64_t seed_override = -1;  // CLI-checked non-negative; -1 = not given
  std::string out_dir;
  bool emit_svg = false;
};

mdsgame::harness::ScenarioConfig load_with_overrides(const CliOptions& opts) {
  mdsgame::harness::ScenarioConfig cfg =
      mdsgame::harness::load_config_file(opts.config_path);
  if (!opts.scenario_override.empty()) {
    // Reuse the config parser so the override obeys the same vocabulary.
    const std::string text = "scenario = " + opts.scenario_override + "\n";
    cfg.scenario = mdsgame::harness::parse_config(text).scenario;
  }
  if (opts.seed_override >= 0) {
    cfg.seed = static_cast<std::uint64_t>(opts.seed_override);
  }
  if (!opts.out_dir.empty()) cfg.output_dir = opts.out_dir;
  cfg.emit_svg = opts.emit_svg;
  return cfg;
}

int run_and_report(const mdsgame::harness::ScenarioConfig& cfg) {
  const mdsgame::harness::ScenarioOutput output =
      mdsgame::harness::run_scenario(cfg);
  const std::vector<std::string> written =
      mdsgame::harness::write_outputs(output, cfg);
  for (const std::string& path : written) {
    std::cout << "wrote " << path << "\n";
  }
  if (!output.validation_passed) {
    std::cerr << "validation failed: closed-form and oracle disagree\n";
    return kExitValidationFailed;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MDS erasure-coding game over slotted non-persistent CSMA: "
               "closed-form model, Monte Carlo simulator, and equilibrium "
               "solver"};
  app.require_subcommand(1);

  CliOptions run_opts;
  CLI::App* run_cmd =
      app.add_subcommand("run", "Run a scenario and write CSV (and SVG) output");
  run_cmd->add_option("--config", run_opts.config_path, "Path to a key = value config file")
      ->required();
  run_cmd->add_option("--scenario", run_opts.scenario_override,
                      "Override the scenario (sweep-r, modes, equilibrium, validate)");
  run_cmd->add_option("--seed", run_opts.seed_override, "Override the RNG seed")
      ->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--out", run_opts.out_dir, "Output directory (default: current)");
  run_cmd->add_flag("--svg", run_opts.emit_svg, "Also emit an SVG plot per table");

  CliOptions validate_opts;
  CLI::App* validate_cmd = app.add_subcommand(
      "validate", "Run the validate scenario: closed forms vs enumeration and Monte Carlo");
  validate_cmd->add_option("--config", validate_opts.config_path,
                           "Path to a key = value config file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run_cmd->parsed()) {
      return run_and_report(load_with_overrides(run_opts));
    }
    validate_opts.scenario_override = "validate";
    return run_and_report(load_with_overrides(validate_opts));
  } catch (const mdsgame::harness::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
