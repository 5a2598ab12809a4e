#include "mdsgame/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "mdsgame/svg_plot.hpp"

namespace mdsgame::harness {
namespace {

using table::Cell;
using table::ResultTable;

constexpr std::int64_t kMcTrials = 1'000'000;
constexpr double kEnumTolerance = 1e-12;
constexpr int kModeReplications = 3;
// When every trial scores identically the empirical stderr is zero, and the
// honest bound on the estimate's bias is the rule-of-three limit on the rate
// of the never-observed outcome (at the 3-sigma confidence level,
// -ln(0.0027)/trials < 6/trials), not zero.
constexpr double kDegenerateMcBound = 6.0 / kMcTrials;

std::vector<std::pair<std::string, std::string>> base_metadata(
    const ScenarioConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> meta;
  meta.emplace_back("tool", std::string(kToolName) + " " + kToolVersion);
  // full parameter echo, one metadata line per config key
  std::stringstream stream(serialize_config(cfg));
  std::string line;
  while (std::getline(stream, line)) {
    const auto eq = line.find(" = ");
    meta.emplace_back(line.substr(0, eq), line.substr(eq + 3));
  }
  return meta;
}

std::string table_name(const ScenarioConfig& cfg) {
  return scenario_name(cfg.scenario) + "-" + std::to_string(cfg.seed);
}

ScenarioOutput run_sweep_r(const ScenarioConfig& cfg) {
  ScenarioOutput output;
  const game::GameConfig gc = to_game_config(cfg);
  const game::SweepResult sweep = game::sweep_symmetric(gc);

  ResultTable t;
  t.name = table_name(cfg);
  t.metadata = base_metadata(cfg);
  t.metadata.emplace_back("r_star", std::to_string(sweep.r_star));
  t.columns = {"r", "P_p", "P_f", "Th", "D", "valid"};
  for (const game::SweepRow& row : sweep.rows) {
    t.add_row({Cell{static_cast<double>(row.r)}, Cell{row.out.p_p},
               Cell{row.out.p_f}, Cell{row.out.th},
               row.out.valid ? Cell{row.out.d} : table::none_cell(),
               Cell{std::string(row.out.valid ? "true" : "false")}});
  }

  if (cfg.emit_svg) {
    plot::PlotSpec spec;
    spec.title = "Network throughput vs redundancy";
    spec.x_column = "r";
    spec.x_label = "redundant packets r";
    spec.y_label = "throughput";
    spec.series = {{"Th", "throughput"}};
    output.svg_documents.emplace_back(t.name, plot::emit_svg(t, spec));
  }
  output.tables.push_back(std::move(t));
  return output;
}

// One load point of the modes comparison: the per-load equilibrium redundancy
// from the symmetric sweep, the documented out-of-equilibrium offset, and the
// delay of all three operating modes under both evaluators.
struct ModeRow {
  std::optional<int> r_star;
  int r_random = 0;
  model::ModelOutputs model_conv, model_rand, model_ne;
  std::optional<double> sim_conv, sim_rand, sim_ne;
};

std::optional<double> mean_sim_delay(const sim::SimConfig& cfg,
                                     std::uint64_t base_seed) {
  double sum = 0.0;
  int have = 0;
  for (int rep = 0; rep < kModeReplications; ++rep) {
    sim::SimConfig run = cfg;
    run.seed = base_seed + static_cast<std::uint64_t>(rep);
    const auto delay = sim::simulate(run).mean_delay;
    if (delay) {
      sum += *delay;
      ++have;
    }
  }
  if (have == 0) return std::nullopt;
  return sum / have;
}

ModeRow evaluate_mode_row(const ScenarioConfig& cfg, double load,
                          std::size_t load_index) {
  ModeRow row;
  game::GameConfig gc = to_game_config(cfg);
  gc.params.lambda = load / cfg.m_nodes;
  gc.params.load = load;
  try {
    row.r_star = game::sweep_symmetric(gc).r_star;
  } catch (const game::NoOptimumError&) {
    return row;  // the whole load point is invalid
  }
  row.r_random = *row.r_star + cfg.random_r_offset <= cfg.r_max
                     ? *row.r_star + cfg.random_r_offset
                     : std::max(*row.r_star - cfg.random_r_offset, 0);

  const auto model_at = [&](int r) {
    model::NetworkParams p = gc.params;
    p.r = r;
    return model::evaluate(p, cfg.model_variant);
  };
  row.model_conv = model_at(0);
  row.model_rand = model_at(row.r_random);
  row.model_ne = model_at(*row.r_star);

  sim::SimConfig sc = to_sim_config(cfg);
  sc.lambda_slot = kSimulatorLoadScale * load / (cfg.m_nodes * cfg.k);
  // One seed block per load point, shared by the three modes: common random
  // numbers make the mode comparison paired rather than independent.
  const std::uint64_t base_seed =
      cfg.seed + 7919ull * static_cast<std::uint64_t>(load_index);

  sim::SimConfig conv = sc;
  conv.coding_enabled = false;
  conv.r = 0;
  row.sim_conv = mean_sim_delay(conv, base_seed);
  sim::SimConfig rand_cfg = sc;
  rand_cfg.r = row.r_random;
  row.sim_rand = mean_sim_delay(rand_cfg, base_seed);
  sim::SimConfig ne_cfg = sc;
  ne_cfg.r = *row.r_star;
  row.sim_ne = mean_sim_delay(ne_cfg, base_seed);
  return row;
}

Cell opt_cell(const std::optional<double>& v) {
  return v ? Cell{*v} : table::none_cell();
}

Cell model_delay_cell(const model::ModelOutputs& out) {
  return out.valid ? Cell{out.d} : table::none_cell();
}

ScenarioOutput run_modes(const ScenarioConfig& cfg) {
  ScenarioOutput output;
  ResultTable t;
  t.name = table_name(cfg);
  t.metadata = base_metadata(cfg);
  t.metadata.emplace_back("sim_load_scale",
                          table::format_numeric(kSimulatorLoadScale));
  t.metadata.emplace_back("sim_replications", std::to_string(kModeReplications));
  t.columns = {"load",
               "r_star",
               "r_random",
               "d_model_conventional",
               "d_model_random",
               "d_model_ne",
               "d_sim_conventional",
               "d_sim_random",
               "d_sim_ne"};
  for (std::size_t i = 0; i < cfg.load_grid.size(); ++i) {
    const double load = cfg.load_grid[i];
    const ModeRow row = evaluate_mode_row(cfg, load, i);
    if (!row.r_star) {
      t.add_row({Cell{load}, table::none_cell(), table::none_cell(),
                 table::none_cell(), table::none_cell(), table::none_cell(),
                 table::none_cell(), table::none_cell(), table::none_cell()});
      continue;
    }
    t.add_row({Cell{load}, Cell{static_cast<double>(*row.r_star)},
               Cell{static_cast<double>(row.r_random)},
               model_delay_cell(row.model_conv),
               model_delay_cell(row.model_rand),
               model_delay_cell(row.model_ne), opt_cell(row.sim_conv),
               opt_cell(row.sim_rand), opt_cell(row.sim_ne)});
  }

  if (cfg.emit_svg) {
    plot::PlotSpec spec;
    spec.title = "Delay of the three operating modes";
    spec.x_column = "load";
    spec.x_label = "offered load (packets per slot)";
    spec.y_label = "overall delay (slots)";
    spec.log_y = true;
    spec.series = {{"d_model_conventional", "conventional (no EC)"},
                   {"d_model_random", "random MDS EC (out of NE)"},
                   {"d_model_ne", "MDS EC at equilibrium (NE)"}};
    output.svg_documents.emplace_back(t.name, plot::emit_svg(t, spec));
  }
  output.tables.push_back(std::move(t));
  return output;
}

ScenarioOutput run_equilibrium(const ScenarioConfig& cfg) {
  ScenarioOutput output;
  const game::GameConfig gc = to_game_config(cfg);
  const game::StrategyProfile init(static_cast<std::size_t>(cfg.m_nodes), 0);
  const game::EquilibriumReport report = game::best_response_dynamics(init, gc);
  const auto [nash, margin] = game::is_nash(report.profile, gc);

  ResultTable t;
  t.name = table_name(cfg);
  t.metadata = base_metadata(cfg);
  t.metadata.emplace_back("converged", report.converged ? "true" : "false");
  t.metadata.emplace_back("cycle_detected",
                          report.cycle_detected ? "true" : "false");
  t.metadata.emplace_back("iterations", std::to_string(report.iterations));
  t.metadata.emplace_back("deviation_margin", table::format_numeric(margin));
  t.metadata.emplace_back("is_nash", nash ? "true" : "false");
  t.metadata.emplace_back("quasiconcave",
                          report.quasiconcave ? "true" : "false");
  t.columns = {"player", "r", "utility"};
  for (std::size_t i = 0; i < report.profile.size(); ++i) {
    t.add_row({Cell{static_cast<double>(i)},
               Cell{static_cast<double>(report.profile[i])},
               std::isfinite(report.utilities[i]) ? Cell{report.utilities[i]}
                                                  : table::none_cell()});
  }

  if (cfg.emit_svg) {
    // Delay along player 0's own strategy axis at the equilibrium profile.
    ResultTable slice;
    slice.columns = {"r", "delay"};
    game::StrategyProfile probe = report.profile;
    for (int r = 0; r <= cfg.r_max; ++r) {
      probe[0] = r;
      const double u = game::utility(0, probe, gc);
      slice.add_row({Cell{static_cast<double>(r)},
                     std::isfinite(u) ? Cell{u} : table::none_cell()});
    }
    plot::PlotSpec spec;
    spec.title = "Best-response landscape at the equilibrium";
    spec.x_column = "r";
    spec.x_label = "player 0 redundancy r";
    spec.y_label = "delay (slots)";
    spec.log_y = true;
    spec.series = {{"delay", "player 0 delay"}};
    output.svg_documents.emplace_back(t.name, plot::emit_svg(slice, spec));
  }
  output.tables.push_back(std::move(t));
  return output;
}

ScenarioOutput run_validate(const ScenarioConfig& cfg) {
  ScenarioOutput output;
  ResultTable t;
  t.name = table_name(cfg);
  t.metadata = base_metadata(cfg);
  t.metadata.emplace_back("enum_tolerance", table::format_numeric(kEnumTolerance));
  t.metadata.emplace_back("mc_trials", std::to_string(kMcTrials));
  t.columns = {"n_total", "k", "p_p",
               "p_k_closed", "p_k_enum", "p_k_diff",
               "p_f_closed", "p_f_enum", "p_f_diff",
               "mc_estimate", "mc_stderr", "mc_diff", "pass"};
  bool all_pass = true;
  std::uint64_t cell_index = 0;
  for (int n_total = 1; n_total <= 10; ++n_total) {
    for (int k = 1; k <= n_total; ++k) {
      for (int p_idx = 0; p_idx <= 10; ++p_idx) {
        const double p = p_idx / 10.0;
        const double pk_closed = model::p_at_least_k(p, n_total, k);
        const double pf_closed = model::p_recover_from_success(p, n_total, k);
        const auto enumerated = model::enumerate_reception(n_total, k, p);
        const double pk_diff = std::fabs(pk_closed - enumerated.p_at_least_k);
        const double pf_diff = std::fabs(pf_closed - enumerated.p_recover);
        const auto mc = sim::estimate_p_recover(n_total, k, p, kMcTrials,
                                                cfg.seed + cell_index);
        ++cell_index;
        const double mc_diff = std::fabs(pf_closed - mc.value);
        const bool pass = pk_diff <= kEnumTolerance &&
                          pf_diff <= kEnumTolerance &&
                          (mc.stderr_value > 0.0
                               ? mc_diff <= 3.0 * mc.stderr_value
                               : mc_diff <= kDegenerateMcBound);
        all_pass = all_pass && pass;
        t.add_row({Cell{static_cast<double>(n_total)},
                   Cell{static_cast<double>(k)}, Cell{p}, Cell{pk_closed},
                   Cell{enumerated.p_at_least_k}, Cell{pk_diff},
                   Cell{pf_closed}, Cell{enumerated.p_recover}, Cell{pf_diff},
                   Cell{mc.value}, Cell{mc.stderr_value}, Cell{mc_diff},
                   Cell{std::string(pass ? "true" : "false")}});
      }
    }
  }
  t.metadata.emplace_back("all_passed", all_pass ? "true" : "false");
  output.validation_passed = all_pass;
  output.tables.push_back(std::move(t));
  return output;
}

}  // namespace

ScenarioOutput run_scenario(const ScenarioConfig& cfg) {
  switch (cfg.scenario) {
    case Scenario::sweep_r: return run_sweep_r(cfg);
    case Scenario::modes: return run_modes(cfg);
    case Scenario::equilibrium: return run_equilibrium(cfg);
    case Scenario::validate: return run_validate(cfg);
  }
  throw std::logic_error("run_scenario: unhandled scenario");
}

std::vector<std::string> write_outputs(const ScenarioOutput& output,
                                       const ScenarioConfig& cfg) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_dir);
  std::vector<std::string> written;
  for (const ResultTable& t : output.tables) {
    const fs::path path = fs::path(cfg.output_dir) / (t.name + ".csv");
    std::ofstream out(path, std::ios::binary);
    out << table::to_csv(t);
    written.push_back(path.string());
  }
  for (const auto& [name, doc] : output.svg_documents) {
    const fs::path path = fs::path(cfg.output_dir) / (name + ".svg");
    std::ofstream out(path, std::ios::binary);
    out << doc;
    written.push_back(path.string());
  }
  return written;
}

}  // namespace mdsgame::harness
