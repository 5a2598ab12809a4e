#include "mdsgame/game_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace mdsgame::game {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double mean_coded_multiplier(const StrategyProfile& profile, int k) {
  double sum = 0.0;
  for (int r : profile) sum += 1.0 + static_cast<double>(r) / k;
  return sum / static_cast<double>(profile.size());
}

double analytic_utility(int player, const StrategyProfile& profile,
                        const GameConfig& cfg) {
  model::NetworkParams p = cfg.params;
  p.r = profile[player];
  const model::ModelOutputs out = model::evaluate_coupled(
      p, cfg.variant, mean_coded_multiplier(profile, p.k));
  // A delay of exactly zero (single player, or X at the knee) is a fine
  // outcome for the player even though the sweep marks it invalid.
  if (std::isfinite(out.d) && out.d >= 0.0) return out.d;
  return kInf;
}

double simulated_utility(int player, const StrategyProfile& profile,
                         const GameConfig& cfg) {
  sim::SimConfig sc = cfg.sim_template;
  sc.m_nodes = static_cast<int>(profile.size());
  sc.coding_enabled = true;
  sc.r_per_node.assign(profile.begin(), profile.end());
  double delay_sum = 0.0;
  std::int64_t recovered = 0;
  for (int rep = 0; rep < cfg.replications; ++rep) {
    // Seed depends on the replication only: common random numbers across the
    // candidate strategies a best-response scan compares.
    sc.seed = cfg.sim_template.seed + static_cast<std::uint64_t>(rep);
    const sim::SimResult res = sim::simulate(sc);
    for (const auto& g : res.generations) {
      if (g.owner == player && g.recovered_at >= 0) {
        delay_sum += static_cast<double>(g.recovered_at - g.arrival_slot);
        ++recovered;
      }
    }
  }
  if (recovered == 0) return kInf;
  return delay_sum / static_cast<double>(recovered);
}

}  // namespace

double utility(int player, const StrategyProfile& profile,
               const GameConfig& cfg) {
  if (cfg.utility_override) return cfg.utility_override(player, profile);
  if (cfg.evaluator == EvaluatorKind::simulated) {
    return simulated_utility(player, profile, cfg);
  }
  return analytic_utility(player, profile, cfg);
}

int best_response(int player, const StrategyProfile& profile,
                  const GameConfig& cfg) {
  StrategyProfile scan = profile;
  int best_r = -1;
  double best_u = kInf;
  for (int r = 0; r <= cfg.r_max; ++r) {
    scan[player] = r;
    const double u = utility(player, scan, cfg);
    if (u < best_u - cfg.tolerance) {  // ties keep the earlier, smaller r
      best_u = u;
      best_r = r;
    }
  }
  if (best_r < 0) {
    throw NoFeasibleResponseError(
        "best_response: every strategy yields infinite delay");
  }
  return best_r;
}

EquilibriumReport best_response_dynamics(const StrategyProfile& init,
                                         const GameConfig& cfg) {
  EquilibriumReport report;
  report.profile = init;
  std::set<StrategyProfile> seen{init};
  for (int round = 0; round < cfg.max_iters; ++round) {
    bool changed = false;
    for (std::size_t i = 0; i < report.profile.size(); ++i) {
      const int b = best_response(static_cast<int>(i), report.profile, cfg);
      if (b != report.profile[i]) {
        report.profile[i] = b;
        changed = true;
      }
    }
    report.iterations = round + 1;
    if (!changed) {
      report.converged = true;
      break;
    }
    if (!seen.insert(report.profile).second) {
      report.cycle_detected = true;  // revisited profile: BR dynamics cycles
      break;
    }
  }
  report.utilities.resize(report.profile.size());
  for (std::size_t i = 0; i < report.profile.size(); ++i) {
    report.utilities[i] = utility(static_cast<int>(i), report.profile, cfg);
  }
  const auto [nash, margin] = is_nash(report.profile, cfg);
  report.deviation_margin = margin;
  if (report.converged && !nash) {
    // A quiet best-response round is by construction a Nash profile; reaching
    // this line would mean the scan and the check disagree.
    throw std::logic_error("best_response_dynamics: fixed point fails is_nash");
  }
  report.quasiconcave = true;
  for (std::size_t i = 0; i < report.profile.size(); ++i) {
    report.quasiconcave =
        report.quasiconcave &&
        quasiconcavity_probe(cfg, report.profile, static_cast<int>(i)).unimodal;
  }
  return report;
}

std::pair<bool, double> is_nash(const StrategyProfile& profile,
                                const GameConfig& cfg) {
  double margin = kInf;
  StrategyProfile scan = profile;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const double u_stay = utility(static_cast<int>(i), profile, cfg);
    for (int r = 0; r <= cfg.r_max; ++r) {
      if (r == profile[i]) continue;
      scan[i] = r;
      const double u_dev = utility(static_cast<int>(i), scan, cfg);
      double gain;
      if (std::isinf(u_stay) && std::isinf(u_dev)) {
        gain = 0.0;  // inf -> inf is not an improvement
      } else if (std::isinf(u_stay)) {
        gain = -kInf;  // any finite deviation beats an infeasible stay
      } else {
        gain = u_dev - u_stay;
      }
      margin = std::min(margin, gain);
    }
    scan[i] = profile[i];
  }
  if (std::isinf(margin) && margin > 0) margin = 0.0;  // no deviations existed
  return {margin >= -cfg.tolerance, margin};
}

ProbeReport quasiconcavity_probe(const GameConfig& cfg,
                                 const StrategyProfile& profile, int player) {
  ProbeReport report;
  report.unimodal = true;
  StrategyProfile scan = profile;
  std::vector<double> payoff(cfg.r_max + 1);
  for (int r = 0; r <= cfg.r_max; ++r) {
    scan[player] = r;
    payoff[r] = -utility(player, scan, cfg);
  }
  bool descending = false;
  for (int r = 0; r + 1 <= cfg.r_max; ++r) {
    if (payoff[r + 1] < payoff[r] - cfg.tolerance) {
      descending = true;
    } else if (payoff[r + 1] > payoff[r] + cfg.tolerance && descending) {
      report.unimodal = false;
      report.violations.push_back(r + 1);
    }
  }
  return report;
}

SweepResult sweep_symmetric(const GameConfig& cfg) {
  SweepResult result;
  result.rows.reserve(cfg.r_max + 1);
  int best_r = -1;
  double best_th = -kInf;
  for (int r = 0; r <= cfg.r_max; ++r) {
    model::NetworkParams p = cfg.params;
    p.r = r;
    SweepRow row;
    row.r = r;
    row.out = model::evaluate(p, cfg.variant);  // all-at-r: own multiplier
    if (row.out.valid && row.out.th > best_th + cfg.tolerance) {
      best_th = row.out.th;
      best_r = r;
    }
    result.rows.push_back(row);
  }
  if (best_r < 0) {
    throw NoOptimumError("sweep_symmetric: no valid point in the sweep");
  }
  result.r_star = best_r;
  return result;
}

}  // namespace mdsgame::game
