#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdsgame/analytic_model.hpp"
#include "mdsgame/csma_sim.hpp"

// Non-cooperative redundancy game: every node picks how many redundant
// packets to append; the payoff each minimizes is its own overall propagation
// delay. The shared channel couples players through the offered load, which
// scales with the mean coded-load factor across all players, so one player's
// redundancy congests everyone.
namespace mdsgame::game {

using StrategyProfile = std::vector<int>;  // r_i per player, 0..r_max

enum class EvaluatorKind { analytic, simulated };

struct GameConfig {
  model::NetworkParams params;
  model::ModelVariant variant = model::ModelVariant::literal;
  int r_max = 16;
  int max_iters = 100;      // best-response rounds before giving up
  double tolerance = 1e-9;  // utility comparison epsilon
  EvaluatorKind evaluator = EvaluatorKind::analytic;
  sim::SimConfig sim_template;  // used by the simulated evaluator
  int replications = 3;         // simulated-evaluator averaging runs
  // Test hook: when set, replaces the delay evaluator entirely.
  std::function<double(int player, const StrategyProfile&)> utility_override;
};

struct EquilibriumReport {
  StrategyProfile profile;
  bool converged = false;
  bool cycle_detected = false;
  int iterations = 0;
  std::vector<double> utilities;  // per-player delay at the final profile
  double deviation_margin = 0;    // min over (i, r') of D(deviate) - D(stay)
  bool quasiconcave = false;      // probe result at the final profile
};

struct ProbeReport {
  bool unimodal = false;
  std::vector<int> violations;  // r values where the payoff rises again
};

struct SweepRow {
  int r = 0;
  model::ModelOutputs out;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  int r_star = 0;  // argmax Th == argmin D over valid rows, ties to smaller r
};

class NoFeasibleResponseError : public std::runtime_error {
 public:
  explicit NoFeasibleResponseError(const std::string& message)
      : std::runtime_error(message) {}
};

class NoOptimumError : public std::runtime_error {
 public:
  explicit NoOptimumError(const std::string& message)
      : std::runtime_error(message) {}
};

// Player i's delay under the profile; +infinity when the model region is
// invalid or the simulated player recovered nothing (dominated strategy).
double utility(int player, const StrategyProfile& profile, const GameConfig& cfg);

// Exhaustive argmin over r' in [0, r_max]; ties break to the smallest r.
// All-infinite scans throw NoFeasibleResponseError.
int best_response(int player, const StrategyProfile& profile,
                  const GameConfig& cfg);

// Round-robin best-response updates until a full quiet round (converged),
// a revisited profile (cycle), or max_iters rounds.
EquilibriumReport best_response_dynamics(const StrategyProfile& init,
                                         const GameConfig& cfg);

// True iff no unilateral deviation improves (reduces) delay by more than
// tolerance; also returns the worst deviation margin found.
std::pair<bool, double> is_nash(const StrategyProfile& profile,
                                const GameConfig& cfg);

// Unimodality check of the payoff -D along player i's own strategy axis,
// holding everyone else fixed: non-decreasing, then non-increasing.
ProbeReport quasiconcavity_probe(const GameConfig& cfg,
                                 const StrategyProfile& profile, int player);

// Evaluate the symmetric profile (all players at r) for r = 0..r_max.
// Throws NoOptimumError when every point is invalid.
SweepResult sweep_symmetric(const GameConfig& cfg);

}  // namespace mdsgame::game
