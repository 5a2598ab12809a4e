#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "mdsgame/game_engine.hpp"

namespace game = mdsgame::game;
namespace model = mdsgame::model;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

game::GameConfig default_game() {
  game::GameConfig cfg;  // M=3, lambda=1.2, alpha=0.2, q=1.53, k=8, literal
  cfg.params.load = cfg.params.m_nodes * cfg.params.lambda;
  return cfg;
}

game::GameConfig toy_game(int players, int r_max) {
  game::GameConfig cfg = default_game();
  cfg.r_max = r_max;
  cfg.utility_override = [](int player, const game::StrategyProfile& profile) {
    const double d = profile[player] - 5.0;
    return d * d + 1.0;
  };
  (void)players;
  return cfg;
}

}  // namespace

TEST_CASE("best response of the injected quadratic is its vertex from any profile") {
  game::GameConfig cfg = toy_game(2, 16);
  CHECK(game::best_response(0, {0, 0}, cfg) == 5);
  CHECK(game::best_response(1, {16, 16}, cfg) == 5);
  CHECK(game::best_response(0, {9, 2}, cfg) == 5);
}

TEST_CASE("dynamics of the injected quadratic converge in one changing round") {
  game::GameConfig cfg = toy_game(2, 16);
  const auto report = game::best_response_dynamics({0, 0}, cfg);
  CHECK(report.converged);
  CHECK(!report.cycle_detected);
  CHECK(report.profile == game::StrategyProfile{5, 5});
  CHECK(report.iterations == 2);  // one improving round plus one quiet round
  CHECK(report.utilities == std::vector<double>{1.0, 1.0});
  CHECK(report.quasiconcave);
}

TEST_CASE("is_nash rejects a profile with a profitable deviation") {
  game::GameConfig cfg = toy_game(2, 16);
  const auto [nash_at_vertex, margin_at_vertex] = game::is_nash({5, 5}, cfg);
  CHECK(nash_at_vertex);
  CHECK(margin_at_vertex >= -cfg.tolerance);
  const auto [nash_off, margin_off] = game::is_nash({4, 5}, cfg);
  CHECK(!nash_off);
  CHECK(margin_off == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("best response is invariant under positive affine utility scaling") {
  game::GameConfig scaled = toy_game(2, 16);
  scaled.utility_override = [](int player, const game::StrategyProfile& profile) {
    const double d = profile[player] - 5.0;
    return 3.0 * (d * d + 1.0) + 7.0;
  };
  CHECK(game::best_response(0, {0, 0}, scaled) == 5);
  CHECK(game::best_response(1, {16, 3}, scaled) == 5);
}

TEST_CASE("ties break to the smallest redundancy") {
  game::GameConfig cfg = default_game();
  cfg.r_max = 8;
  cfg.utility_override = [](int, const game::StrategyProfile&) { return 1.0; };
  CHECK(game::best_response(0, {3, 3, 3}, cfg) == 0);
}

TEST_CASE("an all-infinite payoff row has no feasible response") {
  game::GameConfig cfg = default_game();
  cfg.utility_override = [](int, const game::StrategyProfile&) { return kInf; };
  CHECK_THROWS_AS(game::best_response(0, {0, 0, 0}, cfg),
                  game::NoFeasibleResponseError);
}

TEST_CASE("matching-pennies-style preferences cycle and are detected") {
  game::GameConfig cfg = default_game();
  cfg.r_max = 1;
  cfg.utility_override = [](int player, const game::StrategyProfile& profile) {
    const bool match = profile[0] == profile[1];
    // player 0 wants to match, player 1 wants to escape
    return player == 0 ? (match ? 0.0 : 1.0) : (match ? 1.0 : 0.0);
  };
  const auto report = game::best_response_dynamics({0, 0}, cfg);
  CHECK(!report.converged);
  CHECK(report.cycle_detected);
  const auto [nash, margin] = game::is_nash(report.profile, cfg);
  CHECK(!nash);
  CHECK(margin < 0.0);
}

TEST_CASE("quasiconcavity probe flags a payoff that rises again") {
  game::GameConfig cfg = default_game();
  cfg.r_max = 10;
  cfg.utility_override = [](int player, const game::StrategyProfile& profile) {
    const int r = profile[player];
    return (r == 0 || r == 10) ? 0.0 : 1.0;  // two separated optima
  };
  const auto probe = game::quasiconcavity_probe(cfg, {0, 0, 0}, 0);
  CHECK(!probe.unimodal);
  REQUIRE(!probe.violations.empty());
  CHECK(probe.violations.front() == 10);

  game::GameConfig smooth = toy_game(3, 10);
  CHECK(game::quasiconcavity_probe(smooth, {0, 0}, 1).unimodal);
}

TEST_CASE("symmetric sweep of the default network finds the interior optimum") {
  const game::GameConfig cfg = default_game();
  const auto sweep = game::sweep_symmetric(cfg);
  REQUIRE(sweep.rows.size() == 17);
  CHECK(sweep.r_star == 5);
  for (const auto& row : sweep.rows) {
    CHECK(row.out.valid);
    // symmetric profile: the sweep row equals a direct model evaluation
    model::NetworkParams p = cfg.params;
    p.r = row.r;
    const auto direct = model::evaluate(p, cfg.variant);
    CHECK(row.out.d == doctest::Approx(direct.d).epsilon(1e-15));
  }
  // throughput maximum and delay minimum land on the same redundancy
  int best_d = 0;
  for (int r = 0; r <= 16; ++r) {
    if (sweep.rows[r].out.d < sweep.rows[best_d].out.d) best_d = r;
  }
  CHECK(best_d == sweep.r_star);
}

TEST_CASE("a sweep with no valid point reports the failure") {
  game::GameConfig cfg = default_game();
  cfg.params.m_nodes = 1;  // delay identically zero: flagged invalid everywhere
  CHECK_THROWS_AS(game::sweep_symmetric(cfg), game::NoOptimumError);
}

TEST_CASE("degenerate strategy space collapses everything to zero redundancy") {
  game::GameConfig cfg = default_game();
  cfg.r_max = 0;
  CHECK(game::best_response(0, {0, 0, 0}, cfg) == 0);
  const auto report = game::best_response_dynamics({0, 0, 0}, cfg);
  CHECK(report.converged);
  CHECK(report.profile == game::StrategyProfile{0, 0, 0});
  const auto sweep = game::sweep_symmetric(cfg);
  CHECK(sweep.r_star == 0);
  CHECK(sweep.rows.size() == 1);
}

TEST_CASE("the default network game reaches the frozen symmetric equilibrium") {
  const game::GameConfig cfg = default_game();
  for (int start : {0, 16}) {
    CAPTURE(start);
    const game::StrategyProfile init(3, start);
    const auto report = game::best_response_dynamics(init, cfg);
    CHECK(report.converged);
    CHECK(!report.cycle_detected);
    CHECK(report.profile == game::StrategyProfile{12, 12, 12});
    CHECK(report.iterations <= 5);
    const auto [nash, margin] = game::is_nash(report.profile, cfg);
    CHECK(nash);
    CHECK(margin >= -cfg.tolerance);
    CHECK(report.quasiconcave);
    // symmetric profile: every player sees the same finite delay
    REQUIRE(report.utilities.size() == 3);
    for (double u : report.utilities) {
      CHECK(std::isfinite(u));
      CHECK(u == doctest::Approx(report.utilities[0]).epsilon(1e-15));
    }
  }
}

TEST_CASE("equilibrium over-provisions relative to the social optimum") {
  // The load externality: each player ignores the congestion cost it imposes
  // on the others, so the equilibrium redundancy strictly exceeds the
  // symmetric-sweep optimum.
  const game::GameConfig cfg = default_game();
  const auto sweep = game::sweep_symmetric(cfg);
  const auto report =
      game::best_response_dynamics(game::StrategyProfile(3, 0), cfg);
  REQUIRE(report.converged);
  CHECK(report.profile[0] > sweep.r_star);
  // and the equilibrium delay is worse than the coordinated optimum
  const double d_star = sweep.rows[sweep.r_star].out.d;
  CHECK(report.utilities[0] > d_star);
}

TEST_CASE("the simulated evaluator is deterministic and feasible") {
  game::GameConfig cfg = default_game();
  cfg.evaluator = game::EvaluatorKind::simulated;
  cfg.r_max = 3;
  cfg.replications = 2;
  cfg.sim_template.m_nodes = 2;
  cfg.sim_template.lambda_slot = 0.02;
  cfg.sim_template.k = 4;
  cfg.sim_template.p_e = 0.1;
  cfg.sim_template.backoff_window = 2;
  cfg.sim_template.slots = 3000;
  cfg.sim_template.seed = 9;
  const game::StrategyProfile profile{1, 2};
  const double u1 = game::utility(0, profile, cfg);
  const double u2 = game::utility(0, profile, cfg);
  CHECK(std::isfinite(u1));
  CHECK(u1 > 0.0);
  CHECK(u1 == u2);
  const int br = game::best_response(0, profile, cfg);
  CHECK(br >= 0);
  CHECK(br <= 3);
}
