#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "mdsgame/config.hpp"

namespace harness = mdsgame::harness;
namespace game = mdsgame::game;
namespace model = mdsgame::model;

TEST_CASE("an empty config file yields the documented defaults") {
  const harness::ScenarioConfig cfg = harness::parse_config("");
  CHECK(cfg == harness::ScenarioConfig{});
  CHECK(cfg.scenario == harness::Scenario::sweep_r);
  CHECK(cfg.m_nodes == 3);
  CHECK(cfg.lambda == 1.2);
  CHECK(cfg.alpha == 0.2);
  CHECK(cfg.q == 1.53);
  CHECK(cfg.k == 8);
  CHECK(cfg.r_max == 16);
  CHECK(cfg.erasure_prob == 0.1);
  CHECK(cfg.backoff_window == 2);
  CHECK(cfg.slots == 15000);
  CHECK(cfg.load_grid == std::vector<double>{3.6, 4.0, 4.4, 4.8});
  CHECK(cfg.model_variant == model::ModelVariant::literal);
  CHECK(cfg.evaluator == game::EvaluatorKind::analytic);
  CHECK(cfg.max_iters == 100);
  CHECK(cfg.tolerance == 1e-9);
  CHECK(cfg.random_r_offset == 3);
}

TEST_CASE("comments, blank lines, and spacing are tolerated") {
  const std::string text =
      "# leading comment\n"
      "\n"
      "  m_nodes =  5   \n"
      "k = 4 # inline comment\n"
      "scenario = equilibrium\n";
  const auto cfg = harness::parse_config(text);
  CHECK(cfg.m_nodes == 5);
  CHECK(cfg.k == 4);
  CHECK(cfg.scenario == harness::Scenario::equilibrium);
}

TEST_CASE("every scenario name parses") {
  CHECK(harness::parse_config("scenario = sweep-r\n").scenario ==
        harness::Scenario::sweep_r);
  CHECK(harness::parse_config("scenario = modes\n").scenario ==
        harness::Scenario::modes);
  CHECK(harness::parse_config("scenario = equilibrium\n").scenario ==
        harness::Scenario::equilibrium);
  CHECK(harness::parse_config("scenario = validate\n").scenario ==
        harness::Scenario::validate);
  CHECK_THROWS_AS(harness::parse_config("scenario = warmup\n"),
                  harness::ConfigError);
}

TEST_CASE("serialization round-trips exactly") {
  harness::ScenarioConfig cfg;
  cfg.scenario = harness::Scenario::modes;
  cfg.m_nodes = 7;
  cfg.lambda = 0.37;
  cfg.alpha = 0.125;
  cfg.q = 2.5;
  cfg.probing_rate = 0.75;
  cfg.k = 12;
  cfg.r_max = 20;
  cfg.erasure_prob = 0.05;
  cfg.backoff_window = 6;
  cfg.slots = 40000;
  cfg.seed = 18446744073709551615ull;  // extreme 64-bit value survives
  cfg.load_grid = {0.1, 2.7182818284590452, 9.9};
  cfg.model_variant = model::ModelVariant::swapped;
  cfg.evaluator = game::EvaluatorKind::simulated;
  cfg.max_iters = 55;
  cfg.tolerance = 1e-9;
  cfg.random_r_offset = 2;
  CHECK(harness::parse_config(harness::serialize_config(cfg)) == cfg);
}

TEST_CASE("unknown keys are rejected with position information") {
  const std::string text = "m_nodes = 3\nk = 8\nwibble = 1\n";
  try {
    harness::parse_config(text);
    FAIL("expected ConfigError");
  } catch (const harness::ConfigError& e) {
    CHECK(e.line() == 3);
    CHECK(e.key() == "wibble");
    CHECK(std::string(e.what()).find("unknown key") != std::string::npos);
  }
}

TEST_CASE("range violations name the offending key") {
  try {
    harness::parse_config("alpha = -1\n");
    FAIL("expected ConfigError");
  } catch (const harness::ConfigError& e) {
    CHECK(e.key() == "alpha");
    CHECK(e.line() == 1);
  }
  CHECK_THROWS_AS(harness::parse_config("m_nodes = 0\n"), harness::ConfigError);
  CHECK_THROWS_AS(harness::parse_config("lambda = -0.5\n"), harness::ConfigError);
  CHECK_THROWS_AS(harness::parse_config("q = 0\n"), harness::ConfigError);
  CHECK_THROWS_AS(harness::parse_config("probing_rate = 0\n"), harness::ConfigError);
  CHECK_THROWS_AS(harness::parse_config("k = 0\n"), harness::ConfigError);
  CHECK_THROWS_AS(harness::parse_config("k = 129\n"), harness::ConfigError);
  CHECK_THROWS_AS(harness::parse_config("r_max = -1\n"), harness::ConfigError);
  CHECK_THROWS_AS(harness::parse_config("r_max = 129\n"), harness::ConfigError);
  CHECK_THROWS_AS(harness::parse_config("erasure_prob = 1.01\n"),
                  harness::ConfigError);
  CHECK_THROWS_AS(harness::parse_config("erasure_prob = -0.01\n"),
                  harness::ConfigError);
  CHECK_THROWS_AS(harness::parse_config("backoff_window = 0\n"),
                  harness::ConfigError);
  CHECK_THROWS_AS(harness::parse_config("slots = 0\n"), harness::ConfigError);
  CHECK_THROWS_AS(harness::parse_config("seed = -1\n"), harness::ConfigError);
  CHECK_THROWS_AS(harness::parse_config("max_iters = 0\n"), harness::ConfigError);
  CHECK_THROWS_AS(harness::parse_config("tolerance = -1e-9\n"),
                  harness::ConfigError);
  CHECK_THROWS_AS(harness::parse_config("random_r_offset = 0\n"),
                  harness::ConfigError);
  CHECK_THROWS_AS(harness::parse_config("model_variant = inverted\n"),
                  harness::ConfigError);
  CHECK_THROWS_AS(harness::parse_config("evaluator = oracle\n"),
                  harness::ConfigError);
}

TEST_CASE("malformed lines are rejected") {
  CHECK_THROWS_AS(harness::parse_config("just words\n"), harness::ConfigError);
  CHECK_THROWS_AS(harness::parse_config("= 5\n"), harness::ConfigError);
  CHECK_THROWS_AS(harness::parse_config("k =\n"), harness::ConfigError);
  CHECK_THROWS_AS(harness::parse_config("k = 4x\n"), harness::ConfigError);
  CHECK_THROWS_AS(harness::parse_config("lambda = fast\n"), harness::ConfigError);
  CHECK_THROWS_AS(harness::parse_config("slots = 1.5\n"), harness::ConfigError);
}

TEST_CASE("load grids parse flexible spacing and reject junk") {
  const auto cfg = harness::parse_config("load_grid = 3.6, 4.0 ,4.4\n");
  CHECK(cfg.load_grid == std::vector<double>{3.6, 4.0, 4.4});
  CHECK_THROWS_AS(harness::parse_config("load_grid = 1,,2\n"),
                  harness::ConfigError);
  CHECK_THROWS_AS(harness::parse_config("load_grid = 1,-2\n"),
                  harness::ConfigError);
  const auto single = harness::parse_config("load_grid = 2.5\n");
  CHECK(single.load_grid == std::vector<double>{2.5});
}

TEST_CASE("config files load from disk and missing paths fail cleanly") {
  const std::string path = "test_config_roundtrip.cfg";
  {
    std::ofstream out(path, std::ios::binary);
    out << "scenario = validate\nseed = 7\n";
  }
  const auto cfg = harness::load_config_file(path);
  CHECK(cfg.scenario == harness::Scenario::validate);
  CHECK(cfg.seed == 7);
  std::remove(path.c_str());
  CHECK_THROWS_AS(harness::load_config_file("no_such_file.cfg"),
                  harness::ConfigError);
}

TEST_CASE("derived module views are consistent with the config") {
  harness::ScenarioConfig cfg;
  cfg.m_nodes = 4;
  cfg.lambda = 0.9;
  cfg.k = 6;
  cfg.erasure_prob = 0.25;
  cfg.backoff_window = 3;
  cfg.slots = 9000;
  cfg.seed = 17;
  cfg.r_max = 10;
  cfg.max_iters = 42;

  const auto params = harness::to_network_params(cfg);
  CHECK(params.m_nodes == 4);
  CHECK(params.lambda == 0.9);
  CHECK(params.load == doctest::Approx(3.6).epsilon(1e-15));  // M * lambda
  CHECK(params.k == 6);
  CHECK(params.r == 0);

  const auto sc = harness::to_sim_config(cfg);
  CHECK(sc.m_nodes == 4);
  // network load scaled into the simulator's stable region, split per node
  // and converted from packets to generations: scale * (M lambda) / (M k)
  CHECK(sc.lambda_slot ==
        doctest::Approx(harness::kSimulatorLoadScale * 3.6 / (4 * 6))
            .epsilon(1e-15));
  CHECK(sc.p_e == 0.25);
  CHECK(sc.backoff_window == 3);
  CHECK(sc.slots == 9000);
  CHECK(sc.seed == 17);
  CHECK(sc.coding_enabled);

  const auto gc = harness::to_game_config(cfg);
  CHECK(gc.r_max == 10);
  CHECK(gc.max_iters == 42);
  CHECK(gc.params.load == doctest::Approx(3.6).epsilon(1e-15));
  CHECK(gc.replications == 3);
  CHECK(gc.sim_template.seed == 17);
}

TEST_CASE("scenario names render for output file naming") {
  CHECK(harness::scenario_name(harness::Scenario::sweep_r) == "sweep-r");
  CHECK(harness::scenario_name(harness::Scenario::modes) == "modes");
  CHECK(harness::scenario_name(harness::Scenario::equilibrium) == "equilibrium");
  CHECK(harness::scenario_name(harness::Scenario::validate) == "validate");
}
