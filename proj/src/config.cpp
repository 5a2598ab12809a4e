#include "mdsgame/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace mdsgame::harness {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(int line, const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double parsed = 0;
  try {
    parsed = std::stod(value, &used);
  } catch (const std::exception&) {
    throw ConfigError(line, key, "expected a number, got '" + value + "'");
  }
  if (used != value.size()) {
    throw ConfigError(line, key, "trailing characters after number '" + value + "'");
  }
  return parsed;
}

std::int64_t parse_int(int line, const std::string& key, const std::string& value) {
  std::size_t used = 0;
  std::int64_t parsed = 0;
  try {
    parsed = std::stoll(value, &used);
  } catch (const std::exception&) {
    throw ConfigError(line, key, "expected an integer, got '" + value + "'");
  }
  if (used != value.size()) {
    throw ConfigError(line, key, "trailing characters after integer '" + value + "'");
  }
  return parsed;
}

std::uint64_t parse_u64(int line, const std::string& key, const std::string& value) {
  std::size_t used = 0;
  std::uint64_t parsed = 0;
  try {
    parsed = std::stoull(value, &used);
  } catch (const std::exception&) {
    throw ConfigError(line, key, "expected an unsigned integer, got '" + value + "'");
  }
  if (used != value.size() || (!value.empty() && value[0] == '-')) {
    throw ConfigError(line, key, "expected an unsigned integer, got '" + value + "'");
  }
  return parsed;
}

std::vector<double> parse_grid(int line, const std::string& key,
                               const std::string& value) {
  std::vector<double> grid;
  std::string item;
  std::stringstream stream(value);
  while (std::getline(stream, item, ',')) {
    item = trim(item);
    if (item.empty()) {
      throw ConfigError(line, key, "empty entry in list");
    }
    grid.push_back(parse_double(line, key, item));
  }
  if (grid.empty()) throw ConfigError(line, key, "list must be nonempty");
  return grid;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ConfigError::ConfigError(int line, const std::string& key,
                         const std::string& message)
    : std::runtime_error("config line " + std::to_string(line) +
                         (key.empty() ? "" : ", key '" + key + "'") + ": " +
                         message),
      line_(line),
      key_(key) {}

std::string scenario_name(Scenario scenario) {
  switch (scenario) {
    case Scenario::sweep_r: return "sweep-r";
    case Scenario::modes: return "modes";
    case Scenario::equilibrium: return "equilibrium";
    case Scenario::validate: return "validate";
  }
  return "unknown";
}

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig cfg;
  std::stringstream stream(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(line_no, "", "expected 'key = value', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "", "missing key before '='");
    if (value.empty()) throw ConfigError(line_no, key, "missing value after '='");

    if (key == "scenario") {
      if (value == "sweep-r") cfg.scenario = Scenario::sweep_r;
      else if (value == "modes") cfg.scenario = Scenario::modes;
      else if (value == "equilibrium") cfg.scenario = Scenario::equilibrium;
      else if (value == "validate") cfg.scenario = Scenario::validate;
      else throw ConfigError(line_no, key,
                             "must be one of sweep-r, modes, equilibrium, validate");
    } else if (key == "m_nodes") {
      const auto v = parse_int(line_no, key, value);
      if (v < 1) throw ConfigError(line_no, key, "must be >= 1");
      cfg.m_nodes = static_cast<int>(v);
    } else if (key == "lambda") {
      const auto v = parse_double(line_no, key, value);
      if (v < 0) throw ConfigError(line_no, key, "must be >= 0");
      cfg.lambda = v;
    } else if (key == "alpha") {
      const auto v = parse_double(line_no, key, value);
      if (v <= 0) throw ConfigError(line_no, key, "must be > 0");
      cfg.alpha = v;
    } else if (key == "q") {
      const auto v = parse_double(line_no, key, value);
      if (v <= 0) throw ConfigError(line_no, key, "must be > 0");
      cfg.q = v;
    } else if (key == "probing_rate") {
      const auto v = parse_double(line_no, key, value);
      if (v <= 0) throw ConfigError(line_no, key, "must be > 0");
      cfg.probing_rate = v;
    } else if (key == "k") {
      const auto v = parse_int(line_no, key, value);
      if (v < 1 || v > 128) throw ConfigError(line_no, key, "must be in [1, 128]");
      cfg.k = static_cast<int>(v);
    } else if (key == "r_max") {
      const auto v = parse_int(line_no, key, value);
      if (v < 0 || v > 128) throw ConfigError(line_no, key, "must be in [0, 128]");
      cfg.r_max = static_cast<int>(v);
    } else if (key == "erasure_prob") {
      const auto v = parse_double(line_no, key, value);
      if (v < 0 || v > 1) throw ConfigError(line_no, key, "must be in [0, 1]");
      cfg.erasure_prob = v;
    } else if (key == "backoff_window") {
      const auto v = parse_int(line_no, key, value);
      if (v < 1) throw ConfigError(line_no, key, "must be >= 1");
      cfg.backoff_window = static_cast<int>(v);
    } else if (key == "slots") {
      const auto v = parse_int(line_no, key, value);
      if (v < 1) throw ConfigError(line_no, key, "must be >= 1");
      cfg.slots = v;
    } else if (key == "seed") {
      cfg.seed = parse_u64(line_no, key, value);
    } else if (key == "load_grid") {
      cfg.load_grid = parse_grid(line_no, key, value);
      for (double g : cfg.load_grid) {
        if (g < 0) throw ConfigError(line_no, key, "loads must be >= 0");
      }
    } else if (key == "model_variant") {
      if (value == "literal") cfg.model_variant = model::ModelVariant::literal;
      else if (value == "swapped") cfg.model_variant = model::ModelVariant::swapped;
      else throw ConfigError(line_no, key, "must be literal or swapped");
    } else if (key == "evaluator") {
      if (value == "analytic") cfg.evaluator = game::EvaluatorKind::analytic;
      else if (value == "simulated") cfg.evaluator = game::EvaluatorKind::simulated;
      else throw ConfigError(line_no, key, "must be analytic or simulated");
    } else if (key == "max_iters") {
      const auto v = parse_int(line_no, key, value);
      if (v < 1) throw ConfigError(line_no, key, "must be >= 1");
      cfg.max_iters = static_cast<int>(v);
    } else if (key == "tolerance") {
      const auto v = parse_double(line_no, key, value);
      if (v < 0) throw ConfigError(line_no, key, "must be >= 0");
      cfg.tolerance = v;
    } else if (key == "random_r_offset") {
      const auto v = parse_int(line_no, key, value);
      if (v < 1) throw ConfigError(line_no, key, "must be >= 1");
      cfg.random_r_offset = static_cast<int>(v);
    } else {
      throw ConfigError(line_no, key, "unknown key");
    }
  }
  return cfg;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError(0, "", "cannot open config file '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string serialize_config(const ScenarioConfig& cfg) {
  std::string out;
  out += "scenario = " + scenario_name(cfg.scenario) + "\n";
  out += "m_nodes = " + std::to_string(cfg.m_nodes) + "\n";
  out += "lambda = " + format_double(cfg.lambda) + "\n";
  out += "alpha = " + format_double(cfg.alpha) + "\n";
  out += "q = " + format_double(cfg.q) + "\n";
  out += "probing_rate = " + format_double(cfg.probing_rate) + "\n";
  out += "k = " + std::to_string(cfg.k) + "\n";
  out += "r_max = " + std::to_string(cfg.r_max) + "\n";
  out += "erasure_prob = " + format_double(cfg.erasure_prob) + "\n";
  out += "backoff_window = " + std::to_string(cfg.backoff_window) + "\n";
  out += "slots = " + std::to_string(cfg.slots) + "\n";
  out += "seed = " + std::to_string(cfg.seed) + "\n";
  std::string grid;
  for (double g : cfg.load_grid) {
    if (!grid.empty()) grid += ",";
    grid += format_double(g);
  }
  out += "load_grid = " + grid + "\n";
  out += std::string("model_variant = ") +
         (cfg.model_variant == model::ModelVariant::literal ? "literal" : "swapped") +
         "\n";
  out += std::string("evaluator = ") +
         (cfg.evaluator == game::EvaluatorKind::analytic ? "analytic" : "simulated") +
         "\n";
  out += "max_iters = " + std::to_string(cfg.max_iters) + "\n";
  out += "tolerance = " + format_double(cfg.tolerance) + "\n";
  out += "random_r_offset = " + std::to_string(cfg.random_r_offset) + "\n";
  return out;
}

model::NetworkParams to_network_params(const ScenarioConfig& cfg) {
  model::NetworkParams p;
  p.m_nodes = cfg.m_nodes;
  p.probing_rate = cfg.probing_rate;
  p.alpha = cfg.alpha;
  p.q = cfg.q;
  p.lambda = cfg.lambda;
  p.load = cfg.m_nodes * cfg.lambda;  // G = M lambda with unit slots
  p.k = cfg.k;
  p.r = 0;
  return p;
}

sim::SimConfig to_sim_config(const ScenarioConfig& cfg) {
  sim::SimConfig sc;
  sc.m_nodes = cfg.m_nodes;
  // Generations per slot per node at the model's own operating point,
  // compressed into the simulator's stable region.
  sc.lambda_slot =
      kSimulatorLoadScale * (cfg.m_nodes * cfg.lambda) / (cfg.m_nodes * cfg.k);
  sc.k = cfg.k;
  sc.r = 0;
  sc.p_e = cfg.erasure_prob;
  sc.backoff_window = cfg.backoff_window;
  sc.slots = cfg.slots;
  sc.seed = cfg.seed;
  sc.coding_enabled = true;
  return sc;
}

game::GameConfig to_game_config(const ScenarioConfig& cfg) {
  game::GameConfig gc;
  gc.params = to_network_params(cfg);
  gc.variant = cfg.model_variant;
  gc.r_max = cfg.r_max;
  gc.max_iters = cfg.max_iters;
  gc.tolerance = cfg.tolerance;
  gc.evaluator = cfg.evaluator;
  gc.sim_template = to_sim_config(cfg);
  gc.replications = 3;
  return gc;
}

}  // namespace mdsgame::harness
