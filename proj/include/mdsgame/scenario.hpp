#pragma once

#include <string>
#include <vector>

#include "mdsgame/config.hpp"
#include "mdsgame/result_table.hpp"

namespace mdsgame::harness {

struct ScenarioOutput {
  std::vector<table::ResultTable> tables;
  // name -> document; emitted only when the config asks for SVG
  std::vector<std::pair<std::string, std::string>> svg_documents;
  bool validation_passed = true;  // only the validate scenario can clear this
};

// Runs one scenario to in-memory tables/plots. Pure given the config (all
// randomness flows from the seed), so identical configs give byte-identical
// serialized output.
ScenarioOutput run_scenario(const ScenarioConfig& cfg);

// Writes each table as <name>.csv (plus <name>.svg) under cfg.output_dir;
// returns the written paths.
std::vector<std::string> write_outputs(const ScenarioOutput& output,
                                       const ScenarioConfig& cfg);

}  // namespace mdsgame::harness
