#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "mdsgame/result_table.hpp"

// Minimal deterministic SVG line plots: fixed canvas, axes with ticks, one
// polyline per series, and a legend. Identical input produces byte-identical
// output (no timestamps, no randomness).
namespace mdsgame::plot {

struct Series {
  std::string column;  // y column in the table
  std::string label;   // legend text
};

struct PlotSpec {
  std::string title;
  std::string x_column;
  std::vector<Series> series;
  std::string x_label;
  std::string y_label;
  bool log_y = false;  // delay plots default to log scale at the call sites
};

class PlotError : public std::runtime_error {
 public:
  explicit PlotError(const std::string& message) : std::runtime_error(message) {}
};

std::string emit_svg(const table::ResultTable& table, const PlotSpec& spec);

}  // namespace mdsgame::plot
