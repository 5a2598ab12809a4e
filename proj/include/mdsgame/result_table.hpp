#pragma once

#include <string>
#include <variant>
#include <vector>

// Rectangular results with a `#`-prefixed metadata header. Doubles are
// written with a fixed C-locale format; non-finite values never leak into the
// CSV (they come out as the literal cell "none").
namespace mdsgame::table {

using Cell = std::variant<double, std::string>;

struct ResultTable {
  std::string name;
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);  // throws on width mismatch
};

Cell none_cell();
std::string format_numeric(double value);  // "%.12g", non-finite -> "none"
std::string to_csv(const ResultTable& table);

}  // namespace mdsgame::table
