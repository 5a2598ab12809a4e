#include "mdsgame/result_table.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace mdsgame::table {

void ResultTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::invalid_argument("ResultTable: row width does not match header");
  }
  rows.push_back(std::move(row));
}

Cell none_cell() { return Cell{std::string("none")}; }

std::string format_numeric(double value) {
  if (!std::isfinite(value)) return "none";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string to_csv(const ResultTable& table) {
  std::string out;
  for (const auto& [key, value] : table.metadata) {
    out += "# " + key + " = " + value + "\n";
  }
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ",";
    out += table.columns[c];
  }
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ",";
      if (const double* num = std::get_if<double>(&row[c])) {
        out += format_numeric(*num);
      } else {
        out += std::get<std::string>(row[c]);
      }
    }
    out += "\n";
  }
  return out;
}

}  // namespace mdsgame::table
