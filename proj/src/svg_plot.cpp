#include "mdsgame/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace mdsgame::plot {
namespace {

constexpr double kWidth = 860, kHeight = 540;
constexpr double kLeft = 80, kRight = 30, kTop = 50, kBottom = 60;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#ff7f0e", "#9467bd", "#8c564b"};

std::string fmt(double v, const char* pattern = "%.2f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

int column_index(const table::ResultTable& table, const std::string& name) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (table.columns[c] == name) return static_cast<int>(c);
  }
  throw PlotError("emit_svg: table has no column '" + name + "'");
}

bool numeric_cell(const table::Cell& cell, double* out) {
  if (const double* v = std::get_if<double>(&cell)) {
    if (std::isfinite(*v)) {
      *out = *v;
      return true;
    }
  }
  return false;
}

}  // namespace

std::string emit_svg(const table::ResultTable& table, const PlotSpec& spec) {
  const int x_col = column_index(table, spec.x_column);
  struct Pt { double x, y; };
  std::vector<std::vector<Pt>> series_points;
  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = x_min, y_max = -x_min;
  for (const Series& s : spec.series) {
    const int y_col = column_index(table, s.column);
    std::vector<Pt> pts;
    for (const auto& row : table.rows) {
      double x, y;
      if (!numeric_cell(row[x_col], &x) || !numeric_cell(row[y_col], &y)) continue;
      if (spec.log_y) {
        if (y <= 0) continue;  // not representable on a log axis
        y = std::log10(y);
      }
      pts.push_back({x, y});
      x_min = std::min(x_min, x); x_max = std::max(x_max, x);
      y_min = std::min(y_min, y); y_max = std::max(y_max, y);
    }
    series_points.push_back(std::move(pts));
  }
  const bool have_data = x_min <= x_max;
  if (!have_data) { x_min = 0; x_max = 1; y_min = 0; y_max = 1; }
  if (x_max - x_min < 1e-12) { x_min -= 1; x_max += 1; }
  if (y_max - y_min < 1e-12) { y_min -= 1; y_max += 1; }

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto sx = [&](double x) {
    return kLeft + (x - x_min) / (x_max - x_min) * plot_w;
  };
  const auto sy = [&](double y) {
    return kTop + plot_h - (y - y_min) / (y_max - y_min) * plot_h;
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth, "%.0f") +
         "\" height=\"" + fmt(kHeight, "%.0f") + "\" viewBox=\"0 0 " +
         fmt(kWidth, "%.0f") + " " + fmt(kHeight, "%.0f") + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"28\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"17\">" +
         escape_xml(spec.title) + "</text>\n";

  // axes
  svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" +
         fmt(kLeft) + "\" y2=\"" + fmt(kTop + plot_h) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kTop + plot_h) + "\" x2=\"" +
         fmt(kLeft + plot_w) + "\" y2=\"" + fmt(kTop + plot_h) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  constexpr int kTicks = 5;
  for (int i = 0; i < kTicks; ++i) {
    const double frac = static_cast<double>(i) / (kTicks - 1);
    const double xv = x_min + frac * (x_max - x_min);
    const double yv = y_min + frac * (y_max - y_min);
    const double px = sx(xv), py = sy(yv);
    svg += "<line x1=\"" + fmt(px) + "\" y1=\"" + fmt(kTop + plot_h) + "\" x2=\"" +
           fmt(px) + "\" y2=\"" + fmt(kTop + plot_h + 6) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(px) + "\" y=\"" + fmt(kTop + plot_h + 22) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
           fmt(xv, "%.4g") + "</text>\n";
    svg += "<line x1=\"" + fmt(kLeft - 6) + "\" y1=\"" + fmt(py) + "\" x2=\"" +
           fmt(kLeft) + "\" y2=\"" + fmt(py) + "\" stroke=\"black\"/>\n";
    const double label_v = spec.log_y ? std::pow(10.0, yv) : yv;
    svg += "<text x=\"" + fmt(kLeft - 10) + "\" y=\"" + fmt(py + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" +
           fmt(label_v, "%.3g") + "</text>\n";
  }

  svg += "<text x=\"" + fmt(kLeft + plot_w / 2) + "\" y=\"" + fmt(kHeight - 14) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
         escape_xml(spec.x_label) + "</text>\n";
  svg += "<text x=\"20\" y=\"" + fmt(kTop + plot_h / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 20 " + fmt(kTop + plot_h / 2) + ")\">" +
         escape_xml(spec.y_label + (spec.log_y ? " (log scale)" : "")) +
         "</text>\n";

  for (std::size_t s = 0; s < series_points.size(); ++s) {
    const char* color = kPalette[s % (sizeof kPalette / sizeof *kPalette)];
    const auto& pts = series_points[s];
    if (pts.size() >= 2) {
      std::string coords;
      for (const Pt& p : pts) {
        if (!coords.empty()) coords += " ";
        coords += fmt(sx(p.x)) + "," + fmt(sy(p.y));
      }
      svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
             "\" stroke-width=\"2\" points=\"" + coords + "\"/>\n";
    }
    for (const Pt& p : pts) {
      svg += "<circle cx=\"" + fmt(sx(p.x)) + "\" cy=\"" + fmt(sy(p.y)) +
             "\" r=\"3\" fill=\"" + color + "\"/>\n";
    }
  }

  // legend, top-right inside the plot area
  const double legend_x = kLeft + plot_w - 250;
  double legend_y = kTop + 14;
  for (std::size_t s = 0; s < spec.series.size(); ++s) {
    const char* color = kPalette[s % (sizeof kPalette / sizeof *kPalette)];
    svg += "<line class=\"legend\" x1=\"" + fmt(legend_x) + "\" y1=\"" +
           fmt(legend_y - 4) + "\" x2=\"" + fmt(legend_x + 26) + "\" y2=\"" +
           fmt(legend_y - 4) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text class=\"legend\" x=\"" + fmt(legend_x + 32) + "\" y=\"" +
           fmt(legend_y) + "\" font-family=\"sans-serif\" font-size=\"12\">" +
           escape_xml(spec.series[s].label) + "</text>\n";
    legend_y += 18;
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace mdsgame::plot
