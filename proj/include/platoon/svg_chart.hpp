#pragma once

#include <string>
#include <utility>
#include <vector>

namespace platoon {

// One polyline in a chart.
struct ChartSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (x, y), drawn in order
};

// Self-contained SVG line chart (fixed 800x500 viewBox, axes, ticks and a
// legend); output depends only on the arguments.
std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label, const std::vector<ChartSeries>& series);

}  // namespace platoon
