#include "platoon/svg_chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace platoon {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kMarginLeft = 80.0;
constexpr double kMarginRight = 170.0;  // room for the legend
constexpr double kMarginTop = 50.0;
constexpr double kMarginBottom = 60.0;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string num(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.2f", value);
  return buffer;
}

// Tick label: trim trailing z{eros so 5.00 prints as 5 but 26.25 survives.
std::string tick_label(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.2f", value);
  std::string text = buffer;
  while (text.find('.') != std::string::npos && (text.back() == '0' || text.back() == '.')) {
    const bool stop = text.back() == '.';
    text.pop_back();
    if (stop) break;
  }
  return text == "-0" ? "0" : text;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

// A "nice" tick step (1, 2 or 5 times a power of ten) for ~5 intervals.
double nice_step(double span) {
  if (span <= 0.0) return 1.0;
  const double raw = span / 5.0;
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  const double residual = raw / magnitude;
  if (residual <= 1.0) return magnitude;
  if (residual <= 2.0) return 2.0 * magnitude;
  if (residual <= 5.0) return 5.0 * magnitude;
  return 10.0 * magnitude;
}

}  // namespace

std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label, const std::vector<ChartSeries>& series) {
  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  bool any = false;
  for (const ChartSeries& s : series) {
    for (const auto& [x, y] : s.points) {
      if (!any) {
        x_min = x_max = x;
        y_min = y_max = y;
        any = true;
      } else {
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
      }
    }
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  if (y_max == y_min) y_max = y_min + 1.0;

  const double x_step = nice_step(x_max - x_min);
  const double y_step = nice_step(y_max - y_min);
  // Expand the y range to tick boundaries so lines never touch the frame.
  y_min = std::floor(y_min / y_step) * y_step;
  y_max = std::ceil(y_max / y_step) * y_step;
  if (y_max == y_min) y_max = y_min + y_step;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto sx = [&](double x) { return kMarginLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto sy = [&](double y) { return kMarginTop + plot_h - (y - y_min) / (y_max - y_min) * plot_h; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 500\" "
         "font-family=\"sans-serif\" font-size=\"13\">\n";
  svg += "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(kMarginLeft + plot_w / 2) + "\" y=\"28\" text-anchor=\"middle\" "
         "font-size=\"17\">" + escape(title) + "</text>\n";

  // Gridlines and ticks.
  for (double y = y_min; y <= y_max + 1e-9; y += y_step) {
    const double py = sy(y);
    svg += "<line x1=\"" + num(kMarginLeft) + "\" y1=\"" + num(py) + "\" x2=\"" +
           num(kMarginLeft + plot_w) + "\" y2=\"" + num(py) + "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + num(kMarginLeft - 8) + "\" y=\"" + num(py + 4) +
           "\" text-anchor=\"end\">" + tick_label(y) + "</text>\n";
  }
  const double first_x_tick = std::ceil(x_min / x_step) * x_step;
  for (double x = first_x_tick; x <= x_max + 1e-9; x += x_step) {
    const double px = sx(x);
    svg += "<line x1=\"" + num(px) + "\" y1=\"" + num(kMarginTop + plot_h) + "\" x2=\"" + num(px) +
           "\" y2=\"" + num(kMarginTop + plot_h + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + num(px) + "\" y=\"" + num(kMarginTop + plot_h + 22) +
           "\" text-anchor=\"middle\">" + tick_label(x) + "</text>\n";
  }

  // Frame and axis labels.
  svg += "<rect x=\"" + num(kMarginLeft) + "\" y=\"" + num(kMarginTop) + "\" width=\"" +
         num(plot_w) + "\" height=\"" + num(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";
  svg += "<text x=\"" + num(kMarginLeft + plot_w / 2) + "\" y=\"" + num(kHeight - 14) +
         "\" text-anchor=\"middle\">" + escape(x_label) + "</text>\n";
  svg += "<text x=\"22\" y=\"" + num(kMarginTop + plot_h / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 22 " + num(kMarginTop + plot_h / 2) +
         ")\">" + escape(y_label) + "</text>\n";

  // Series polylines and point markers.
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = kPalette[k % (sizeof kPalette / sizeof kPalette[0])];
    std::string points;
    for (const auto& [x, y] : series[k].points) {
      points += num(sx(x)) + "," + num(sy(y)) + " ";
    }
    if (!points.empty()) points.pop_back();
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
    for (const auto& [x, y] : series[k].points) {
      svg += "<circle cx=\"" + num(sx(x)) + "\" cy=\"" + num(sy(y)) + "\" r=\"2.5\" fill=\"" +
             color + "\"/>\n";
    }
  }

  // Legend, top right.
  const double legend_x = kMarginLeft + plot_w + 14;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = kPalette[k % (sizeof kPalette / sizeof kPalette[0])];
    const double ly = kMarginTop + 10 + 22 * static_cast<double>(k);
    svg += "<line x1=\"" + num(legend_x) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(legend_x + 24) +
           "\" y2=\"" + num(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + num(legend_x + 30) + "\" y=\"" + num(ly + 4) + "\">" +
           escape(series[k].label) + "</text>\n";
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace platoon
