#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace sobscale {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

/// Minimal deterministic SVG line plot: axes, ticks, one polyline per series,
/// legend in the top-right corner. With log_y the y values must be positive
/// and are drawn on a log10 axis.
void write_svg_plot(std::ostream& os, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<PlotSeries>& series, bool log_y = false);

} // namespace sobscale
