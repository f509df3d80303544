#include "sobscale/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace sobscale {

namespace {

constexpr double kWidth = 640.0, kHeight = 420.0;
constexpr double kLeft = 70.0, kRight = 620.0, kTop = 40.0, kBottom = 370.0;

const char* kPalette[] = {"#1f6fb2", "#d1495b", "#3f8f4a", "#8a5fbf",
                          "#c98a2b", "#3aa6a6", "#72583b", "#777777"};

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

} // namespace

void write_svg_plot(std::ostream& os, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<PlotSeries>& series, bool log_y) {
  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = x_min, y_max = -x_min;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      const double yy = log_y ? std::log10(std::max(y, 1e-300)) : y;
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, yy);
      y_max = std::max(y_max, yy);
    }
  if (!(x_min < x_max)) {
    x_min -= 1.0;
    x_max += 1.0;
  }
  if (!(y_min < y_max)) {
    y_min -= 1.0;
    y_max += 1.0;
  }
  const double x_pad = 0.05 * (x_max - x_min);
  const double y_pad = 0.05 * (y_max - y_min);
  x_min -= x_pad;
  x_max += x_pad;
  y_min -= y_pad;
  y_max += y_pad;

  const auto sx = [&](double x) {
    return kLeft + (x - x_min) / (x_max - x_min) * (kRight - kLeft);
  };
  const auto sy = [&](double y) {
    const double yy = log_y ? std::log10(std::max(y, 1e-300)) : y;
    return kBottom - (yy - y_min) / (y_max - y_min) * (kBottom - kTop);
  };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
     << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight
     << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << fixed2(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" "
     << "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";

  // axes
  os << "<line x1=\"" << fixed2(kLeft) << "\" y1=\"" << fixed2(kBottom) << "\" x2=\""
     << fixed2(kRight) << "\" y2=\"" << fixed2(kBottom)
     << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  os << "<line x1=\"" << fixed2(kLeft) << "\" y1=\"" << fixed2(kTop) << "\" x2=\""
     << fixed2(kLeft) << "\" y2=\"" << fixed2(kBottom)
     << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  // ticks
  for (int i = 0; i <= 5; ++i) {
    const double fx = x_min + (x_max - x_min) * i / 5.0;
    const double px = sx(fx);
    os << "<line x1=\"" << fixed2(px) << "\" y1=\"" << fixed2(kBottom) << "\" x2=\""
       << fixed2(px) << "\" y2=\"" << fixed2(kBottom + 5) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << fixed2(px) << "\" y=\"" << fixed2(kBottom + 18)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
       << tick_label(fx) << "</text>\n";

    const double fy = y_min + (y_max - y_min) * i / 5.0;
    const double py = kBottom - (fy - y_min) / (y_max - y_min) * (kBottom - kTop);
    os << "<line x1=\"" << fixed2(kLeft - 5) << "\" y1=\"" << fixed2(py) << "\" x2=\""
       << fixed2(kLeft) << "\" y2=\"" << fixed2(py) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << fixed2(kLeft - 8) << "\" y=\"" << fixed2(py + 4)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
       << tick_label(log_y ? std::pow(10.0, fy) : fy) << "</text>\n";
  }

  // axis labels
  os << "<text x=\"" << fixed2((kLeft + kRight) / 2) << "\" y=\""
     << fixed2(kBottom + 38)
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
     << x_label << "</text>\n";
  os << "<text x=\"16\" y=\"" << fixed2((kTop + kBottom) / 2)
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
     << "transform=\"rotate(-90 16 " << fixed2((kTop + kBottom) / 2) << ")\">"
     << y_label << "</text>\n";

  // series
  for (std::size_t si = 0; si < series.size(); ++si) {
    const char* color = kPalette[si % 8];
    os << "<polyline fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1.6\" points=\"";
    for (const auto& [x, y] : series[si].points)
      os << fixed2(sx(x)) << "," << fixed2(sy(y)) << " ";
    os << "\"/>\n";
    for (const auto& [x, y] : series[si].points)
      os << "<circle cx=\"" << fixed2(sx(x)) << "\" cy=\"" << fixed2(sy(y))
         << "\" r=\"2.4\" fill=\"" << color << "\"/>\n";
    // legend
    const double ly = kTop + 14.0 * static_cast<double>(si);
    os << "<rect x=\"" << fixed2(kRight - 150) << "\" y=\"" << fixed2(ly - 8)
       << "\" width=\"10\" height=\"3\" fill=\"" << color << "\"/>\n";
    os << "<text x=\"" << fixed2(kRight - 135) << "\" y=\"" << fixed2(ly - 3)
       << "\" font-family=\"sans-serif\" font-size=\"10\">" << series[si].label
       << "</text>\n";
  }
  os << "</svg>\n";
}

} // namespace sobscale
