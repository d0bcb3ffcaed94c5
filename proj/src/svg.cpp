#include "itemsynth/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace itemsynth {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string radar_svg(const std::vector<std::string>& axis_names,
                      const std::vector<std::pair<std::string, std::vector<double>>>& series) {
  const double cx = 320, cy = 270, radius = 190;
  const std::size_t axes = axis_names.size();
  const double two_pi = 2.0 * 3.14159265358979323846;

  auto point = [&](std::size_t axis, double r) {
    const double angle = -two_pi / 4.0 + two_pi * static_cast<double>(axis) / axes;
    return std::pair<double, double>(cx + r * radius * std::cos(angle),
                                     cy + r * radius * std::sin(angle));
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\""
      << 560 + 22 * series.size() << "\" font-family=\"sans-serif\" font-size=\"13\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (double ring : {0.25, 0.5, 0.75, 1.0}) {
    svg << "<polygon fill=\"none\" stroke=\"#cccccc\" points=\"";
    for (std::size_t a = 0; a < axes; ++a) {
      const auto [x, y] = point(a, ring);
      svg << num(x) << ',' << num(y) << ' ';
    }
    svg << "\"/>\n";
  }
  for (std::size_t a = 0; a < axes; ++a) {
    const auto [x, y] = point(a, 1.0);
    svg << "<line x1=\"" << num(cx) << "\" y1=\"" << num(cy) << "\" x2=\"" << num(x)
        << "\" y2=\"" << num(y) << "\" stroke=\"#cccccc\"/>\n";
    const auto [lx, ly] = point(a, 1.12);
    svg << "<text x=\"" << num(lx) << "\" y=\"" << num(ly)
        << "\" text-anchor=\"middle\" fill=\"#333333\">" << axis_names[a] << "</text>\n";
  }

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % kPaletteSize];
    svg << "<polygon fill=\"" << color << "\" fill-opacity=\"0.15\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"";
    for (std::size_t a = 0; a < axes; ++a) {
      const double v = std::clamp(series[s].second[a], 0.0, 1.0);
      const auto [x, y] = point(a, v);
      svg << num(x) << ',' << num(y) << ' ';
    }
    svg << "\"/>\n";
  }

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % kPaletteSize];
    const double y = 540 + 22.0 * s;
    svg << "<rect x=\"40\" y=\"" << num(y) << "\" width=\"14\" height=\"14\" fill=\"" << color
        << "\"/>\n";
    svg << "<text x=\"62\" y=\"" << num(y + 12) << "\" fill=\"#333333\">" << series[s].first
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string bar_svg(const std::string& title,
                    const std::vector<std::pair<std::string, double>>& bars) {
  const double plot_left = 60, plot_top = 50, plot_height = 300;
  const double bar_width = 46, gap = 28;
  const double width = std::max(360.0, plot_left + bars.size() * (bar_width + gap) + 40);

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width)
      << "\" height=\"440\" font-family=\"sans-serif\" font-size=\"13\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << num(width / 2) << "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">"
      << title << "</text>\n";

  for (int tick = 0; tick <= 4; ++tick) {
    const double v = tick / 4.0;
    const double y = plot_top + plot_height * (1.0 - v);
    svg << "<line x1=\"" << num(plot_left) << "\" y1=\"" << num(y) << "\" x2=\""
        << num(width - 20) << "\" y2=\"" << num(y) << "\" stroke=\"#dddddd\"/>\n";
    svg << "<text x=\"" << num(plot_left - 8) << "\" y=\"" << num(y + 4)
        << "\" text-anchor=\"end\" fill=\"#333333\">" << num(v) << "</text>\n";
  }

  for (std::size_t i = 0; i < bars.size(); ++i) {
    const double v = std::clamp(bars[i].second, 0.0, 1.0);
    const double x = plot_left + 20 + i * (bar_width + gap);
    const double h = plot_height * v;
    const char* color = kPalette[i % kPaletteSize];
    svg << "<rect x=\"" << num(x) << "\" y=\"" << num(plot_top + plot_height - h) << "\" width=\""
        << num(bar_width) << "\" height=\"" << num(h) << "\" fill=\"" << color << "\"/>\n";
    svg << "<text x=\"" << num(x + bar_width / 2) << "\" y=\""
        << num(plot_top + plot_height - h - 6) << "\" text-anchor=\"middle\" fill=\"#333333\">"
        << num(bars[i].second) << "</text>\n";
    svg << "<text x=\"" << num(x + bar_width / 2) << "\" y=\"" << num(plot_top + plot_height + 18)
        << "\" text-anchor=\"middle\" fill=\"#333333\" transform=\"rotate(30 "
        << num(x + bar_width / 2) << ' ' << num(plot_top + plot_height + 18) << ")\">"
        << bars[i].first << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace itemsynth
