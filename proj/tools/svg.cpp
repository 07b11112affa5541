// svg.cpp — scaling-figure rendering (pure SVG 1.1, no external assets).

#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace adsearch::cli {

namespace {

constexpr int kWidth = 880;
constexpr int kHeight = 620;
constexpr double kLeft = 70, kRight = 650, kTop = 48, kBottom = 560;

const char* kPalette[12] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                            "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                            "#bcbd22", "#17becf", "#393b79", "#ad494a"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string render_figure_svg(const std::vector<SweepRecord>& records,
                              const std::vector<SlopeFit>& fits,
                              const ConfigEcho& echo) {
  // usable points per omega, sorted by N
  std::map<double, std::vector<std::pair<double, double>>> curves;
  for (const auto& rec : records) {
    if (rec.flag.rfind("error:", 0) == 0) continue;
    if (!(rec.runtime_at_target > 0.0)) continue;
    curves[rec.omega].emplace_back(
        std::log2(static_cast<double>(rec.n_items)),
        std::log2(rec.runtime_at_target));
  }
  for (auto& [omega, pts] : curves) std::sort(pts.begin(), pts.end());

  double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
  for (const auto& [omega, pts] : curves) {
    for (const auto& [x, y] : pts) {
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  if (curves.empty()) {  // degenerate input: render an empty frame
    x_min = 0, x_max = 1, y_min = 0, y_max = 1;
  }
  x_min = std::floor(x_min);
  x_max = std::ceil(x_max) + (x_max == x_min ? 1.0 : 0.0);
  y_min = std::floor(y_min);
  y_max = std::ceil(y_max) + (y_max == y_min ? 1.0 : 0.0);

  const auto px = [&](double x) {
    return kLeft + (x - x_min) / (x_max - x_min) * (kRight - kLeft);
  };
  const auto py = [&](double y) {
    return kBottom - (y - y_min) / (y_max - y_min) * (kBottom - kTop);
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
         "width=\""
      << kWidth << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth
      << " " << kHeight << "\">\n";
  svg << "<!--\n";
  for (const auto& [key, value] : echo) {
    svg << "#cfg " << key << "=" << value << "\n";
  }
  svg << "-->\n";
  svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << num((kLeft + kRight) / 2) << "\" y=\"24\" "
         "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
         "run-time for success probability at target vs list length</text>\n";

  // axes and integer ticks
  svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kBottom)
      << "\" x2=\"" << num(kRight) << "\" y2=\"" << num(kBottom)
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\""
      << num(kLeft) << "\" y2=\"" << num(kBottom) << "\" stroke=\"black\"/>\n";
  const int x_step = std::max(1, static_cast<int>((x_max - x_min) / 12) + 1);
  for (int x = static_cast<int>(x_min); x <= static_cast<int>(x_max);
       x += x_step) {
    svg << "<line x1=\"" << num(px(x)) << "\" y1=\"" << num(kBottom)
        << "\" x2=\"" << num(px(x)) << "\" y2=\"" << num(kBottom + 6)
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << num(px(x)) << "\" y=\"" << num(kBottom + 22)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\">"
        << x << "</text>\n";
  }
  const int y_step = std::max(1, static_cast<int>((y_max - y_min) / 12) + 1);
  for (int y = static_cast<int>(y_min); y <= static_cast<int>(y_max);
       y += y_step) {
    svg << "<line x1=\"" << num(kLeft - 6) << "\" y1=\"" << num(py(y))
        << "\" x2=\"" << num(kLeft) << "\" y2=\"" << num(py(y))
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << num(kLeft - 10) << "\" y=\"" << num(py(y) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"12\">"
        << y << "</text>\n";
  }
  svg << "<text x=\"" << num((kLeft + kRight) / 2) << "\" y=\""
      << num(kBottom + 44)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">log2 N</text>\n";
  svg << "<text x=\"20\" y=\"" << num((kTop + kBottom) / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\" transform=\"rotate(-90 20 "
      << num((kTop + kBottom) / 2) << ")\">log2 T</text>\n";

  // curves (legend ordered by omega, matching the map order)
  int idx = 0;
  double legend_y = kTop + 12;
  for (const auto& [omega, pts] : curves) {
    const char* color = kPalette[idx % 12];
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : pts) {
      svg << num(px(x)) << "," << num(py(y)) << " ";
    }
    svg << "\"/>\n";
    for (const auto& [x, y] : pts) {
      svg << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y))
          << "\" r=\"2.4\" fill=\"" << color << "\"/>\n";
    }

    char label[96];
    const auto fit = std::find_if(fits.begin(), fits.end(), [&](const auto& f) {
      return std::abs(f.omega - omega) < 1e-12;
    });
    if (fit != fits.end()) {
      std::snprintf(label, sizeof label, "omega=%.2f  slope=%.3f", omega,
                    fit->slope);
    } else {
      std::snprintf(label, sizeof label, "omega=%.2f", omega);
    }
    svg << "<line x1=\"" << num(kRight + 18) << "\" y1=\"" << num(legend_y - 4)
        << "\" x2=\"" << num(kRight + 44) << "\" y2=\"" << num(legend_y - 4)
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << num(kRight + 50) << "\" y=\"" << num(legend_y)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << label
        << "</text>\n";
    legend_y += 18;
    ++idx;
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace adsearch::cli
