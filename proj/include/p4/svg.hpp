#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace p4eval::svg {

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;  // NaN y breaks the line
};

struct PlotSpec {
  int width = 640;
  int height = 480;
  std::string title;
  std::string x_label;
  std::string y_label;
  double x_min = 0.0, x_max = 1.0;
  double y_min = 0.0, y_max = 1.0;
  std::vector<Series> series;
};

namespace detail {

inline std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline constexpr std::array<std::string_view, 8> kPalette{
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};

}  // namespace detail

/// Static line chart: axes with ten ticks each, one polyline per series
/// segment, legend in the top-right corner. No external references.
inline std::string render(const PlotSpec& plot) {
  using detail::num;
  const double left = 60, right = 150, top = 40, bottom = 50;
  const double pw = plot.width - left - right;
  const double ph = plot.height - top - bottom;
  auto px = [&](double x) { return left + (x - plot.x_min) / (plot.x_max - plot.x_min) * pw; };
  auto py = [&](double y) { return top + ph - (y - plot.y_min) / (plot.y_max - plot.y_min) * ph; };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << plot.width << "\" height=\""
      << plot.height << "\" viewBox=\"0 0 " << plot.width << ' ' << plot.height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  if (!plot.title.empty()) {
    out << "<text x=\"" << num(left + pw / 2) << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
        << detail::escape(plot.title) << "</text>\n";
  }
  out << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw)
      << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 10; ++i) {
    const double fx = plot.x_min + (plot.x_max - plot.x_min) * i / 10.0;
    const double fy = plot.y_min + (plot.y_max - plot.y_min) * i / 10.0;
    const double x = px(fx), y = py(fy);
    out << "<line x1=\"" << num(x) << "\" y1=\"" << num(top + ph) << "\" x2=\"" << num(x)
        << "\" y2=\"" << num(top + ph + 5) << "\" stroke=\"black\"/>"
        << "<text x=\"" << num(x) << "\" y=\"" << num(top + ph + 18)
        << "\" text-anchor=\"middle\">" << num(fx).substr(0, 4) << "</text>\n";
    out << "<line x1=\"" << num(left - 5) << "\" y1=\"" << num(y) << "\" x2=\"" << num(left)
        << "\" y2=\"" << num(y) << "\" stroke=\"black\"/>"
        << "<text x=\"" << num(left - 8) << "\" y=\"" << num(y + 4)
        << "\" text-anchor=\"end\">" << num(fy).substr(0, 4) << "</text>\n";
  }
  out << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(plot.height - 10.0)
      << "\" text-anchor=\"middle\">" << detail::escape(plot.x_label) << "</text>\n";
  out << "<text x=\"15\" y=\"" << num(top + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
      << num(top + ph / 2) << ")\">" << detail::escape(plot.y_label) << "</text>\n";

  for (std::size_t s = 0; s < plot.series.size(); ++s) {
    const auto color = detail::kPalette[s % detail::kPalette.size()];
    std::vector<std::vector<std::pair<double, double>>> segments(1);
    for (const auto& [x, y] : plot.series[s].points) {
      if (std::isnan(x) || std::isnan(y)) {
        if (!segments.back().empty()) segments.emplace_back();
        continue;
      }
      segments.back().emplace_back(px(x), py(y));
    }
    for (const auto& seg : segments) {
      if (seg.empty()) continue;
      out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < seg.size(); ++i) {
        out << (i ? " " : "") << num(seg[i].first) << ',' << num(seg[i].second);
      }
      out << "\"/>\n";
    }
    const double ly = top + 10 + 16.0 * static_cast<double>(s);
    out << "<line x1=\"" << num(left + pw + 10) << "\" y1=\"" << num(ly) << "\" x2=\""
        << num(left + pw + 30) << "\" y2=\"" << num(ly) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/><text x=\"" << num(left + pw + 35) << "\" y=\"" << num(ly + 4)
        << "\">" << detail::escape(plot.series[s].name) << "</text>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace p4eval::svg
