#pragma once

// Minimal deterministic SVG line plots: fixed viewport, decade ticks on
// logarithmic axes, one polyline per series, inline legend. Output depends
// only on the input data (no timestamps, no randomness).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace excitrap {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<PlotSeries> series;
  int width = 800;
  int height = 560;
};

namespace detail {

inline std::string fmt_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

inline std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace detail

inline std::string render_plot(const PlotSpec& plot) {
  if (plot.series.empty()) throw std::invalid_argument("plot needs at least one series");
  const double ml = 70, mr = 20, mt = plot.title.empty() ? 20 : 44, mb = 52;
  const double pw = plot.width - ml - mr, ph = plot.height - mt - mb;

  auto transform = [](double v, bool lg) {
    if (!lg) return v;
    if (!(v > 0.0))
      throw std::invalid_argument("nonpositive value on a logarithmic axis");
    return std::log10(v);
  };

  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const auto& s : plot.series) {
    if (s.x.size() != s.y.size() || s.x.empty())
      throw std::invalid_argument("plot series needs matching nonempty x and y");
    for (size_t i = 0; i < s.x.size(); ++i) {
      double tx = transform(s.x[i], plot.log_x);
      double ty = transform(s.y[i], plot.log_y);
      if (!std::isfinite(tx) || !std::isfinite(ty)) continue;
      x_lo = std::min(x_lo, tx);
      x_hi = std::max(x_hi, tx);
      y_lo = std::min(y_lo, ty);
      y_hi = std::max(y_hi, ty);
    }
  }
  if (!std::isfinite(x_lo) || !std::isfinite(y_lo))
    throw std::invalid_argument("plot has no finite data");
  if (x_hi == x_lo) {
    x_lo -= 0.5;
    x_hi += 0.5;
  }
  if (y_hi == y_lo) {
    y_lo -= 0.5;
    y_hi += 0.5;
  }
  const double x_pad = 0.02 * (x_hi - x_lo), y_pad = 0.04 * (y_hi - y_lo);
  x_lo -= x_pad;
  x_hi += x_pad;
  y_lo -= y_pad;
  y_hi += y_pad;

  auto px = [&](double tx) { return ml + (tx - x_lo) / (x_hi - x_lo) * pw; };
  auto py = [&](double ty) { return mt + (y_hi - ty) / (y_hi - y_lo) * ph; };

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  const int n_colors = 8;

  std::string svg;
  char head[160];
  std::snprintf(head, sizeof(head),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                "viewBox=\"0 0 %d %d\">\n",
                plot.width, plot.height, plot.width, plot.height);
  svg += head;
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Axis ticks: whole decades on log axes, 5 even divisions otherwise.
  auto emit_ticks = [&](bool horizontal) {
    const bool lg = horizontal ? plot.log_x : plot.log_y;
    const double lo = horizontal ? x_lo : y_lo;
    const double hi = horizontal ? x_hi : y_hi;
    std::vector<double> ticks;
    if (lg) {
      for (int d = static_cast<int>(std::ceil(lo)); d <= static_cast<int>(std::floor(hi)); ++d)
        ticks.push_back(d);
      if (ticks.empty()) ticks = {lo, hi};
    } else {
      for (int i = 0; i <= 5; ++i) ticks.push_back(lo + (hi - lo) * i / 5.0);
    }
    for (double t : ticks) {
      double label_value = lg ? std::pow(10.0, t) : t;
      if (horizontal) {
        double x = px(t);
        svg += "<line x1=\"" + detail::fmt_coord(x) + "\" y1=\"" + detail::fmt_coord(mt) +
               "\" x2=\"" + detail::fmt_coord(x) + "\" y2=\"" + detail::fmt_coord(mt + ph) +
               "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + detail::fmt_coord(x) + "\" y=\"" +
               detail::fmt_coord(mt + ph + 18) +
               "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" +
               detail::fmt_tick(label_value) + "</text>\n";
      } else {
        double y = py(t);
        svg += "<line x1=\"" + detail::fmt_coord(ml) + "\" y1=\"" + detail::fmt_coord(y) +
               "\" x2=\"" + detail::fmt_coord(ml + pw) + "\" y2=\"" + detail::fmt_coord(y) +
               "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + detail::fmt_coord(ml - 6) + "\" y=\"" +
               detail::fmt_coord(y + 4) +
               "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" +
               detail::fmt_tick(label_value) + "</text>\n";
      }
    }
  };
  emit_ticks(true);
  emit_ticks(false);

  svg += "<rect x=\"" + detail::fmt_coord(ml) + "\" y=\"" + detail::fmt_coord(mt) +
         "\" width=\"" + detail::fmt_coord(pw) + "\" height=\"" + detail::fmt_coord(ph) +
         "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

  for (size_t k = 0; k < plot.series.size(); ++k) {
    const auto& s = plot.series[k];
    std::string points;
    for (size_t i = 0; i < s.x.size(); ++i) {
      double tx = transform(s.x[i], plot.log_x);
      double ty = transform(s.y[i], plot.log_y);
      if (!std::isfinite(tx) || !std::isfinite(ty)) continue;
      if (!points.empty()) points += ' ';
      points += detail::fmt_coord(px(tx)) + "," + detail::fmt_coord(py(ty));
    }
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += palette[k % n_colors];
    svg += "\" stroke-width=\"1.5\"";
    if (s.dashed) svg += " stroke-dasharray=\"6,4\"";
    svg += " points=\"" + points + "\"/>\n";
  }

  // Legend, top-right inside the plot box.
  double ly = mt + 16;
  for (size_t k = 0; k < plot.series.size(); ++k) {
    const auto& s = plot.series[k];
    if (s.label.empty()) continue;
    double lx = ml + pw - 170;
    svg += "<line x1=\"" + detail::fmt_coord(lx) + "\" y1=\"" + detail::fmt_coord(ly - 4) +
           "\" x2=\"" + detail::fmt_coord(lx + 26) + "\" y2=\"" + detail::fmt_coord(ly - 4) +
           "\" stroke=\"";
    svg += palette[k % n_colors];
    svg += "\" stroke-width=\"1.5\"";
    if (s.dashed) svg += " stroke-dasharray=\"6,4\"";
    svg += "/>\n";
    svg += "<text x=\"" + detail::fmt_coord(lx + 32) + "\" y=\"" + detail::fmt_coord(ly) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + detail::xml_escape(s.label) +
           "</text>\n";
    ly += 16;
  }

  if (!plot.title.empty())
    svg += "<text x=\"" + detail::fmt_coord(ml + pw / 2) + "\" y=\"24\" "
           "font-family=\"sans-serif\" font-size=\"15\" text-anchor=\"middle\">" +
           detail::xml_escape(plot.title) + "</text>\n";
  svg += "<text x=\"" + detail::fmt_coord(ml + pw / 2) + "\" y=\"" +
         detail::fmt_coord(mt + ph + 38) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" +
         detail::xml_escape(plot.x_label) + "</text>\n";
  svg += "<text x=\"16\" y=\"" + detail::fmt_coord(mt + ph / 2) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 16 " +
         detail::fmt_coord(mt + ph / 2) + ")\">" + detail::xml_escape(plot.y_label) +
         "</text>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace excitrap
