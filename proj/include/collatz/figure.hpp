#pragma once

// SVG rendering of a suffix-line family: one labeled polyline per trace
// position, optional dashed verticals at witness abscissas 2^a. Coordinates
// come from exact rationals and are printed with six decimals, so output is
// byte-stable across runs.

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "collatz/arith.hpp"
#include "collatz/errors.hpp"
#include "collatz/line_geometry.hpp"
#include "collatz/type_algebra.hpp"

namespace collatz {

// Largest witness exponent the plot accepts; 2^40 still sits comfortably
// inside double precision for pixel mapping.
inline constexpr unsigned long kMaxPlotExponent = 40;

namespace detail {

inline std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace detail

inline std::string figure_svg(const TraceType& sigma, const std::vector<Int>& witnesses = {}) {
  const LineFamily fam = suffix_lines(sigma);
  const int n = static_cast<int>(fam.size());

  const Rat x_max = n >= 2 ? max_intersection_abscissa(fam) : Rat(0);
  double t_hi = 1.2 * x_max.get_d();
  std::vector<double> wit_ts;
  for (const Int& a : witnesses) {
    if (a < 1 || a > static_cast<long>(kMaxPlotExponent))
      throw Error("figure: witness exponent must be in 1.." + std::to_string(kMaxPlotExponent));
    wit_ts.push_back(Rat(pow2(a.get_ui())).get_d());
  }
  if (!wit_ts.empty())
    t_hi = std::max(t_hi, 1.1 * *std::min_element(wit_ts.begin(), wit_ts.end()));
  if (t_hi <= 0) t_hi = 10.0;  // degenerate family with no crossings or witnesses

  double y_lo = 0.0, y_hi = 1.0;
  for (const auto& l : fam.lines) {
    y_lo = std::min(y_lo, l.value_at(Rat(0)).get_d());
    y_hi = std::max(y_hi, l.value_at(make_rat(Int(static_cast<long>(t_hi * 1000000)), Int(1000000))).get_d());
  }
  const double y_pad = 0.05 * (y_hi - y_lo);
  y_lo -= y_pad;
  y_hi += y_pad;

  const double W = 880, H = 620, M = 50;
  auto px = [&](double t) { return M + t / t_hi * (W - 2 * M); };
  auto py = [&](double y) { return H - M - (y - y_lo) / (y_hi - y_lo) * (H - 2 * M); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 880 620\" "
         "font-family=\"sans-serif\">\n";
  svg += "  <style>\n"
         "    .family { fill: none; stroke: #1f6feb; stroke-width: 1.5; }\n"
         "    .axis { stroke: #999999; stroke-width: 1; }\n"
         "    .witness { stroke: #c0392b; stroke-width: 1.2; stroke-dasharray: 6 4; }\n"
         "    .label { font-size: 13px; fill: #1f2328; }\n"
         "    .tick { font-size: 11px; fill: #57606a; }\n"
         "  </style>\n";
  svg += "  <rect width=\"880\" height=\"620\" fill=\"#ffffff\"/>\n";

  // axes: t = 0 and, if visible, y = 0
  svg += "  <line class=\"axis\" x1=\"" + detail::fmt6(px(0)) + "\" y1=\"" +
         detail::fmt6(py(y_lo)) + "\" x2=\"" + detail::fmt6(px(0)) + "\" y2=\"" +
         detail::fmt6(py(y_hi)) + "\"/>\n";
  if (y_lo < 0 && y_hi > 0)
    svg += "  <line class=\"axis\" x1=\"" + detail::fmt6(px(0)) + "\" y1=\"" +
           detail::fmt6(py(0)) + "\" x2=\"" + detail::fmt6(px(t_hi)) + "\" y2=\"" +
           detail::fmt6(py(0)) + "\"/>\n";

  for (const Int& a : witnesses) {
    double t = Rat(pow2(a.get_ui())).get_d();
    if (t > t_hi) continue;  // witness beyond the plotted span
    svg += "  <line class=\"witness\" x1=\"" + detail::fmt6(px(t)) + "\" y1=\"" +
           detail::fmt6(py(y_lo)) + "\" x2=\"" + detail::fmt6(px(t)) + "\" y2=\"" +
           detail::fmt6(py(y_hi)) + "\"/>\n";
    svg += "  <text class=\"tick\" x=\"" + detail::fmt6(px(t) + 4) + "\" y=\"" +
           detail::fmt6(py(y_hi) + 14) + "\">t=2^" + a.get_str() + "</text>\n";
  }

  const Rat t_hi_rat = make_rat(Int(static_cast<long>(t_hi * 1000000)), Int(1000000));
  for (int i = 0; i < n; ++i) {
    const auto& l = fam.lines[i];
    double y0 = l.value_at(Rat(0)).get_d();
    double y1 = l.value_at(t_hi_rat).get_d();
    svg += "  <polyline class=\"family\" points=\"" + detail::fmt6(px(0)) + "," +
           detail::fmt6(py(y0)) + " " + detail::fmt6(px(t_hi)) + "," + detail::fmt6(py(y1)) +
           "\"/>\n";
    svg += "  <text class=\"label\" x=\"" + detail::fmt6(px(t_hi) + 6) + "\" y=\"" +
           detail::fmt6(py(y1) + 4) + "\">" + std::to_string(i + 1) + "</text>\n";
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace collatz
