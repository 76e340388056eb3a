// Copyright 2026 The memopace Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "memopace/plot.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace memopace {
namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 64.0;
constexpr double kRight = 150.0;
constexpr double kTop = 36.0;
constexpr double kBottom = 52.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!std::isfinite(lo)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

}  // namespace

std::string render_svg(const SvgChart& chart) {
  Range xr, yr;
  for (const auto& s : chart.series) {
    for (const auto& [x, y] : s.points) {
      xr.add(x);
      if (s.style == SvgSeries::Style::kBars) {
        xr.add(x + s.bar_width);
        yr.add(0.0);
      }
      yr.add(y);
    }
  }
  for (const auto& [lo, hi] : chart.x_bands) {
    xr.add(lo);
    xr.add(hi);
  }
  if (chart.y_min) yr.add(*chart.y_min);
  if (chart.y_max) yr.add(*chart.y_max);
  xr.finish();
  yr.finish();
  if (chart.y_min) yr.lo = *chart.y_min;
  if (chart.y_max) yr.hi = *chart.y_max;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  auto py = [&](double y) {
    const double clamped = std::clamp(y, yr.lo, yr.hi);
    return kTop + (yr.hi - clamped) / (yr.hi - yr.lo) * plot_h;
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) +
         "\" height=\"" + num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) +
         " " + num(kHeight) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(kWidth / 2) + "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" +
         escape(chart.title) + "</text>\n";

  for (const auto& [lo, hi] : chart.x_bands) {
    svg += "<rect x=\"" + num(px(lo)) + "\" y=\"" + num(kTop) + "\" width=\"" +
           num(std::max(1.0, px(hi) - px(lo))) + "\" height=\"" + num(plot_h) +
           "\" fill=\"#f5d76e\" fill-opacity=\"0.4\"/>\n";
  }

  // Axes and ticks.
  svg += "<g stroke=\"black\" fill=\"none\">\n";
  svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop + plot_h) + "\" x2=\"" +
         num(kLeft + plot_w) + "\" y2=\"" + num(kTop + plot_h) + "\"/>\n";
  svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(kLeft) +
         "\" y2=\"" + num(kTop + plot_h) + "\"/>\n";
  svg += "</g>\n";
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double xv = xr.lo + (xr.hi - xr.lo) * i / kTicks;
    const double yv = yr.lo + (yr.hi - yr.lo) * i / kTicks;
    svg += "<line x1=\"" + num(px(xv)) + "\" y1=\"" + num(kTop + plot_h) + "\" x2=\"" +
           num(px(xv)) + "\" y2=\"" + num(kTop + plot_h + 4) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + num(px(xv)) + "\" y=\"" + num(kTop + plot_h + 16) +
           "\" text-anchor=\"middle\">" + tick_label(xv) + "</text>\n";
    svg += "<line x1=\"" + num(kLeft - 4) + "\" y1=\"" + num(py(yv)) + "\" x2=\"" +
           num(kLeft) + "\" y2=\"" + num(py(yv)) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(py(yv) + 4) +
           "\" text-anchor=\"end\">" + tick_label(yv) + "</text>\n";
  }
  svg += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"" + num(kHeight - 12) +
         "\" text-anchor=\"middle\">" + escape(chart.x_label) + "</text>\n";
  svg += "<text x=\"16\" y=\"" + num(kTop + plot_h / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " + num(kTop + plot_h / 2) +
         ")\">" + escape(chart.y_label) + "</text>\n";

  for (const auto& s : chart.series) {
    switch (s.style) {
      case SvgSeries::Style::kPoints:
        svg += "<g fill=\"" + s.color + "\" fill-opacity=\"0.6\">\n";
        for (const auto& [x, y] : s.points) {
          svg += "<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) + "\" r=\"2.5\"/>\n";
        }
        svg += "</g>\n";
        break;
      case SvgSeries::Style::kLine: {
        svg += "<polyline fill=\"none\" stroke=\"" + s.color +
               "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < s.points.size(); ++i) {
          if (i) svg += ' ';
          svg += num(px(s.points[i].first)) + "," + num(py(s.points[i].second));
        }
        svg += "\"/>\n";
        break;
      }
      case SvgSeries::Style::kBars:
        svg += "<g fill=\"" + s.color + "\" stroke=\"white\">\n";
        for (const auto& [x, y] : s.points) {
          const double x0 = px(x);
          const double x1 = px(x + s.bar_width);
          svg += "<rect x=\"" + num(x0) + "\" y=\"" + num(py(y)) + "\" width=\"" +
                 num(std::max(1.0, x1 - x0)) + "\" height=\"" + num(py(0.0) - py(y)) +
                 "\"/>\n";
        }
        svg += "</g>\n";
        break;
    }
  }

  // Legend.
  double ly = kTop + 8;
  for (const auto& s : chart.series) {
    if (s.label.empty()) continue;
    const double lx = kLeft + plot_w + 14;
    svg += "<rect x=\"" + num(lx) + "\" y=\"" + num(ly - 8) +
           "\" width=\"12\" height=\"8\" fill=\"" + s.color + "\"/>\n";
    svg += "<text x=\"" + num(lx + 18) + "\" y=\"" + num(ly) + "\">" + escape(s.label) +
           "</text>\n";
    ly += 16;
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace memopace
