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

#ifndef MEMOPACE_PLOT_H_
#define MEMOPACE_PLOT_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace memopace {

struct SvgSeries {
  enum class Style { kPoints, kLine, kBars };

  std::string label;
  Style style = Style::kPoints;
  std::string color = "#333333";
  std::vector<std::pair<double, double>> points;
  double bar_width = 0.0;  // kBars only, in data units
};

struct SvgChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<SvgSeries> series;
  std::vector<std::pair<double, double>> x_bands;  // shaded x intervals
  std::optional<double> y_min;
  std::optional<double> y_max;
};

// Self-contained SVG document with axes, ticks, legend and every series.
std::string render_svg(const SvgChart& chart);

}  // namespace memopace

#endif  // MEMOPACE_PLOT_H_
