// Copyright 2026 The Prunekit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "svg_plot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string_view>

namespace prunekit::cli {
namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 64.0;
constexpr double kRight = 24.0;
constexpr double kTop = 44.0;
constexpr double kBottom = 56.0;

std::string Fixed(double value, int precision) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::fixed, precision);
  std::string text(buf, res.ptr);
  if (text == "-0" || text == "-0.0") text.erase(0, 1);
  return text;
}

std::string Escape(std::string_view text) {
  std::string out;
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axes {
  double y_lo = 0.0;
  double y_hi = 1.0;

  double X(double ratio) const { return kLeft + ratio * (kWidth - kLeft - kRight); }
  double Y(double acc) const {
    return kTop + (y_hi - acc) / (y_hi - y_lo) * (kHeight - kTop - kBottom);
  }
};

Axes FitAxes(const TrajectoryReport& report) {
  double lo = report.baseline_accuracy;
  double hi = report.baseline_accuracy;
  for (const double a : report.accuracy) {
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  Axes axes;
  axes.y_lo = std::max(0.0, std::floor((lo - 0.02) * 20.0) / 20.0);
  axes.y_hi = std::min(1.0, std::ceil((hi + 0.02) * 20.0) / 20.0);
  if (axes.y_hi - axes.y_lo < 0.1) {
    axes.y_lo = std::max(0.0, axes.y_hi - 0.1);
    axes.y_hi = axes.y_lo + 0.1;
  }
  return axes;
}

}  // namespace

std::string RenderTrajectorySvg(const TrajectoryReport& report) {
  const Axes axes = FitAxes(report);
  const double x0 = axes.X(0.0);
  const double x1 = axes.X(1.0);
  const double y0 = axes.Y(axes.y_lo);
  const double y1 = axes.Y(axes.y_hi);

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + Fixed(kWidth, 0) +
         "\" height=\"" + Fixed(kHeight, 0) + "\" viewBox=\"0 0 " + Fixed(kWidth, 0) +
         " " + Fixed(kHeight, 0) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + Fixed(kWidth / 2, 1) + "\" y=\"24\" text-anchor=\"middle\" "
         "font-size=\"14\">" +
         Escape(report.method + " / " + report.mode) + "</text>\n";

  // Grid and tick labels.
  for (int i = 0; i <= 5; ++i) {
    const double ratio = i / 5.0;
    const double x = axes.X(ratio);
    svg += "<line x1=\"" + Fixed(x, 1) + "\" y1=\"" + Fixed(y0, 1) + "\" x2=\"" +
           Fixed(x, 1) + "\" y2=\"" + Fixed(y1, 1) + "\" stroke=\"#e0e0e0\"/>\n";
    svg += "<text x=\"" + Fixed(x, 1) + "\" y=\"" + Fixed(y0 + 18, 1) +
           "\" text-anchor=\"middle\">" + Fixed(ratio * 100, 0) + "%</text>\n";
  }
  for (int i = 0; i <= 5; ++i) {
    const double acc = axes.y_lo + (axes.y_hi - axes.y_lo) * i / 5.0;
    const double y = axes.Y(acc);
    svg += "<line x1=\"" + Fixed(x0, 1) + "\" y1=\"" + Fixed(y, 1) + "\" x2=\"" +
           Fixed(x1, 1) + "\" y2=\"" + Fixed(y, 1) + "\" stroke=\"#e0e0e0\"/>\n";
    svg += "<text x=\"" + Fixed(x0 - 8, 1) + "\" y=\"" + Fixed(y + 4, 1) +
           "\" text-anchor=\"end\">" + Fixed(acc * 100, 1) + "</text>\n";
  }
  svg += "<rect x=\"" + Fixed(x0, 1) + "\" y=\"" + Fixed(y1, 1) + "\" width=\"" +
         Fixed(x1 - x0, 1) + "\" height=\"" + Fixed(y0 - y1, 1) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  svg += "<text x=\"" + Fixed((x0 + x1) / 2, 1) + "\" y=\"" + Fixed(kHeight - 12, 1) +
         "\" text-anchor=\"middle\">source pruning ratio</text>\n";
  svg += "<text transform=\"translate(16 " + Fixed((y0 + y1) / 2, 1) +
         ") rotate(-90)\" text-anchor=\"middle\">test accuracy (%)</text>\n";

  const double yb = axes.Y(report.baseline_accuracy);
  svg += "<line x1=\"" + Fixed(x0, 1) + "\" y1=\"" + Fixed(yb, 1) + "\" x2=\"" +
         Fixed(x1, 1) + "\" y2=\"" + Fixed(yb, 1) +
         "\" stroke=\"#888888\" stroke-dasharray=\"6 4\"/>\n";

  std::string points;
  for (std::size_t i = 0; i < report.ratios.size(); ++i) {
    if (i > 0) points += ' ';
    points += Fixed(axes.X(report.ratios[i]), 1) + "," + Fixed(axes.Y(report.accuracy[i]), 1);
  }
  svg += "<polyline points=\"" + points +
         "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
  for (std::size_t i = 0; i < report.ratios.size(); ++i) {
    const bool wins = std::find(report.winning.begin(), report.winning.end(),
                                report.ratios[i]) != report.winning.end();
    svg += "<circle cx=\"" + Fixed(axes.X(report.ratios[i]), 1) + "\" cy=\"" +
           Fixed(axes.Y(report.accuracy[i]), 1) + "\" r=\"4\" stroke=\"#1f77b4\" fill=\"" +
           (wins ? "#1f77b4" : "white") + "\"/>\n";
  }
  if (report.best_winning) {
    svg += "<text x=\"" + Fixed(x1 - 4, 1) + "\" y=\"" + Fixed(y1 + 16, 1) +
           "\" text-anchor=\"end\">best winning ratio " +
           Fixed(*report.best_winning * 100, 1) + "%</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace prunekit::cli
