#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "tldp/harness.hpp"

namespace tldp {

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> err;  // half-height of the error bar; may be empty
};

struct PlotLabels {
  std::string title;
  std::string x_label;
  std::string y_label = "cumulative regret";
};

// Static line chart with optional error bars.
std::string render_svg(std::span<const PlotSeries> series,
                       const PlotLabels& labels, int width = 640,
                       int height = 420);

// One series per (scenario, policy) pair, sorted by the axis value, with
// sd error bars.
std::vector<PlotSeries> series_from_summary(std::span<const SummaryRow> rows,
                                            Axis axis);

}  // namespace tldp
