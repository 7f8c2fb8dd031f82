#include "tldp/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace tldp {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
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

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!(lo < hi)) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

}  // namespace

std::string render_svg(std::span<const PlotSeries> series,
                       const PlotLabels& labels, int width, int height) {
  const int left = 80, right = 150, top = 40, bottom = 60;
  const double pw = width - left - right;
  const double ph = height - top - bottom;

  Range xr, yr;
  yr.include(0.0);
  for (const auto& s : series) {
    if (s.x.size() != s.y.size() || (!s.err.empty() && s.err.size() != s.y.size())) {
      throw std::invalid_argument("plot series '" + s.name + "' has mismatched lengths");
    }
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      xr.include(s.x[i]);
      const double e = s.err.empty() ? 0.0 : s.err[i];
      yr.include(s.y[i] + e);
      yr.include(s.y[i] - e);
    }
  }
  if (series.empty() || !std::isfinite(xr.lo)) xr = {0.0, 1.0};
  xr.pad();
  yr.pad();
  yr.hi += 0.05 * (yr.hi - yr.lo);

  const auto sx = [&](double v) { return left + (v - xr.lo) / (xr.hi - xr.lo) * pw; };
  const auto sy = [&](double v) { return top + ph - (v - yr.lo) / (yr.hi - yr.lo) * ph; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\">\n",
      width, height);
  out += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n",
                     width, height);
  out += "<style>.label{font-family:sans-serif;font-size:12px}"
         ".title{font-family:sans-serif;font-size:14px;font-weight:bold}</style>\n";
  out += fmt::format("<text class=\"title\" x=\"{}\" y=\"24\" text-anchor=\"middle\">{}</text>\n",
                     left + pw / 2, escape(labels.title));

  constexpr int ticks = 5;
  for (int k = 0; k <= ticks; ++k) {
    const double xv = xr.lo + (xr.hi - xr.lo) * k / ticks;
    const double yv = yr.lo + (yr.hi - yr.lo) * k / ticks;
    out += fmt::format(
        "<line x1=\"{0:.2f}\" y1=\"{1}\" x2=\"{0:.2f}\" y2=\"{2}\" stroke=\"#ddd\"/>\n",
        sx(xv), top, top + ph);
    out += fmt::format(
        "<line x1=\"{1}\" y1=\"{0:.2f}\" x2=\"{2}\" y2=\"{0:.2f}\" stroke=\"#ddd\"/>\n",
        sy(yv), left, left + pw);
    out += fmt::format(
        "<text class=\"label\" x=\"{:.2f}\" y=\"{}\" text-anchor=\"middle\">{:.4g}</text>\n",
        sx(xv), top + ph + 18, xv);
    out += fmt::format(
        "<text class=\"label\" x=\"{}\" y=\"{:.2f}\" text-anchor=\"end\">{:.4g}</text>\n",
        left - 6, sy(yv) + 4, yv);
  }
  out += fmt::format(
      "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
      left, top, pw, ph);
  out += fmt::format(
      "<text class=\"label\" x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
      left + pw / 2, height - 16, escape(labels.x_label));
  out += fmt::format(
      "<text class=\"label\" transform=\"translate(18,{}) rotate(-90)\" "
      "text-anchor=\"middle\">{}</text>\n",
      top + ph / 2, escape(labels.y_label));

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    std::string pts;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      pts += fmt::format("{}{:.2f},{:.2f}", i ? " " : "", sx(s.x[i]), sy(s.y[i]));
    }
    out += fmt::format(
        "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"{}\"/>\n",
        color, pts);
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double cx = sx(s.x[i]);
      out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"{}\"/>\n",
                         cx, sy(s.y[i]), color);
      if (s.err.empty() || s.err[i] <= 0.0) continue;
      const double y0 = sy(s.y[i] - s.err[i]);
      const double y1 = sy(s.y[i] + s.err[i]);
      out += fmt::format(
          "<path d=\"M{0:.2f},{1:.2f}V{2:.2f}M{3:.2f},{1:.2f}H{4:.2f}M{3:.2f},{2:.2f}H{4:.2f}\" "
          "stroke=\"{5}\" fill=\"none\"/>\n",
          cx, y0, y1, cx - 4, cx + 4, color);
    }
    const double ly = top + 16 + 18.0 * static_cast<double>(k);
    out += fmt::format(
        "<line x1=\"{0}\" y1=\"{1:.2f}\" x2=\"{2}\" y2=\"{1:.2f}\" stroke=\"{3}\" "
        "stroke-width=\"2\"/>\n",
        left + pw + 10, ly, left + pw + 30, color);
    out += fmt::format("<text class=\"label\" x=\"{}\" y=\"{:.2f}\">{}</text>\n",
                       left + pw + 36, ly + 4, escape(s.name));
  }
  out += "</svg>\n";
  return out;
}

std::vector<PlotSeries> series_from_summary(std::span<const SummaryRow> rows,
                                            Axis axis) {
  std::map<std::string, std::vector<const SummaryRow*>> groups;
  for (const auto& r : rows) groups[r.scenario + " " + r.policy].push_back(&r);
  std::vector<PlotSeries> out;
  for (auto& [name, members] : groups) {
    std::stable_sort(members.begin(), members.end(),
                     [axis](const SummaryRow* a, const SummaryRow* b) {
                       return axis_value(*a, axis) < axis_value(*b, axis);
                     });
    PlotSeries s;
    s.name = name;
    for (const auto* r : members) {
      s.x.push_back(axis_value(*r, axis));
      s.y.push_back(r->mean_regret);
      s.err.push_back(r->sd_regret);
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace tldp
