#include "setlab/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "setlab/slln_lab.hpp"

namespace setlab {

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 80, kRight = 160, kTop = 40, kBottom = 60;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

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
  double lo, hi;
  void widen() {
    if (hi - lo < 1e-9) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

}  // namespace

std::string render_svg(const std::vector<CsvRow>& rows, const std::string& title) {
  if (rows.empty()) throw CsvError("no trajectories to plot");

  // Experiments and trajectories in order of first appearance.
  std::vector<std::string> experiments;
  std::vector<std::pair<std::size_t, std::string>> trajectories;
  std::map<std::pair<std::size_t, std::string>, std::vector<std::pair<double, double>>> points;
  std::map<std::size_t, std::map<std::int64_t, std::vector<double>>> by_n;
  for (const auto& r : rows) {
    auto e = std::find(experiments.begin(), experiments.end(), r.experiment_id);
    if (e == experiments.end()) e = experiments.insert(e, r.experiment_id);
    const auto ei = static_cast<std::size_t>(e - experiments.begin());
    const auto key = std::make_pair(ei, r.trajectory_id);
    if (!points.count(key)) trajectories.push_back(key);
    auto& pts = points[key];
    by_n[ei][r.n].push_back(r.distance);
    if (r.distance > 0) pts.emplace_back(std::log10(static_cast<double>(r.n)), std::log10(r.distance));
  }

  bool any = false;
  Range x{0, 0}, y{0, 0};
  for (const auto& [key, pts] : points) {
    for (const auto& [px, py] : pts) {
      if (!any) {
        x = {px, px};
        y = {py, py};
        any = true;
      }
      x.lo = std::min(x.lo, px);
      x.hi = std::max(x.hi, px);
      y.lo = std::min(y.lo, py);
      y.hi = std::max(y.hi, py);
    }
  }
  x.widen();
  y.widen();
  y.lo = std::floor(y.lo);
  y.hi = std::ceil(y.hi);
  const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
  auto sx = [&](double v) { return kLeft + (v - x.lo) / (x.hi - x.lo) * plot_w; };
  auto sy = [&](double v) { return kTop + (y.hi - v) / (y.hi - y.lo) * plot_h; };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) + "\" height=\"" +
       fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) + " " + fmt(kHeight) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + fmt(kLeft) + "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" +
       escape(title) + "</text>\n";
  s += "<rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" + fmt(plot_w) +
       "\" height=\"" + fmt(plot_h) + "\" fill=\"none\" stroke=\"#444\"/>\n";

  // Decade ticks.
  for (double t = std::ceil(x.lo); t <= x.hi + 1e-9; t += 1) {
    s += "<line x1=\"" + fmt(sx(t)) + "\" y1=\"" + fmt(kTop + plot_h) + "\" x2=\"" + fmt(sx(t)) +
         "\" y2=\"" + fmt(kTop + plot_h + 5) + "\" stroke=\"#444\"/>\n";
    s += "<text x=\"" + fmt(sx(t)) + "\" y=\"" + fmt(kTop + plot_h + 20) +
         "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">1e" +
         std::to_string(static_cast<int>(t)) + "</text>\n";
  }
  for (double t = y.lo; t <= y.hi + 1e-9; t += 1) {
    s += "<line x1=\"" + fmt(kLeft - 5) + "\" y1=\"" + fmt(sy(t)) + "\" x2=\"" + fmt(kLeft) +
         "\" y2=\"" + fmt(sy(t)) + "\" stroke=\"#444\"/>\n";
    s += "<text x=\"" + fmt(kLeft - 8) + "\" y=\"" + fmt(sy(t) + 4) +
         "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">1e" +
         std::to_string(static_cast<int>(t)) + "</text>\n";
  }
  s += "<text x=\"" + fmt(kLeft + plot_w / 2) + "\" y=\"" + fmt(kHeight - 15) +
       "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">n</text>\n";
  s += "<text x=\"20\" y=\"" + fmt(kTop + plot_h / 2) + "\" font-family=\"sans-serif\" font-size=\"12\" "
       "text-anchor=\"middle\" transform=\"rotate(-90 20 " + fmt(kTop + plot_h / 2) + ")\">distance</text>\n";
  if (!any)
    s += "<text x=\"" + fmt(kLeft + plot_w / 2) + "\" y=\"" + fmt(kTop + plot_h / 2) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">all distances are zero</text>\n";

  auto polyline = [&](const std::vector<std::pair<double, double>>& pts, const std::string& colour,
                      const std::string& opacity, const std::string& stroke_width) {
    if (pts.empty()) return;
    if (pts.size() == 1) {
      s += "<circle cx=\"" + fmt(sx(pts[0].first)) + "\" cy=\"" + fmt(sy(pts[0].second)) +
           "\" r=\"2\" fill=\"" + colour + "\" fill-opacity=\"" + opacity + "\"/>\n";
      return;
    }
    std::string coords;
    for (const auto& [px, py] : pts) coords += (coords.empty() ? "" : " ") + fmt(sx(px)) + "," + fmt(sy(py));
    s += "<polyline fill=\"none\" stroke=\"" + colour + "\" stroke-opacity=\"" + opacity +
         "\" stroke-width=\"" + stroke_width + "\" points=\"" + coords + "\"/>\n";
  };
  for (const auto& key : trajectories)
    polyline(points[key], kPalette[key.first % std::size(kPalette)], "0.35", "1");
  for (std::size_t e = 0; e < experiments.size(); ++e) {
    std::vector<std::pair<double, double>> med;
    for (const auto& [n, values] : by_n[e]) {
      const double m = quantile(values, 0.5);
      if (m > 0) med.emplace_back(std::log10(static_cast<double>(n)), std::log10(m));
    }
    const std::string colour = kPalette[e % std::size(kPalette)];
    polyline(med, colour, "1", "2.5");
    const double ly = kTop + 10 + 18 * static_cast<double>(e);
    s += "<line x1=\"" + fmt(kWidth - kRight + 12) + "\" y1=\"" + fmt(ly) + "\" x2=\"" +
         fmt(kWidth - kRight + 32) + "\" y2=\"" + fmt(ly) + "\" stroke=\"" + colour +
         "\" stroke-width=\"2.5\"/>\n";
    s += "<text x=\"" + fmt(kWidth - kRight + 36) + "\" y=\"" + fmt(ly + 4) +
         "\" font-family=\"sans-serif\" font-size=\"11\">" + escape(experiments[e]) + " (median)</text>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace setlab
