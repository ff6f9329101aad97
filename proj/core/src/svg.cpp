#include "fakeval/svg.hpp"

#include <algorithm>
#include <cstdio>

#include "fakeval/error.hpp"

namespace fakeval {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string fmt_threshold(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string header(const PlotFrame& f) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(f.width) + "\" height=\"" +
         num(f.height) + "\" viewBox=\"0 0 " + num(f.width) + " " + num(f.height) + "\">\n" +
         "<rect x=\"0\" y=\"0\" width=\"" + num(f.width) + "\" height=\"" + num(f.height) +
         "\" fill=\"#ffffff\"/>\n";
}

std::string axes(const PlotFrame& f, const std::string& x_label, const std::string& y_label,
                 int x_ticks, int y_ticks) {
  const double x0 = f.margin_left;
  const double x1 = f.margin_left + f.plot_width();
  const double y0 = f.margin_top + f.plot_height();
  const double y1 = f.margin_top;
  std::string s;
  s += "<g class=\"axes\" stroke=\"#000000\" stroke-width=\"1\" fill=\"none\">\n";
  s += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(x1) + "\" y2=\"" + num(y0) + "\"/>\n";
  s += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(x0) + "\" y2=\"" + num(y1) + "\"/>\n";
  s += "</g>\n<g class=\"tick-labels\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#000000\">\n";
  for (int i = 0; i <= x_ticks; ++i) {
    const double v = f.x_min + (f.x_max - f.x_min) * i / x_ticks;
    s += "<text x=\"" + num(f.px(v)) + "\" y=\"" + num(y0 + 15) + "\" text-anchor=\"middle\">" +
         fmt_threshold(v) + "</text>\n";
  }
  for (int i = 0; i <= y_ticks; ++i) {
    const double v = f.y_min + (f.y_max - f.y_min) * i / y_ticks;
    s += "<text x=\"" + num(x0 - 6) + "\" y=\"" + num(f.py(v) + 4) + "\" text-anchor=\"end\">" +
         fmt_threshold(v) + "</text>\n";
  }
  s += "<text x=\"" + num((x0 + x1) / 2) + "\" y=\"" + num(f.height - 10) +
       "\" text-anchor=\"middle\">" + x_label + "</text>\n";
  s += "<text x=\"15\" y=\"" + num((y0 + y1) / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 15 " +
       num((y0 + y1) / 2) + ")\">" + y_label + "</text>\n";
  s += "</g>\n";
  return s;
}

std::string polyline(const PlotFrame& f, const std::vector<double>& xs, const std::vector<double>& ys,
                     const std::string& color, const std::string& cls) {
  std::string s = "<polyline class=\"" + cls + "\" fill=\"none\" stroke=\"" + color +
                  "\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) s += ' ';
    s += num(f.px(xs[i])) + "," + num(f.py(ys[i]));
  }
  s += "\"/>\n";
  return s;
}

}  // namespace

std::vector<ThresholdMarker> standard_markers(double ideal_threshold, double offset) {
  const double ideal = std::clamp(ideal_threshold, 0.0, 1.0);
  return {
      {0.5, "th = 0.5", "#ff7f0e", MarkerStyle::Tick},
      {ideal, "ideal th = " + fmt_threshold(ideal), "#000000", MarkerStyle::DashedLine},
      {std::clamp(ideal - offset, 0.0, 1.0), "ideal - " + fmt_threshold(offset), "#2ca02c",
       MarkerStyle::Tick},
      {std::clamp(ideal + offset, 0.0, 1.0), "ideal + " + fmt_threshold(offset), "#d62728",
       MarkerStyle::Tick},
  };
}

std::string render_roc_svg(const RocCurve& curve, std::span<const ThresholdMarker> markers) {
  PlotFrame f;
  std::string s = header(f);
  s += axes(f, "false positive rate", "true positive rate", 5, 5);
  s += "<line class=\"chance\" x1=\"" + num(f.px(0)) + "\" y1=\"" + num(f.py(0)) + "\" x2=\"" +
       num(f.px(1)) + "\" y2=\"" + num(f.py(1)) +
       "\" stroke=\"#e6c200\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";
  std::vector<double> xs, ys;
  for (const auto& p : curve.points) {
    xs.push_back(p.fpr);
    ys.push_back(p.tpr);
  }
  s += polyline(f, xs, ys, "#1f77b4", "roc");
  for (const auto& m : markers) {
    const RocPoint p = roc_point_at(curve, m.threshold);
    s += "<circle class=\"marker\" cx=\"" + num(f.px(p.fpr)) + "\" cy=\"" + num(f.py(p.tpr)) +
         "\" r=\"4\" fill=\"" + (m.style == MarkerStyle::DashedLine ? std::string("none") : m.color) +
         "\" stroke=\"" + m.color + "\"" +
         (m.style == MarkerStyle::DashedLine ? " stroke-dasharray=\"2,2\"" : "") + "><title>" +
         m.label + "</title></circle>\n";
  }
  // Legend
  double ly = f.margin_top + f.plot_height() - 20.0 * static_cast<double>(markers.size() + 1);
  const double lx = f.margin_left + f.plot_width() * 0.55;
  s += "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<text x=\"" + num(lx) + "\" y=\"" + num(ly) + "\" fill=\"#1f77b4\">ROC (AUC = " +
       fmt_threshold(curve.auc) + ")</text>\n";
  for (const auto& m : markers) {
    ly += 20.0;
    s += "<text x=\"" + num(lx) + "\" y=\"" + num(ly) + "\" fill=\"" + m.color + "\">" + m.label +
         "</text>\n";
  }
  s += "</g>\n</svg>\n";
  return s;
}

std::string render_kde_svg(const DensityCurve& negative, const DensityCurve& positive,
                           std::span<const ThresholdMarker> markers) {
  if (negative.grid.empty() || negative.grid != positive.grid) {
    throw Error(ErrorCode::SizeMismatch, "density curves must share a non-empty grid");
  }
  double peak = 0.0;
  for (double v : negative.values) peak = std::max(peak, v);
  for (double v : positive.values) peak = std::max(peak, v);
  PlotFrame f;
  f.x_min = negative.grid.front();
  f.x_max = negative.grid.back();
  f.y_max = peak > 0.0 ? peak * 1.05 : 1.0;

  std::string s = header(f);
  s += axes(f, "raw prediction", "density", 6, 4);
  s += polyline(f, negative.grid, negative.values, "#1f77b4", "kde-negative");
  s += polyline(f, positive.grid, positive.values, "#ff7f0e", "kde-positive");
  const double base = f.margin_top + f.plot_height();
  for (const auto& m : markers) {
    const double x = f.px(m.threshold);
    if (m.style == MarkerStyle::DashedLine) {
      s += "<line class=\"marker\" x1=\"" + num(x) + "\" y1=\"" + num(base) + "\" x2=\"" + num(x) +
           "\" y2=\"" + num(f.margin_top) + "\" stroke=\"" + m.color +
           "\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"><title>" + m.label + "</title></line>\n";
    } else {
      s += "<line class=\"marker\" x1=\"" + num(x) + "\" y1=\"" + num(base) + "\" x2=\"" + num(x) +
           "\" y2=\"" + num(base - 8) + "\" stroke=\"" + m.color + "\" stroke-width=\"2\"><title>" +
           m.label + "</title></line>\n";
    }
  }
  const double lx = f.margin_left + f.plot_width() * 0.35;
  s += "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<text x=\"" + num(lx) + "\" y=\"" + num(f.margin_top + 15) +
       "\" fill=\"#1f77b4\">f0 (real, label 0)</text>\n";
  s += "<text x=\"" + num(lx) + "\" y=\"" + num(f.margin_top + 35) +
       "\" fill=\"#ff7f0e\">f1 (fake, label 1)</text>\n";
  s += "</g>\n</svg>\n";
  return s;
}

}  // namespace fakeval
