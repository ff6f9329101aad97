#pragma once

#include <span>
#include <string>
#include <vector>

#include "fakeval/density.hpp"
#include "fakeval/roc.hpp"

namespace fakeval {

// Data-to-pixel transform of the plotting area inside the SVG viewBox.
struct PlotFrame {
  double width = 640.0;
  double height = 480.0;
  double margin_left = 60.0;
  double margin_right = 20.0;
  double margin_top = 20.0;
  double margin_bottom = 50.0;
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;

  double plot_width() const { return width - margin_left - margin_right; }
  double plot_height() const { return height - margin_top - margin_bottom; }
  double px(double x) const { return margin_left + (x - x_min) / (x_max - x_min) * plot_width(); }
  double py(double y) const {
    return margin_top + (1.0 - (y - y_min) / (y_max - y_min)) * plot_height();
  }
};

enum class MarkerStyle { Tick, DashedLine };

struct ThresholdMarker {
  double threshold = 0.5;
  std::string label;
  std::string color = "#000000";
  MarkerStyle style = MarkerStyle::Tick;
};

// Default threshold 0.5 (orange), ideal threshold (black, dashed) and the
// ideal +/- offset pair (green below, red above). Offsets are clamped to
// [0,1].
std::vector<ThresholdMarker> standard_markers(double ideal_threshold, double offset = 0.1);

// ROC polyline, chance diagonal, and each marker drawn at the operating
// point its threshold produces.
std::string render_roc_svg(const RocCurve& curve, std::span<const ThresholdMarker> markers);

// Both class densities with a legend; dashed markers become vertical lines,
// tick markers become short ticks on the x axis.
std::string render_kde_svg(const DensityCurve& negative, const DensityCurve& positive,
                           std::span<const ThresholdMarker> markers);

}  // namespace fakeval
