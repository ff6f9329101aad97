#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>

#include "fakeval/density.hpp"
#include "fakeval/metrics.hpp"
#include "fakeval/predictions.hpp"
#include "fakeval/roc.hpp"

namespace fakeval {

// Offset of the side columns of the metrics table around the ideal threshold.
inline constexpr double kThresholdOffset = 0.1;

struct ThresholdMetrics {
  double requested = 0.0;  // before clamping to [0,1]
  bool clamped = false;
  MetricsBundle metrics;
};

struct EvaluationReport {
  std::size_t records = 0;
  std::size_t positives = 0;
  std::size_t negatives = 0;

  RocCurve roc;
  double auc = 0.0;
  IdealThreshold ideal;
  ConfusionCounts ideal_counts;
  // ideal - 0.1, ideal, ideal + 0.1; each clamped to [0,1].
  std::array<ThresholdMetrics, 3> table;

  double bandwidth_all = 0.0;
  double bandwidth_negative = 0.0;
  double bandwidth_positive = 0.0;
  DensityCurve density_all;
  DensityCurve density_negative;
  DensityCurve density_positive;

  IntersectionResult intersections;
  std::optional<double> nearest_crossing;  // crossing closest to the ideal threshold
  std::optional<double> crossing_delta;    // |nearest_crossing - ideal threshold|
};

EvaluationReport evaluate(const PredictionSet& set);

// Flat key/value summary, keys sorted.
std::string report_json(const EvaluationReport& report);

// Writes metrics.csv, roc.csv, kde.csv, roc.svg, kde.svg and report.json
// into out_dir, creating it if needed.
void write_report(const EvaluationReport& report, const std::filesystem::path& out_dir);

}  // namespace fakeval
