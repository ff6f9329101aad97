#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "fakeval/predictions.hpp"

namespace fakeval {

// 1 iff score >= threshold. Both arguments must lie in [0,1].
int apply_threshold(double score, double threshold);

struct ConfusionCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;

  std::int64_t positives() const noexcept { return tp + fn; }
  std::int64_t negatives() const noexcept { return fp + tn; }
  std::int64_t total() const noexcept { return tp + fp + tn + fn; }

  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

// Tallies every record at the given threshold (score >= threshold is
// positive). The threshold may be any non-NaN real so that sweep
// sentinels outside [0,1] can be evaluated.
ConfusionCounts confusion(const PredictionSet& set, double threshold);

struct Rates {
  double fpr = 0.0;
  double tpr = 0.0;
};

// fpr = fp/N, tpr = tp/P. Throws DegenerateClass when P or N is zero.
Rates rates(const ConfusionCounts& c);

struct MetricsBundle {
  double threshold = 0.0;
  ConfusionCounts counts;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double fpr = 0.0;
  double tpr = 0.0;
  // Set when tp + fp == 0; precision and f1 are then reported as 0.
  bool no_positive_predictions = false;
};

MetricsBundle scalar_metrics(const ConfusionCounts& c, double threshold);

// Presentation rounding (Table-style, 4 decimals).
double round_to(double value, int decimals);

inline constexpr const char* kMetricsCsvHeader =
    "threshold,tp,fp,tn,fn,accuracy,precision,recall,f1,fpr,tpr";

std::string metrics_csv(std::span<const MetricsBundle> rows);

}  // namespace fakeval
