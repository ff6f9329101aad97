#include "fakeval/metrics.hpp"

#include <cmath>

#include "fakeval/csv.hpp"
#include "fakeval/error.hpp"

namespace fakeval {

int apply_threshold(double score, double threshold) {
  if (!(score >= 0.0 && score <= 1.0)) {
    throw Error(ErrorCode::ArgumentOutOfRange, "score " + csv::format_double(score) + " outside [0,1]");
  }
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::ArgumentOutOfRange,
                "threshold " + csv::format_double(threshold) + " outside [0,1]");
  }
  return score >= threshold ? 1 : 0;
}

ConfusionCounts confusion(const PredictionSet& set, double threshold) {
  require_non_empty(set);
  if (std::isnan(threshold)) throw Error(ErrorCode::ArgumentOutOfRange, "threshold is NaN");
  ConfusionCounts c;
  for (const auto& r : set.records()) {
    const bool predicted = r.score >= threshold;
    if (r.label == 1) {
      predicted ? ++c.tp : ++c.fn;
    } else {
      predicted ? ++c.fp : ++c.tn;
    }
  }
  return c;
}

Rates rates(const ConfusionCounts& c) {
  if (c.positives() == 0 || c.negatives() == 0) {
    throw Error(ErrorCode::DegenerateClass, "both classes must be present (P=" +
                                                std::to_string(c.positives()) + ", N=" +
                                                std::to_string(c.negatives()) + ")");
  }
  return {static_cast<double>(c.fp) / static_cast<double>(c.negatives()),
          static_cast<double>(c.tp) / static_cast<double>(c.positives())};
}

MetricsBundle scalar_metrics(const ConfusionCounts& c, double threshold) {
  const Rates r = rates(c);
  MetricsBundle m;
  m.threshold = threshold;
  m.counts = c;
  m.fpr = r.fpr;
  m.tpr = r.tpr;
  m.recall = r.tpr;
  m.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
  if (c.tp + c.fp == 0) {
    m.no_positive_predictions = true;
    m.precision = 0.0;
  } else {
    m.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  }
  // tp == 0 makes precision and recall both zero.
  m.f1 = c.tp == 0 ? 0.0 : 2.0 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

double round_to(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(value * scale) / scale;
}

std::string metrics_csv(std::span<const MetricsBundle> rows) {
  std::string out = kMetricsCsvHeader;
  out += '\n';
  for (const auto& m : rows) {
    out += csv::format_double(m.threshold) + ',' + std::to_string(m.counts.tp) + ',' +
           std::to_string(m.counts.fp) + ',' + std::to_string(m.counts.tn) + ',' +
           std::to_string(m.counts.fn) + ',' + csv::format_double(m.accuracy) + ',' +
           csv::format_double(m.precision) + ',' + csv::format_double(m.recall) + ',' +
           csv::format_double(m.f1) + ',' + csv::format_double(m.fpr) + ',' +
           csv::format_double(m.tpr) + '\n';
  }
  return out;
}

}  // namespace fakeval
