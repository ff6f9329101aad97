#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fakeval/predictions.hpp"

namespace fakeval {

struct RocPoint {
  double threshold = 0.0;
  double fpr = 0.0;
  double tpr = 0.0;
  std::int64_t fp = 0;
  std::int64_t tp = 0;
};

// Step ROC over every distinct observed score plus one sentinel above the
// maximum score, (0,0), and one below the minimum, (1,1). Points are in
// ascending fpr, ties by ascending tpr, remaining ties by descending
// threshold.
struct RocCurve {
  std::vector<RocPoint> points;
  std::int64_t positives = 0;
  std::int64_t negatives = 0;
  double auc = 0.0;
};

inline constexpr double kSentinelOffset = 1.0;

RocCurve build_roc(const PredictionSet& set);

// Trapezoidal area under the curve. Throws InvalidCurve for a curve that
// is empty, unordered, or does not span (0,0) to (1,1).
double auc(const RocCurve& curve);

struct IdealThreshold {
  double threshold = 0.0;
  RocPoint point;
  double distance = 0.0;  // Euclidean distance to (fpr=0, tpr=1)
  // No point beats the trivial endpoints (distance 1).
  bool degenerate = false;
};

// Sweep threshold whose point is closest to the top-left corner. Ties are
// broken by lower fpr, then by higher threshold. Distances are compared
// exactly in integer arithmetic.
IdealThreshold ideal_threshold(const RocCurve& curve);

// Operating point produced by an arbitrary threshold, read off the curve:
// the point of the smallest sweep threshold that is >= t.
RocPoint roc_point_at(const RocCurve& curve, double threshold);

inline constexpr const char* kRocCsvHeader = "threshold,fpr,tpr";

std::string roc_csv(const RocCurve& curve);

}  // namespace fakeval
