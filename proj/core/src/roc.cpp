#include "fakeval/roc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fakeval/csv.hpp"
#include "fakeval/error.hpp"

namespace fakeval {
namespace {

__extension__ typedef unsigned __int128 uint128;

void validate(const RocCurve& curve) {
  const auto& pts = curve.points;
  if (pts.size() < 2 || curve.positives <= 0 || curve.negatives <= 0) {
    throw Error(ErrorCode::InvalidCurve, "curve needs at least two points and both classes");
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    if (!(p.fpr >= 0.0 && p.fpr <= 1.0 && p.tpr >= 0.0 && p.tpr <= 1.0)) {
      throw Error(ErrorCode::InvalidCurve, "point outside the unit square");
    }
    if (i > 0) {
      const auto& q = pts[i - 1];
      if (p.fpr < q.fpr || (p.fpr == q.fpr && p.tpr < q.tpr)) {
        throw Error(ErrorCode::InvalidCurve, "points not ordered by (fpr, tpr)");
      }
    }
  }
  if (pts.front().fpr != 0.0 || pts.front().tpr != 0.0) {
    throw Error(ErrorCode::InvalidCurve, "curve does not start at (0,0)");
  }
  if (pts.back().fpr != 1.0 || pts.back().tpr != 1.0) {
    throw Error(ErrorCode::InvalidCurve, "curve does not end at (1,1)");
  }
}

double trapezoid(const std::vector<RocPoint>& pts) {
  double area = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    area += (pts[i].fpr - pts[i - 1].fpr) * (pts[i].tpr + pts[i - 1].tpr) * 0.5;
  }
  return area;
}

}  // namespace

RocCurve build_roc(const PredictionSet& set) {
  require_non_empty(set);
  RocCurve curve;
  curve.positives = static_cast<std::int64_t>(set.positives());
  curve.negatives = static_cast<std::int64_t>(set.negatives());
  if (curve.positives == 0 || curve.negatives == 0) {
    throw Error(ErrorCode::DegenerateClass, "ROC needs records of both classes");
  }

  const auto& recs = set.records();
  std::vector<std::size_t> order(recs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return recs[a].score > recs[b].score; });

  const double p = static_cast<double>(curve.positives);
  const double n = static_cast<double>(curve.negatives);
  auto point = [&](double th, std::int64_t fp, std::int64_t tp) {
    return RocPoint{th, static_cast<double>(fp) / n, static_cast<double>(tp) / p, fp, tp};
  };

  const double max_score = recs[order.front()].score;
  const double min_score = recs[order.back()].score;
  curve.points.reserve(recs.size() + 2);
  curve.points.push_back(point(max_score + kSentinelOffset, 0, 0));

  // Descending thresholds give non-decreasing (fpr, tpr).
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    const double th = recs[order[i]].score;
    while (i < order.size() && recs[order[i]].score == th) {
      recs[order[i]].label == 1 ? ++tp : ++fp;
      ++i;
    }
    curve.points.push_back(point(th, fp, tp));
  }
  curve.points.push_back(point(min_score - kSentinelOffset, fp, tp));
  curve.auc = trapezoid(curve.points);
  return curve;
}

double auc(const RocCurve& curve) {
  validate(curve);
  return trapezoid(curve.points);
}

IdealThreshold ideal_threshold(const RocCurve& curve) {
  validate(curve);
  const auto P = static_cast<uint128>(curve.positives);
  const auto N = static_cast<uint128>(curve.negatives);
  // Squared distance scaled by (N*P)^2: (fp*P)^2 + (fn*N)^2.
  auto key = [&](const RocPoint& pt) {
    const auto fp = static_cast<uint128>(pt.fp);
    const auto fn = static_cast<uint128>(curve.positives - pt.tp);
    return fp * fp * P * P + fn * fn * N * N;
  };

  const RocPoint* best = &curve.points.front();
  uint128 best_key = key(*best);
  for (const auto& pt : curve.points) {
    const uint128 k = key(pt);
    bool better = k < best_key;
    if (k == best_key) {
      better = pt.fp < best->fp || (pt.fp == best->fp && pt.threshold > best->threshold);
    }
    if (better) {
      best = &pt;
      best_key = k;
    }
  }

  IdealThreshold out;
  out.threshold = best->threshold;
  out.point = *best;
  out.distance = std::hypot(best->fpr, 1.0 - best->tpr);
  out.degenerate = best_key >= N * N * P * P;
  return out;
}

RocPoint roc_point_at(const RocCurve& curve, double threshold) {
  validate(curve);
  const RocPoint* found = nullptr;
  for (const auto& pt : curve.points) {
    if (pt.threshold >= threshold && (found == nullptr || pt.threshold < found->threshold)) {
      found = &pt;
    }
  }
  if (found == nullptr) {
    RocPoint origin = curve.points.front();
    origin.threshold = threshold;
    return origin;
  }
  return *found;
}

std::string roc_csv(const RocCurve& curve) {
  std::string out = kRocCsvHeader;
  out += '\n';
  for (const auto& pt : curve.points) {
    out += csv::format_double(pt.threshold) + ',' + csv::format_double(pt.fpr) + ',' +
           csv::format_double(pt.tpr) + '\n';
  }
  return out;
}

}  // namespace fakeval
