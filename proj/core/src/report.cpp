#include "fakeval/report.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "fakeval/csv.hpp"
#include "fakeval/error.hpp"
#include "fakeval/svg.hpp"

namespace fakeval {

EvaluationReport evaluate(const PredictionSet& set) {
  require_non_empty(set);
  EvaluationReport r;
  r.records = set.size();
  r.positives = set.positives();
  r.negatives = set.negatives();

  r.roc = build_roc(set);
  r.auc = auc(r.roc);
  r.ideal = ideal_threshold(r.roc);

  const std::array<double, 3> requested{r.ideal.threshold - kThresholdOffset, r.ideal.threshold,
                                        r.ideal.threshold + kThresholdOffset};
  for (std::size_t i = 0; i < requested.size(); ++i) {
    const double th = std::clamp(requested[i], 0.0, 1.0);
    auto& row = r.table[i];
    row.requested = requested[i];
    row.clamped = th != requested[i];
    row.metrics = scalar_metrics(confusion(set, th), th);
  }
  // The ideal threshold is a sweep value; its own counts are reported
  // unclamped so they match the ROC point.
  r.ideal_counts = confusion(set, r.ideal.threshold);

  std::vector<double> pooled;
  pooled.reserve(set.size());
  for (const auto& rec : set.records()) pooled.push_back(rec.score);
  const KdeModel all(std::move(pooled));
  const auto classes = class_kdes(set);
  r.bandwidth_all = all.bandwidth();
  r.bandwidth_negative = classes.negative.bandwidth();
  r.bandwidth_positive = classes.positive.bandwidth();

  const auto grid = uniform_grid(kDefaultGridLo, kDefaultGridHi, kDefaultGridPoints);
  r.density_all = density_curve(all, grid, DensityTag::All);
  r.density_negative = density_curve(classes.negative, grid, DensityTag::Negative);
  r.density_positive = density_curve(classes.positive, grid, DensityTag::Positive);

  r.intersections = kde_intersections(classes.negative, classes.positive, kDefaultGridLo,
                                      kDefaultGridHi, kDefaultGridPoints);
  for (double x : r.intersections.crossings) {
    if (!r.nearest_crossing ||
        std::abs(x - r.ideal.threshold) < std::abs(*r.nearest_crossing - r.ideal.threshold)) {
      r.nearest_crossing = x;
    }
  }
  if (r.nearest_crossing) r.crossing_delta = std::abs(*r.nearest_crossing - r.ideal.threshold);
  return r;
}

std::string report_json(const EvaluationReport& r) {
  nlohmann::json j = nlohmann::json::object();
  j["records"] = r.records;
  j["positives"] = r.positives;
  j["negatives"] = r.negatives;
  j["auc"] = r.auc;
  j["ideal_threshold"] = r.ideal.threshold;
  j["ideal_fpr"] = r.ideal.point.fpr;
  j["ideal_tpr"] = r.ideal.point.tpr;
  j["ideal_distance"] = r.ideal.distance;
  j["ideal_degenerate"] = r.ideal.degenerate;
  j["tp"] = r.ideal_counts.tp;
  j["fp"] = r.ideal_counts.fp;
  j["tn"] = r.ideal_counts.tn;
  j["fn"] = r.ideal_counts.fn;
  static constexpr std::array<const char*, 3> kPrefix{"low", "ideal", "high"};
  for (std::size_t i = 0; i < r.table.size(); ++i) {
    const std::string p = kPrefix[i];
    const auto& row = r.table[i];
    j[p + "_threshold"] = row.metrics.threshold;
    j[p + "_clamped"] = row.clamped;
    j[p + "_accuracy"] = row.metrics.accuracy;
    j[p + "_precision"] = row.metrics.precision;
    j[p + "_recall"] = row.metrics.recall;
    j[p + "_f1"] = row.metrics.f1;
    j[p + "_fpr"] = row.metrics.fpr;
    j[p + "_tpr"] = row.metrics.tpr;
    j[p + "_no_positive_predictions"] = row.metrics.no_positive_predictions;
  }
  j["bandwidth_all"] = r.bandwidth_all;
  j["bandwidth_f0"] = r.bandwidth_negative;
  j["bandwidth_f1"] = r.bandwidth_positive;
  j["kde_crossing_count"] = r.intersections.crossings.size();
  j["kde_indistinguishable"] = r.intersections.indistinguishable;
  j["kde_nearest_crossing"] = r.nearest_crossing ? nlohmann::json(*r.nearest_crossing) : nullptr;
  j["intersection_vs_threshold_delta"] =
      r.crossing_delta ? nlohmann::json(*r.crossing_delta) : nullptr;
  return j.dump(2) + "\n";
}

void write_report(const EvaluationReport& r, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + out_dir.string() + ": " + ec.message());

  std::array<MetricsBundle, 3> rows{r.table[0].metrics, r.table[1].metrics, r.table[2].metrics};
  csv::write_file(out_dir / "metrics.csv", metrics_csv(rows));
  csv::write_file(out_dir / "roc.csv", roc_csv(r.roc));
  csv::write_file(out_dir / "kde.csv", kde_csv(r.density_all, r.density_negative, r.density_positive));
  const auto markers = standard_markers(r.ideal.threshold, kThresholdOffset);
  csv::write_file(out_dir / "roc.svg", render_roc_svg(r.roc, markers));
  csv::write_file(out_dir / "kde.svg", render_kde_svg(r.density_negative, r.density_positive, markers));
  csv::write_file(out_dir / "report.json", report_json(r));
}

}  // namespace fakeval
