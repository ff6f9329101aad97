// fakeval: evaluation and dataset tooling for binary real/fake classifiers.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fakeval/archaudit.hpp"
#include "fakeval/csv.hpp"
#include "fakeval/curation.hpp"
#include "fakeval/density.hpp"
#include "fakeval/error.hpp"
#include "fakeval/image.hpp"
#include "fakeval/metrics.hpp"
#include "fakeval/predictions.hpp"
#include "fakeval/report.hpp"
#include "fakeval/roc.hpp"
#include "fakeval/svg.hpp"
#include "fakeval/traindyn.hpp"

namespace fs = std::filesystem;
using namespace fakeval;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    csv::write_file(path, content);
  }
}

std::set<std::string> read_exclusions(const std::string& path) {
  std::set<std::string> ids;
  for (auto line : csv::lines(csv::read_file(path))) {
    if (!line.empty()) ids.emplace(line);
  }
  return ids;
}

int run_eval(const std::string& predictions, const std::string& out) {
  const auto set = load_predictions(predictions);
  const auto report = evaluate(set);
  write_report(report, out);
  std::cout << "records=" << report.records << " auc=" << csv::format_double(report.auc)
            << " ideal_threshold=" << csv::format_double(report.ideal.threshold) << "\n";
  return kExitOk;
}

int run_metrics(const std::string& predictions, std::vector<double> thresholds,
                const std::string& out) {
  const auto set = load_predictions(predictions);
  std::vector<MetricsBundle> rows;
  for (double th : thresholds) {
    if (!(th >= 0.0 && th <= 1.0)) {
      throw Error(ErrorCode::ArgumentOutOfRange, "threshold outside [0,1]");
    }
    rows.push_back(scalar_metrics(confusion(set, th), th));
  }
  emit(out, metrics_csv(rows));
  return kExitOk;
}

int run_roc(const std::string& predictions, const std::string& out, const std::string& svg,
            const std::vector<double>& marker_thresholds) {
  const auto set = load_predictions(predictions);
  const auto curve = build_roc(set);
  const auto ideal = ideal_threshold(curve);
  emit(out, roc_csv(curve));
  if (!svg.empty()) {
    std::vector<ThresholdMarker> markers;
    if (marker_thresholds.empty()) {
      markers = standard_markers(ideal.threshold, kThresholdOffset);
    } else {
      for (double t : marker_thresholds) markers.push_back({t, "th = " + csv::format_double(t)});
    }
    csv::write_file(svg, render_roc_svg(curve, markers));
  }
  std::cerr << "auc=" << csv::format_double(curve.auc)
            << " ideal_threshold=" << csv::format_double(ideal.threshold)
            << " distance=" << csv::format_double(ideal.distance)
            << (ideal.degenerate ? " degenerate" : "") << "\n";
  return kExitOk;
}

int run_kde(const std::string& predictions, const std::string& out, const std::string& svg,
            int grid_n, double lo, double hi) {
  const auto set = load_predictions(predictions);
  const auto classes = class_kdes(set);
  std::vector<double> pooled;
  for (const auto& r : set.records()) pooled.push_back(r.score);
  const KdeModel all(std::move(pooled));
  const auto grid = uniform_grid(lo, hi, grid_n);
  const auto c_all = density_curve(all, grid, DensityTag::All);
  const auto c0 = density_curve(classes.negative, grid, DensityTag::Negative);
  const auto c1 = density_curve(classes.positive, grid, DensityTag::Positive);
  emit(out, kde_csv(c_all, c0, c1));
  const auto crossings = kde_intersections(classes.negative, classes.positive, lo, hi, grid_n);
  if (!svg.empty()) {
    const auto ideal = ideal_threshold(build_roc(set));
    const auto markers = standard_markers(ideal.threshold, kThresholdOffset);
    csv::write_file(svg, render_kde_svg(c0, c1, markers));
  }
  std::cerr << "h0=" << csv::format_double(classes.negative.bandwidth())
            << " h1=" << csv::format_double(classes.positive.bandwidth()) << " crossings=";
  if (crossings.indistinguishable) std::cerr << "indistinguishable";
  for (std::size_t i = 0; i < crossings.crossings.size(); ++i) {
    std::cerr << (i ? ";" : "") << csv::format_double(crossings.crossings[i]);
  }
  std::cerr << "\n";
  return kExitOk;
}

int run_split(const std::string& manifest_path, const std::string& out, std::uint64_t seed,
              const std::vector<double>& ratios, const std::string& exclude, bool purge) {
  if (ratios.size() != 3) throw Error(ErrorCode::BadRatios, "--ratios takes three values");
  Manifest manifest = load_manifest(manifest_path);
  if (!exclude.empty()) manifest = apply_exclusions(manifest, read_exclusions(exclude));
  auto assignment = initial_split(manifest, {ratios[0], ratios[1], ratios[2]}, seed);
  if (purge) assignment = purge_leakage(assignment, manifest);

  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + out);
  csv::write_file(fs::path(out) / "split.csv", split_csv(assignment));
  csv::write_file(fs::path(out) / "purge_log.csv", purge_log_csv(assignment));
  const auto report = split_report(assignment, manifest);
  csv::write_file(fs::path(out) / "split_report.csv", split_report_csv(report));
  std::cout << split_report_csv(report);
  return kExitOk;
}

int run_frames(const std::string& manifest_path, const std::string& out) {
  const Manifest manifest = load_manifest(manifest_path);
  // Timestamped rows are grouped per video and sorted; others pass through.
  std::map<std::string, std::vector<ManifestRow>> videos;
  Manifest selected;
  for (const auto& row : manifest) {
    if (row.timestamp_ms) {
      videos[row.group_id].push_back(row);
    } else {
      selected.push_back(row);
    }
  }
  for (auto& [group, frames] : videos) {
    std::stable_sort(frames.begin(), frames.end(), [](const auto& a, const auto& b) {
      return *a.timestamp_ms < *b.timestamp_ms;
    });
    auto picked = select_frames(frames);
    selected.insert(selected.end(), picked.begin(), picked.end());
  }
  emit(out, serialize_manifest(selected));
  return kExitOk;
}

int run_crop(const std::string& in, const std::string& out, const std::vector<int>& bbox, int size) {
  if (bbox.size() != 4) throw Error(ErrorCode::NonPositiveBox, "--bbox takes x,y,w,h");
  const auto image = read_ppm(in);
  const auto aligned = crop_align(image, {bbox[0], bbox[1], bbox[2], bbox[3]}, size);
  write_ppm(out, aligned);
  return kExitOk;
}

int run_audit(int input_size, const std::string& head, const std::string& out) {
  const auto spec = build_spec(input_size, head == "original" ? HeadKind::Original : HeadKind::Adapted);
  const auto report = audit_report(spec);
  emit(out, audit_csv(report));
  for (const auto& t : report.totals) {
    std::cerr << t.preset << ": trainable=" << t.trainable << " non_trainable=" << t.non_trainable;
    if (t.reference) std::cerr << " reference=" << *t.reference << " delta=" << *t.delta();
    std::cerr << "\n";
  }
  return kExitOk;
}

int run_simulate(const std::string& losses, int patience, int active_from, const std::string& baseline) {
  const auto rows = parse_loss_csv(csv::read_file(losses));
  EarlyStopState state;
  state.patience = patience;
  state.active_from = active_from;
  if (baseline != "none") {
    double b = 0.0;
    if (!csv::parse_double(baseline, b)) {
      throw Error(ErrorCode::ArgumentOutOfRange, "--baseline must be a number or 'none'");
    }
    state = EarlyStopState::with_baseline(patience, active_from, b);
  }
  const auto replay = replay_early_stopping(rows, state);
  std::cout << "stop_epoch=" << (replay.stop_epoch ? std::to_string(*replay.stop_epoch) : "none")
            << "\nbest_epoch=" << replay.best_epoch
            << "\nbest_val_loss=" << csv::format_double(replay.best_loss)
            << "\nepochs_seen=" << replay.epochs_seen << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fakeval: evaluation and dataset tooling for real/fake image classifiers"};
  app.require_subcommand(1);
  int status = kExitOk;

  std::string predictions, out, svg, manifest, exclude, in_path, head = "adapted", losses,
                                                                 baseline = "none";
  std::vector<double> thresholds, markers, ratios{0.75, 0.15, 0.10};
  std::vector<int> bbox;
  int grid_n = kDefaultGridPoints, size = kAlignedSize, input_size = 299, patience = 5,
      active_from = 1;
  double lo = kDefaultGridLo, hi = kDefaultGridHi;
  std::uint64_t seed = 0;
  bool no_purge = false;

  auto* eval = app.add_subcommand("eval", "Full evaluation report from a predictions CSV");
  eval->add_option("--predictions", predictions, "Predictions CSV")->required();
  eval->add_option("--out", out, "Output directory")->required();

  auto* metrics = app.add_subcommand("metrics", "Metrics at fixed thresholds");
  metrics->add_option("--predictions", predictions)->required();
  metrics->add_option("--threshold", thresholds, "Threshold(s) in [0,1]")->required();
  metrics->add_option("--out", out, "Output CSV (default stdout)");

  auto* roc = app.add_subcommand("roc", "ROC curve, AUC and ideal threshold");
  roc->add_option("--predictions", predictions)->required();
  roc->add_option("--out", out, "Output CSV (default stdout)");
  roc->add_option("--svg", svg, "Optional SVG plot");
  roc->add_option("--marker", markers, "Marker thresholds for the SVG");

  auto* kde = app.add_subcommand("kde", "Per-class kernel density estimates");
  kde->add_option("--predictions", predictions)->required();
  kde->add_option("--out", out, "Output CSV (default stdout)");
  kde->add_option("--svg", svg, "Optional SVG plot");
  kde->add_option("--grid-n", grid_n, "Grid points")->check(CLI::Range(3, 1 << 24));
  kde->add_option("--lo", lo, "Grid start");
  kde->add_option("--hi", hi, "Grid end");

  auto* split = app.add_subcommand("split", "Stratified split with leakage purging");
  split->add_option("--manifest", manifest, "Manifest CSV")->required();
  split->add_option("--out", out, "Output directory")->required();
  split->add_option("--seed", seed, "Shuffle seed");
  split->add_option("--ratios", ratios, "train,val,test ratios")->delimiter(',')->expected(3);
  split->add_option("--exclude", exclude, "File with one excluded sample_id per line");
  split->add_flag("--no-purge", no_purge, "Skip leakage purging");

  auto* frames = app.add_subcommand("frames", "One frame per second from video manifests");
  frames->add_option("--manifest", manifest)->required();
  frames->add_option("--out", out, "Output manifest CSV (default stdout)");

  auto* crop = app.add_subcommand("crop", "Crop a bounding box and resample to a square");
  crop->add_option("--in", in_path, "Input PPM (P6)")->required();
  crop->add_option("--out", out, "Output PPM")->required();
  crop->add_option("--bbox", bbox, "x,y,w,h")->delimiter(',')->expected(4)->required();
  crop->add_option("--size", size, "Target side length")->check(CLI::PositiveNumber);

  auto* audit = app.add_subcommand("audit", "ResNet-50 shape and parameter audit");
  audit->add_option("--input-size", input_size, "Input side length");
  audit->add_option("--head", head, "adapted|original")->check(CLI::IsMember({"adapted", "original"}));
  audit->add_option("--out", out, "Output CSV (default stdout)");

  auto* simulate = app.add_subcommand("simulate-train", "Replay early stopping over a loss log");
  simulate->add_option("--losses", losses, "CSV epoch,train_loss,val_loss")->required();
  simulate->add_option("--patience", patience)->check(CLI::PositiveNumber);
  simulate->add_option("--active-from", active_from)->check(CLI::NonNegativeNumber);
  simulate->add_option("--baseline", baseline, "Epoch-0 validation loss or 'none'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*eval) status = run_eval(predictions, out);
    if (*metrics) status = run_metrics(predictions, thresholds, out);
    if (*roc) status = run_roc(predictions, out, svg, markers);
    if (*kde) status = run_kde(predictions, out, svg, grid_n, lo, hi);
    if (*split) status = run_split(manifest, out, seed, ratios, exclude, !no_purge);
    if (*frames) status = run_frames(manifest, out);
    if (*crop) status = run_crop(in_path, out, bbox, size);
    if (*audit) status = run_audit(input_size, head, out);
    if (*simulate) status = run_simulate(losses, patience, active_from, baseline);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return status;
}
