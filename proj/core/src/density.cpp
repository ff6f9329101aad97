#include "fakeval/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fakeval/csv.hpp"
#include "fakeval/error.hpp"

namespace fakeval {
namespace {

constexpr double kInvSqrt2Pi = 0.5 * std::numbers::sqrt2 * std::numbers::inv_sqrtpi;

}  // namespace

double scott_bandwidth(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n < 2) {
    throw Error(ErrorCode::DegenerateSamples, "Scott bandwidth needs at least two samples");
  }
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  if (*lo == *hi) throw Error(ErrorCode::DegenerateSamples, "samples have zero variance");
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double s : samples) ss += (s - mean) * (s - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  if (!(sd > 0.0) || !std::isfinite(sd)) {
    throw Error(ErrorCode::DegenerateSamples, "samples have zero variance");
  }
  return sd * std::pow(static_cast<double>(n), -0.2);
}

KdeModel::KdeModel(std::vector<double> samples)
    : samples_(std::move(samples)), bandwidth_(scott_bandwidth(samples_)) {}

KdeModel::KdeModel(std::vector<double> samples, double bandwidth)
    : samples_(std::move(samples)), bandwidth_(bandwidth) {
  if (samples_.empty()) throw Error(ErrorCode::DegenerateSamples, "KDE needs samples");
  if (!(bandwidth_ > 0.0) || !std::isfinite(bandwidth_)) {
    throw Error(ErrorCode::DegenerateSamples, "bandwidth must be positive and finite");
  }
}

double KdeModel::operator()(double x) const {
  double sum = 0.0;
  for (double xi : samples_) {
    const double u = (x - xi) / bandwidth_;
    sum += std::exp(-0.5 * u * u);
  }
  return kInvSqrt2Pi * sum / (static_cast<double>(samples_.size()) * bandwidth_);
}

double kde_eval(const KdeModel& model, double x) { return model(x); }

ClassKdes class_kdes(const PredictionSet& set, std::optional<double> shared_bandwidth) {
  auto part = class_partition(set);
  auto build = [&](std::vector<double> xs, const char* which) {
    if (xs.size() < 2) {
      throw Error(ErrorCode::DegenerateSamples,
                  std::string(which) + " class has fewer than two samples");
    }
    if (shared_bandwidth) return KdeModel(std::move(xs), *shared_bandwidth);
    return KdeModel(std::move(xs));
  };
  return ClassKdes{build(std::move(part.negatives), "negative"),
                   build(std::move(part.positives), "positive")};
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
  if (n < 2 || !(lo < hi)) {
    throw Error(ErrorCode::ArgumentOutOfRange, "grid needs n >= 2 and lo < hi");
  }
  std::vector<double> grid(static_cast<std::size_t>(n));
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (int i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)] = lo + step * i;
  grid.back() = hi;
  return grid;
}

IntersectionResult kde_intersections(const KdeModel& f0, const KdeModel& f1, double lo, double hi,
                                     int grid_n) {
  if (grid_n < 3) throw Error(ErrorCode::ArgumentOutOfRange, "grid_n must be at least 3");
  const auto grid = uniform_grid(lo, hi, grid_n);
  auto g = [&](double x) { return f0(x) - f1(x); };

  IntersectionResult result;
  bool any_nonzero = false;
  double prev_x = 0.0;
  double prev_g = 0.0;
  bool have_prev = false;
  for (double x : grid) {
    const double gx = g(x);
    if (gx == 0.0) continue;
    any_nonzero = true;
    if (have_prev && std::signbit(gx) != std::signbit(prev_g)) {
      // Bracket [prev_x, x] with g(a), g(b) of opposite sign.
      double a = prev_x;
      double b = x;
      double ga = prev_g;
      double root = 0.5 * (a + b);
      while (b - a > kBisectionWidth) {
        const double mid = 0.5 * (a + b);
        const double gm = g(mid);
        if (gm == 0.0) {
          a = b = mid;
          break;
        }
        if (std::signbit(gm) == std::signbit(ga)) {
          a = mid;
          ga = gm;
        } else {
          b = mid;
        }
      }
      root = 0.5 * (a + b);
      result.crossings.push_back(root);
    }
    prev_x = x;
    prev_g = gx;
    have_prev = true;
  }
  result.indistinguishable = !any_nonzero;
  return result;
}

DensityCurve density_curve(const KdeModel& model, std::span<const double> grid, DensityTag tag) {
  DensityCurve curve;
  curve.tag = tag;
  curve.grid.assign(grid.begin(), grid.end());
  curve.values.reserve(grid.size());
  for (double x : grid) curve.values.push_back(model(x));
  return curve;
}

std::string kde_csv(const DensityCurve& all, const DensityCurve& f0, const DensityCurve& f1) {
  if (all.grid != f0.grid || all.grid != f1.grid) {
    throw Error(ErrorCode::SizeMismatch, "density curves must share one grid");
  }
  std::string out = kKdeCsvHeader;
  out += '\n';
  for (std::size_t i = 0; i < all.grid.size(); ++i) {
    out += csv::format_double(all.grid[i]) + ',' + csv::format_double(all.values[i]) + ',' +
           csv::format_double(f0.values[i]) + ',' + csv::format_double(f1.values[i]) + '\n';
  }
  return out;
}

}  // namespace fakeval
