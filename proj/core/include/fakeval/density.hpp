#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fakeval/predictions.hpp"

namespace fakeval {

// Scott's rule: sample standard deviation (n-1 denominator) times n^(-1/5).
// Throws DegenerateSamples for n < 2 or zero variance.
double scott_bandwidth(std::span<const double> samples);

// One-dimensional Gaussian kernel density estimate.
//
//   f(x) = 1/(n h) * sum_i phi((x - x_i) / h),  phi standard normal.
//
// The kernel carries no bandwidth of its own; h enters once, through the
// 1/(n h) prefactor and the scaled argument.
class KdeModel {
 public:
  // Bandwidth from Scott's rule.
  explicit KdeModel(std::vector<double> samples);
  KdeModel(std::vector<double> samples, double bandwidth);

  double operator()(double x) const;

  const std::vector<double>& samples() const noexcept { return samples_; }
  double bandwidth() const noexcept { return bandwidth_; }
  std::size_t size() const noexcept { return samples_.size(); }

 private:
  std::vector<double> samples_;
  double bandwidth_ = 1.0;
};

double kde_eval(const KdeModel& model, double x);

struct ClassKdes {
  KdeModel negative;  // f0, label 0
  KdeModel positive;  // f1, label 1
};

// Per-class models. Without a shared bandwidth each class gets its own
// Scott bandwidth.
ClassKdes class_kdes(const PredictionSet& set,
                     std::optional<double> shared_bandwidth = std::nullopt);

struct IntersectionResult {
  std::vector<double> crossings;  // ascending
  // f0 - f1 vanished at every grid point.
  bool indistinguishable = false;

  bool none() const noexcept { return crossings.empty(); }
};

inline constexpr double kBisectionWidth = 1e-9;

// Scans g = f0 - f1 on a uniform grid of grid_n points over [lo, hi] and
// refines every sign change by bisection.
IntersectionResult kde_intersections(const KdeModel& f0, const KdeModel& f1, double lo, double hi,
                                     int grid_n);

enum class DensityTag { Negative, Positive, All };

struct DensityCurve {
  std::vector<double> grid;
  std::vector<double> values;
  DensityTag tag = DensityTag::All;
};

inline constexpr double kDefaultGridLo = -0.1;
inline constexpr double kDefaultGridHi = 1.1;
inline constexpr int kDefaultGridPoints = 512;

std::vector<double> uniform_grid(double lo, double hi, int n);
DensityCurve density_curve(const KdeModel& model, std::span<const double> grid, DensityTag tag);

inline constexpr const char* kKdeCsvHeader = "x,f_all,f0,f1";

std::string kde_csv(const DensityCurve& all, const DensityCurve& f0, const DensityCurve& f1);

}  // namespace fakeval
