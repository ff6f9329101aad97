#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fakeval {

// Training batch size used by every fine-tuning step.
inline constexpr int kBatchSize = 16;

// 1 / (1 + e^-x), evaluated without overflow for large |x|.
double sigmoid(double x) noexcept;

inline constexpr double kProbabilityClamp = 1e-12;

// Binary cross-entropy with p clamped to [1e-12, 1 - 1e-12].
double bce_loss(int label, double p);
// Mean loss over a batch.
double bce_loss(std::span<const int> labels, std::span<const double> probs);

struct AdamConfig {
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-7;
};

struct AdamState {
  AdamConfig config;
  std::vector<double> m;
  std::vector<double> v;
  std::int64_t t = 0;
};

struct AdamStep {
  AdamState state;
  std::vector<double> delta;  // parameter update to add
};

// Bias-corrected Adam update. Moments are sized from the first gradient.
AdamStep adam_step(const AdamState& state, std::span<const double> gradient);

enum class StopDecision { Continue, Stop };

struct EarlyStopState {
  int patience = 5;
  int active_from = 1;
  double best_loss = std::numeric_limits<double>::infinity();
  int best_epoch = 0;
  std::optional<double> baseline;
  int current_epoch = 0;

  // Seeds the monitor with an epoch-0 validation loss.
  static EarlyStopState with_baseline(int patience, int active_from, double baseline_loss);
};

struct EarlyStopUpdate {
  EarlyStopState state;
  StopDecision decision = StopDecision::Continue;
};

// Improvement is a strictly lower loss. Stops once epoch >= active_from
// and epoch - best_epoch >= patience.
EarlyStopUpdate early_stop_update(const EarlyStopState& state, int epoch, double val_loss);

struct LossRow {
  int epoch = 0;
  double train_loss = 0.0;
  double val_loss = 0.0;
};

inline constexpr std::string_view kLossHeader = "epoch,train_loss,val_loss";

std::vector<LossRow> parse_loss_csv(std::string_view text);

struct TrainingReplay {
  std::optional<int> stop_epoch;  // empty when the sequence ran out first
  int best_epoch = 0;
  double best_loss = 0.0;
  int epochs_seen = 0;
};

TrainingReplay replay_early_stopping(std::span<const LossRow> rows, EarlyStopState initial);

}  // namespace fakeval
