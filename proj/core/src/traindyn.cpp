#include "fakeval/traindyn.hpp"

#include <algorithm>
#include <cmath>

#include "fakeval/csv.hpp"
#include "fakeval/error.hpp"

namespace fakeval {

double sigmoid(double x) noexcept {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double bce_loss(int label, double p) {
  if (label != 0 && label != 1) {
    throw Error(ErrorCode::LabelOutOfDomain, "label must be 0 or 1");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::ArgumentOutOfRange, "probability outside [0,1]");
  }
  const double q = std::clamp(p, kProbabilityClamp, 1.0 - kProbabilityClamp);
  return label == 1 ? -std::log(q) : -std::log1p(-q);
}

double bce_loss(std::span<const int> labels, std::span<const double> probs) {
  if (labels.size() != probs.size()) {
    throw Error(ErrorCode::SizeMismatch, "labels and probabilities differ in length");
  }
  if (labels.empty()) throw Error(ErrorCode::EmptyInput, "empty batch");
  double sum = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) sum += bce_loss(labels[i], probs[i]);
  return sum / static_cast<double>(labels.size());
}

AdamStep adam_step(const AdamState& state, std::span<const double> gradient) {
  for (double g : gradient) {
    if (!std::isfinite(g)) throw Error(ErrorCode::NonFiniteGradient, "gradient is not finite");
  }
  AdamStep out{state, std::vector<double>(gradient.size())};
  AdamState& s = out.state;
  if (s.m.empty() && s.v.empty()) {
    s.m.assign(gradient.size(), 0.0);
    s.v.assign(gradient.size(), 0.0);
  }
  if (s.m.size() != gradient.size() || s.v.size() != gradient.size()) {
    throw Error(ErrorCode::SizeMismatch, "gradient size differs from optimizer state");
  }
  const AdamConfig& c = s.config;
  s.t += 1;
  const double correction1 = 1.0 - std::pow(c.beta1, static_cast<double>(s.t));
  const double correction2 = 1.0 - std::pow(c.beta2, static_cast<double>(s.t));
  for (std::size_t i = 0; i < gradient.size(); ++i) {
    const double g = gradient[i];
    s.m[i] = c.beta1 * s.m[i] + (1.0 - c.beta1) * g;
    s.v[i] = c.beta2 * s.v[i] + (1.0 - c.beta2) * g * g;
    const double m_hat = s.m[i] / correction1;
    const double v_hat = s.v[i] / correction2;
    out.delta[i] = -c.learning_rate * m_hat / (std::sqrt(v_hat) + c.epsilon);
  }
  return out;
}

EarlyStopState EarlyStopState::with_baseline(int patience, int active_from, double baseline_loss) {
  EarlyStopState s;
  s.patience = patience;
  s.active_from = active_from;
  s.baseline = baseline_loss;
  s.best_loss = baseline_loss;
  s.best_epoch = 0;
  return s;
}

EarlyStopUpdate early_stop_update(const EarlyStopState& state, int epoch, double val_loss) {
  if (epoch <= state.current_epoch) {
    throw Error(ErrorCode::NonMonotoneEpochs, "epoch " + std::to_string(epoch) +
                                                  " does not follow epoch " +
                                                  std::to_string(state.current_epoch));
  }
  EarlyStopUpdate out{state, StopDecision::Continue};
  EarlyStopState& s = out.state;
  s.current_epoch = epoch;
  if (val_loss < s.best_loss) {
    s.best_loss = val_loss;
    s.best_epoch = epoch;
  }
  if (epoch >= s.active_from && epoch - s.best_epoch >= s.patience) {
    out.decision = StopDecision::Stop;
  }
  return out;
}

std::vector<LossRow> parse_loss_csv(std::string_view text) {
  const auto rows = csv::lines(text);
  if (rows.empty()) throw Error(ErrorCode::EmptyInput, "loss file has no header");
  if (rows.front() != kLossHeader) {
    throw Error(ErrorCode::MalformedRow, "line 1: expected header '" + std::string(kLossHeader) + "'");
  }
  std::vector<LossRow> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const std::string where = "line " + std::to_string(i + 1);
    const auto f = csv::fields(rows[i]);
    std::int64_t epoch = 0;
    LossRow row;
    if (f.size() != 3 || !csv::parse_int(f[0], epoch) || !csv::parse_double(f[1], row.train_loss) ||
        !csv::parse_double(f[2], row.val_loss)) {
      throw Error(ErrorCode::MalformedRow, where + ": expected epoch,train_loss,val_loss");
    }
    row.epoch = static_cast<int>(epoch);
    out.push_back(row);
  }
  if (out.empty()) throw Error(ErrorCode::EmptyInput, "loss file has no rows");
  return out;
}

TrainingReplay replay_early_stopping(std::span<const LossRow> rows, EarlyStopState initial) {
  TrainingReplay replay;
  EarlyStopState state = std::move(initial);
  for (const auto& row : rows) {
    auto update = early_stop_update(state, row.epoch, row.val_loss);
    state = std::move(update.state);
    ++replay.epochs_seen;
    if (update.decision == StopDecision::Stop) {
      replay.stop_epoch = row.epoch;
      break;
    }
  }
  replay.best_epoch = state.best_epoch;
  replay.best_loss = state.best_loss;
  return replay;
}

}  // namespace fakeval
