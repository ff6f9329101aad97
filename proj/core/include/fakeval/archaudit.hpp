#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fakeval {

enum class LayerKind { Conv, BatchNorm, MaxPool, AvgPool, Flatten, Dense };

std::string_view to_string(LayerKind kind) noexcept;

enum class Stage { Conv1, Conv2, Conv3, Conv4, Conv5, Head };

std::string_view to_string(Stage stage) noexcept;

enum class HeadKind {
  Original,  // global average pool + 1000-way dense, softmax
  Adapted,   // flatten + 1-unit dense, sigmoid
};

struct LayerSpec {
  std::string name;
  LayerKind kind = LayerKind::Conv;
  int kernel = 1;
  std::int64_t in_channels = 0;
  std::int64_t out_channels = 0;
  int stride = 1;
  bool has_bias = false;
  Stage stage = Stage::Conv1;
  int block_index = 0;  // 1-based bottleneck index inside the stage; 0 outside blocks
  bool shortcut = false;
  int out_size = 0;  // spatial side length after this layer
  std::string activation;

  // Parameters updated by the optimizer when the layer is unlocked.
  std::int64_t trainable_params() const noexcept;
  // Parameters that are never trained (batch-norm moving statistics).
  std::int64_t fixed_params() const noexcept;
  std::int64_t total_params() const noexcept { return trainable_params() + fixed_params(); }
};

struct ArchitectureSpec {
  int input_size = 0;
  HeadKind head = HeadKind::Adapted;
  std::vector<LayerSpec> layers;
  std::map<Stage, int> stage_output_sizes;
};

inline constexpr int kMinInputSize = 32;

// ResNet-50 (bottleneck multiplicities 3/4/6/3) with "same" padding size
// propagation, out = ceil(in / stride). Shortcut projections are explicit
// layers in the first block of each stage.
ArchitectureSpec build_spec(int input_size, HeadKind head);

struct FreezeConfig {
  std::string name;
  std::function<bool(const LayerSpec&)> trainable;

  static FreezeConfig step1();  // whole network
  static FreezeConfig step2();  // conv5_x + head
  static FreezeConfig step3();  // last conv5_x bottleneck + head
  static FreezeConfig all_frozen();
};

struct LayerParams {
  std::string name;
  std::int64_t trainable = 0;
  std::int64_t non_trainable = 0;
};

struct ParamCount {
  std::int64_t trainable = 0;
  std::int64_t non_trainable = 0;
  std::vector<LayerParams> per_layer;

  std::int64_t total() const noexcept { return trainable + non_trainable; }
};

ParamCount param_count(const ArchitectureSpec& spec, const FreezeConfig& freeze);

// Reference trainable counts of the three fine-tuning steps, used as the
// reconciliation reference in the audit report.
inline constexpr std::int64_t kReferenceTrainableStep1 = 23'739'393;
inline constexpr std::int64_t kReferenceTrainableStep2 = 14'656'001;
inline constexpr std::int64_t kReferenceTrainableStep3 = 3'621'377;

struct AuditTotals {
  std::string preset;
  std::int64_t trainable = 0;
  std::int64_t non_trainable = 0;
  // Reference figure, known only for the adapted 299x299 network.
  std::optional<std::int64_t> reference;

  std::optional<std::int64_t> delta() const {
    if (!reference) return std::nullopt;
    return trainable - *reference;
  }
};

struct AuditReport {
  ArchitectureSpec spec;
  std::vector<FreezeConfig> presets;
  std::vector<ParamCount> counts;  // one per preset
  std::vector<AuditTotals> totals;
};

// Counts the spec under each preset; presets default to step1..step3.
AuditReport audit_report(const ArchitectureSpec& spec,
                         std::vector<FreezeConfig> presets = {FreezeConfig::step1(),
                                                              FreezeConfig::step2(),
                                                              FreezeConfig::step3()});

// Columns: layer,stage,out_size,params,trainable_<preset>... One row per
// layer, a TOTAL row, and reference/delta rows when references are known.
std::string audit_csv(const AuditReport& report);

}  // namespace fakeval
