#include "fakeval/archaudit.hpp"

#include <array>

#include "fakeval/error.hpp"

namespace fakeval {

std::string_view to_string(LayerKind kind) noexcept {
  switch (kind) {
    case LayerKind::Conv: return "conv";
    case LayerKind::BatchNorm: return "batchnorm";
    case LayerKind::MaxPool: return "maxpool";
    case LayerKind::AvgPool: return "avgpool";
    case LayerKind::Flatten: return "flatten";
    case LayerKind::Dense: return "dense";
  }
  return "unknown";
}

std::string_view to_string(Stage stage) noexcept {
  switch (stage) {
    case Stage::Conv1: return "conv1";
    case Stage::Conv2: return "conv2_x";
    case Stage::Conv3: return "conv3_x";
    case Stage::Conv4: return "conv4_x";
    case Stage::Conv5: return "conv5_x";
    case Stage::Head: return "head";
  }
  return "unknown";
}

std::int64_t LayerSpec::trainable_params() const noexcept {
  switch (kind) {
    case LayerKind::Conv:
      return static_cast<std::int64_t>(kernel) * kernel * in_channels * out_channels +
             (has_bias ? out_channels : 0);
    case LayerKind::BatchNorm: return 2 * out_channels;  // gamma, beta
    case LayerKind::Dense: return in_channels * out_channels + (has_bias ? out_channels : 0);
    default: return 0;
  }
}

std::int64_t LayerSpec::fixed_params() const noexcept {
  return kind == LayerKind::BatchNorm ? 2 * out_channels : 0;  // moving mean, variance
}

namespace {

int ceil_div(int in, int stride) { return (in + stride - 1) / stride; }

struct StagePlan {
  Stage stage;
  int blocks;
  std::int64_t width;  // bottleneck width; expansion is 4x
  int stride;          // applied by the first block
};

constexpr std::array<StagePlan, 4> kStages{{
    {Stage::Conv2, 3, 64, 1},
    {Stage::Conv3, 4, 128, 2},
    {Stage::Conv4, 6, 256, 2},
    {Stage::Conv5, 3, 512, 2},
}};

class SpecBuilder {
 public:
  explicit SpecBuilder(ArchitectureSpec& spec) : spec_(spec) {}

  void conv(std::string name, Stage stage, int block, int kernel, std::int64_t in,
            std::int64_t out, int stride, int in_size, bool shortcut = false) {
    LayerSpec l;
    l.name = std::move(name);
    l.kind = LayerKind::Conv;
    l.kernel = kernel;
    l.in_channels = in;
    l.out_channels = out;
    l.stride = stride;
    l.has_bias = true;
    l.stage = stage;
    l.block_index = block;
    l.shortcut = shortcut;
    l.out_size = ceil_div(in_size, stride);
    spec_.layers.push_back(std::move(l));
  }

  void batchnorm(std::string name, Stage stage, int block, std::int64_t channels, int size,
                 bool shortcut = false) {
    LayerSpec l;
    l.name = std::move(name);
    l.kind = LayerKind::BatchNorm;
    l.in_channels = channels;
    l.out_channels = channels;
    l.stage = stage;
    l.block_index = block;
    l.shortcut = shortcut;
    l.out_size = size;
    spec_.layers.push_back(std::move(l));
  }

  void plain(std::string name, LayerKind kind, Stage stage, int kernel, std::int64_t in,
             std::int64_t out, int stride, int out_size, bool bias = false,
             std::string activation = {}) {
    LayerSpec l;
    l.name = std::move(name);
    l.kind = kind;
    l.kernel = kernel;
    l.in_channels = in;
    l.out_channels = out;
    l.stride = stride;
    l.has_bias = bias;
    l.stage = stage;
    l.out_size = out_size;
    l.activation = std::move(activation);
    spec_.layers.push_back(std::move(l));
  }

 private:
  ArchitectureSpec& spec_;
};

}  // namespace

ArchitectureSpec build_spec(int input_size, HeadKind head) {
  if (input_size < kMinInputSize) {
    throw Error(ErrorCode::InputTooSmall, "input size " + std::to_string(input_size) +
                                              " is below " + std::to_string(kMinInputSize));
  }
  ArchitectureSpec spec;
  spec.input_size = input_size;
  spec.head = head;
  SpecBuilder b(spec);

  int size = input_size;
  b.conv("conv1_conv", Stage::Conv1, 0, 7, 3, 64, 2, size);
  size = ceil_div(size, 2);
  b.batchnorm("conv1_bn", Stage::Conv1, 0, 64, size);
  spec.stage_output_sizes[Stage::Conv1] = size;

  size = ceil_div(size, 2);
  b.plain("pool1_pool", LayerKind::MaxPool, Stage::Conv2, 3, 64, 64, 2, size);

  std::int64_t channels = 64;
  for (const auto& plan : kStages) {
    const std::string prefix = std::string(to_string(plan.stage)).substr(0, 5);
    const std::int64_t expanded = plan.width * 4;
    for (int blk = 1; blk <= plan.blocks; ++blk) {
      const std::string base = prefix + "_block" + std::to_string(blk) + "_";
      const int stride = blk == 1 ? plan.stride : 1;
      const int in_size = size;
      const int out_size = ceil_div(in_size, stride);
      if (blk == 1) {
        b.conv(base + "0_conv", plan.stage, blk, 1, channels, expanded, stride, in_size, true);
        b.batchnorm(base + "0_bn", plan.stage, blk, expanded, out_size, true);
      }
      b.conv(base + "1_conv", plan.stage, blk, 1, channels, plan.width, stride, in_size);
      b.batchnorm(base + "1_bn", plan.stage, blk, plan.width, out_size);
      b.conv(base + "2_conv", plan.stage, blk, 3, plan.width, plan.width, 1, out_size);
      b.batchnorm(base + "2_bn", plan.stage, blk, plan.width, out_size);
      b.conv(base + "3_conv", plan.stage, blk, 1, plan.width, expanded, 1, out_size);
      b.batchnorm(base + "3_bn", plan.stage, blk, expanded, out_size);
      channels = expanded;
      size = out_size;
    }
    spec.stage_output_sizes[plan.stage] = size;
  }

  if (head == HeadKind::Adapted) {
    const std::int64_t flat = static_cast<std::int64_t>(size) * size * channels;
    b.plain("flatten", LayerKind::Flatten, Stage::Head, 0, channels, flat, 1, 1);
    b.plain("dense", LayerKind::Dense, Stage::Head, 0, flat, 1, 1, 1, true, "sigmoid");
  } else {
    b.plain("avg_pool", LayerKind::AvgPool, Stage::Head, size, channels, channels, 1, 1);
    b.plain("predictions", LayerKind::Dense, Stage::Head, 0, channels, 1000, 1, 1, true, "softmax");
  }
  spec.stage_output_sizes[Stage::Head] = 1;
  return spec;
}

FreezeConfig FreezeConfig::step1() {
  return {"step1", [](const LayerSpec&) { return true; }};
}

FreezeConfig FreezeConfig::step2() {
  return {"step2", [](const LayerSpec& l) { return l.stage == Stage::Conv5 || l.stage == Stage::Head; }};
}

FreezeConfig FreezeConfig::step3() {
  return {"step3", [](const LayerSpec& l) {
            return (l.stage == Stage::Conv5 && l.block_index == 3) || l.stage == Stage::Head;
          }};
}

FreezeConfig FreezeConfig::all_frozen() {
  return {"frozen", [](const LayerSpec&) { return false; }};
}

ParamCount param_count(const ArchitectureSpec& spec, const FreezeConfig& freeze) {
  ParamCount out;
  out.per_layer.reserve(spec.layers.size());
  for (const auto& l : spec.layers) {
    LayerParams p{l.name, 0, l.fixed_params()};
    if (freeze.trainable(l)) {
      p.trainable = l.trainable_params();
    } else {
      p.non_trainable += l.trainable_params();
    }
    out.trainable += p.trainable;
    out.non_trainable += p.non_trainable;
    out.per_layer.push_back(std::move(p));
  }
  return out;
}

AuditReport audit_report(const ArchitectureSpec& spec, std::vector<FreezeConfig> presets) {
  AuditReport report;
  report.spec = spec;
  report.presets = std::move(presets);
  const bool reference_known = spec.head == HeadKind::Adapted && spec.input_size == 299;
  for (const auto& preset : report.presets) {
    auto count = param_count(spec, preset);
    AuditTotals t{preset.name, count.trainable, count.non_trainable, std::nullopt};
    if (reference_known) {
      if (preset.name == "step1") t.reference = kReferenceTrainableStep1;
      if (preset.name == "step2") t.reference = kReferenceTrainableStep2;
      if (preset.name == "step3") t.reference = kReferenceTrainableStep3;
    }
    report.counts.push_back(std::move(count));
    report.totals.push_back(std::move(t));
  }
  return report;
}

std::string audit_csv(const AuditReport& report) {
  std::string out = "layer,stage,out_size,params";
  for (const auto& p : report.presets) out += ",trainable_" + p.name;
  out += '\n';

  std::int64_t total = 0;
  for (std::size_t i = 0; i < report.spec.layers.size(); ++i) {
    const auto& l = report.spec.layers[i];
    total += l.total_params();
    out += l.name + ',' + std::string(to_string(l.stage)) + ',' + std::to_string(l.out_size) + ',' +
           std::to_string(l.total_params());
    for (const auto& c : report.counts) out += ',' + std::to_string(c.per_layer[i].trainable);
    out += '\n';
  }

  out += "TOTAL,,," + std::to_string(total);
  for (const auto& t : report.totals) out += ',' + std::to_string(t.trainable);
  out += '\n';

  bool any_reference = false;
  for (const auto& t : report.totals) any_reference = any_reference || t.reference.has_value();
  if (any_reference) {
    out += "REFERENCE,,,";
    for (const auto& t : report.totals) out += ',' + (t.reference ? std::to_string(*t.reference) : "");
    out += "\nDELTA,,,";
    for (const auto& t : report.totals) out += ',' + (t.delta() ? std::to_string(*t.delta()) : "");
    out += '\n';
  }
  return out;
}

}  // namespace fakeval
