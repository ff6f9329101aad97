#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fakeval {

// One scored test sample. label 0 = real (negative), 1 = fake (positive).
struct PredictionRecord {
  std::string sample_id;
  std::string dataset;
  std::string group_id;  // empty: no source group
  int label = 0;
  double score = 0.0;

  friend bool operator==(const PredictionRecord&, const PredictionRecord&) = default;
};

// Validated, immutable collection of prediction records.
//
// Construction enforces label in {0,1}, score in [0,1] and unique sample
// ids. An empty set can be constructed, but every analysis operation
// rejects it with ErrorCode::EmptyInput.
class PredictionSet {
 public:
  PredictionSet() = default;
  explicit PredictionSet(std::vector<PredictionRecord> records,
                         std::string provenance = "synthetic");

  const std::vector<PredictionRecord>& records() const noexcept { return records_; }
  const std::string& provenance() const noexcept { return provenance_; }
  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }

  std::size_t positives() const noexcept { return positives_; }
  std::size_t negatives() const noexcept { return records_.size() - positives_; }

  friend bool operator==(const PredictionSet& a, const PredictionSet& b) {
    return a.records_ == b.records_;
  }

 private:
  std::vector<PredictionRecord> records_;
  std::string provenance_ = "synthetic";
  std::size_t positives_ = 0;
};

inline constexpr std::string_view kPredictionsHeader = "sample_id,dataset,group_id,label,score";

// Parses the predictions CSV. Row order is preserved.
PredictionSet parse_predictions(std::string_view text, std::string provenance = "synthetic");
PredictionSet load_predictions(const std::filesystem::path& path);

std::string serialize_predictions(const PredictionSet& set);

struct ClassPartition {
  std::vector<double> negatives;  // scores with label 0
  std::vector<double> positives;  // scores with label 1
};

ClassPartition class_partition(const PredictionSet& set);

// Throws ErrorCode::EmptyInput when the set has no records.
void require_non_empty(const PredictionSet& set);

}  // namespace fakeval
