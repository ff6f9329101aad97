#include "fakeval/predictions.hpp"

#include <cmath>
#include <cstdint>
#include <unordered_set>

#include "fakeval/csv.hpp"
#include "fakeval/error.hpp"

namespace fakeval {
namespace {

void validate(const PredictionRecord& r, const std::string& where) {
  if (r.label != 0 && r.label != 1) {
    throw Error(ErrorCode::LabelOutOfDomain,
                where + ": label " + std::to_string(r.label) + " is not 0 or 1");
  }
  if (!(r.score >= 0.0 && r.score <= 1.0)) {
    throw Error(ErrorCode::ScoreOutOfRange,
                where + ": score " + csv::format_double(r.score) + " outside [0,1]");
  }
}

}  // namespace

PredictionSet::PredictionSet(std::vector<PredictionRecord> records, std::string provenance)
    : records_(std::move(records)), provenance_(std::move(provenance)) {
  std::unordered_set<std::string_view> ids;
  ids.reserve(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    validate(r, "record " + std::to_string(i));
    if (!ids.insert(r.sample_id).second) {
      throw Error(ErrorCode::DuplicateId, "duplicate sample_id '" + r.sample_id + "'");
    }
    positives_ += static_cast<std::size_t>(r.label);
  }
}

PredictionSet parse_predictions(std::string_view text, std::string provenance) {
  const auto rows = csv::lines(text);
  if (rows.empty()) throw Error(ErrorCode::EmptyInput, "document has no header");
  if (rows.front() != kPredictionsHeader) {
    throw Error(ErrorCode::MalformedRow,
                "line 1: expected header '" + std::string(kPredictionsHeader) + "'");
  }
  if (rows.size() == 1) throw Error(ErrorCode::EmptyInput, "no prediction rows");

  std::vector<PredictionRecord> records;
  records.reserve(rows.size() - 1);
  std::unordered_set<std::string> ids;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const std::string where = "line " + std::to_string(i + 1);
    const auto f = csv::fields(rows[i]);
    if (f.size() != 5) {
      throw Error(ErrorCode::MalformedRow,
                  where + ": expected 5 columns, got " + std::to_string(f.size()));
    }
    std::int64_t label = 0;
    if (!csv::parse_int(f[3], label)) {
      throw Error(ErrorCode::MalformedRow, where + ": unparseable label '" + std::string(f[3]) + "'");
    }
    double score = 0.0;
    if (!csv::parse_double(f[4], score)) {
      throw Error(ErrorCode::MalformedRow, where + ": unparseable score '" + std::string(f[4]) + "'");
    }
    if (label != 0 && label != 1) {
      throw Error(ErrorCode::LabelOutOfDomain, where + ": label " + std::to_string(label));
    }
    PredictionRecord r{std::string(f[0]), std::string(f[1]), std::string(f[2]),
                       static_cast<int>(label), score};
    validate(r, where);
    if (!ids.insert(r.sample_id).second) {
      throw Error(ErrorCode::DuplicateId, where + ": duplicate sample_id '" + r.sample_id + "'");
    }
    records.push_back(std::move(r));
  }
  return PredictionSet(std::move(records), std::move(provenance));
}

PredictionSet load_predictions(const std::filesystem::path& path) {
  return parse_predictions(csv::read_file(path), path.string());
}

std::string serialize_predictions(const PredictionSet& set) {
  std::string out(kPredictionsHeader);
  out += '\n';
  for (const auto& r : set.records()) {
    out += r.sample_id;
    out += ',';
    out += r.dataset;
    out += ',';
    out += r.group_id;
    out += ',';
    out += std::to_string(r.label);
    out += ',';
    out += csv::format_double(r.score);
    out += '\n';
  }
  return out;
}

void require_non_empty(const PredictionSet& set) {
  if (set.empty()) throw Error(ErrorCode::EmptyInput, "prediction set is empty");
}

ClassPartition class_partition(const PredictionSet& set) {
  require_non_empty(set);
  ClassPartition p;
  p.negatives.reserve(set.negatives());
  p.positives.reserve(set.positives());
  for (const auto& r : set.records()) {
    (r.label == 1 ? p.positives : p.negatives).push_back(r.score);
  }
  return p;
}

}  // namespace fakeval
