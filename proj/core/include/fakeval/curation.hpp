#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fakeval {

struct ManifestRow {
  std::string sample_id;
  std::string dataset;
  int label = 0;         // 0 real, 1 fake
  std::string group_id;  // source video; empty for still-image datasets
  std::optional<std::int64_t> timestamp_ms;

  friend bool operator==(const ManifestRow&, const ManifestRow&) = default;
};

using Manifest = std::vector<ManifestRow>;

inline constexpr std::string_view kManifestHeader = "sample_id,dataset,class,group_id,timestamp_ms";

Manifest parse_manifest(std::string_view text);
Manifest load_manifest(const std::filesystem::path& path);
std::string serialize_manifest(std::span<const ManifestRow> rows);

// Drops rows whose sample_id is in the exclusion list (manual quality
// deselection).
Manifest apply_exclusions(std::span<const ManifestRow> rows, const std::set<std::string>& excluded);

// One frame per second of video: for s = 0, 1, 2, ... up to the last
// timestamp, the first frame at or after s*1000 ms, each frame at most
// once. Rows must share a group_id and carry ascending timestamps.
std::vector<ManifestRow> select_frames(std::span<const ManifestRow> frames);

enum class Split { Train, Val, Test };

std::string_view to_string(Split split) noexcept;

struct SplitRatios {
  double train = 0.75;
  double val = 0.15;
  double test = 0.10;
};

struct PurgeEntry {
  std::string sample_id;
  std::string reason;

  friend bool operator==(const PurgeEntry&, const PurgeEntry&) = default;
};

struct SplitEntry {
  std::string sample_id;
  Split split = Split::Train;

  friend bool operator==(const SplitEntry&, const SplitEntry&) = default;
};

// Surviving samples in manifest order.
struct SplitAssignment {
  std::vector<SplitEntry> entries;
  std::uint64_t seed = 0;
  std::vector<PurgeEntry> purge_log;

  friend bool operator==(const SplitAssignment&, const SplitAssignment&) = default;
};

// Largest-remainder apportionment of n items; ties go to the earlier
// split (train, then val, then test).
std::array<std::size_t, 3> split_counts(std::size_t n, const SplitRatios& ratios);

// Seeded shuffle inside every (dataset, class) stratum, then per-stratum
// counts from split_counts.
SplitAssignment initial_split(std::span<const ManifestRow> manifest, const SplitRatios& ratios,
                              std::uint64_t seed);

inline constexpr std::string_view kPurgeReason = "test-group overlap";

// Removes train/val samples sharing a non-empty group_id with any test
// sample. The test split is left untouched.
SplitAssignment purge_leakage(const SplitAssignment& assignment,
                              std::span<const ManifestRow> manifest);

struct SplitReportRow {
  int label = 0;
  std::string dataset;
  std::size_t train = 0;
  std::size_t val = 0;
  std::size_t test = 0;

  std::size_t sum() const noexcept { return train + val + test; }
};

struct SplitReport {
  std::vector<SplitReportRow> rows;  // ordered by (label, dataset)
  SplitReportRow totals;
};

// Per (class, dataset) counts. Strata whose samples were all purged keep a
// zero row.
SplitReport split_report(const SplitAssignment& assignment, std::span<const ManifestRow> manifest);

std::string split_csv(const SplitAssignment& assignment);
std::string purge_log_csv(const SplitAssignment& assignment);
std::string split_report_csv(const SplitReport& report);

}  // namespace fakeval
