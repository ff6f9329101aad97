#include "fakeval/curation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "fakeval/csv.hpp"
#include "fakeval/error.hpp"

namespace fakeval {

Manifest parse_manifest(std::string_view text) {
  const auto rows = csv::lines(text);
  if (rows.empty()) throw Error(ErrorCode::EmptyManifest, "document has no header");
  if (rows.front() != kManifestHeader) {
    throw Error(ErrorCode::MalformedRow,
                "line 1: expected header '" + std::string(kManifestHeader) + "'");
  }
  Manifest out;
  out.reserve(rows.size() - 1);
  std::unordered_set<std::string> ids;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const std::string where = "line " + std::to_string(i + 1);
    const auto f = csv::fields(rows[i]);
    if (f.size() != 5) {
      throw Error(ErrorCode::MalformedRow,
                  where + ": expected 5 columns, got " + std::to_string(f.size()));
    }
    std::int64_t label = 0;
    if (!csv::parse_int(f[2], label)) {
      throw Error(ErrorCode::MalformedRow, where + ": unparseable class '" + std::string(f[2]) + "'");
    }
    if (label != 0 && label != 1) {
      throw Error(ErrorCode::LabelOutOfDomain, where + ": class " + std::to_string(label));
    }
    ManifestRow row{std::string(f[0]), std::string(f[1]), static_cast<int>(label),
                    std::string(f[3]), std::nullopt};
    if (!f[4].empty()) {
      std::int64_t ts = 0;
      if (!csv::parse_int(f[4], ts) || ts < 0) {
        throw Error(ErrorCode::MalformedRow, where + ": bad timestamp_ms '" + std::string(f[4]) + "'");
      }
      row.timestamp_ms = ts;
    }
    if (!ids.insert(row.sample_id).second) {
      throw Error(ErrorCode::DuplicateId, where + ": duplicate sample_id '" + row.sample_id + "'");
    }
    out.push_back(std::move(row));
  }
  return out;
}

Manifest load_manifest(const std::filesystem::path& path) {
  return parse_manifest(csv::read_file(path));
}

std::string serialize_manifest(std::span<const ManifestRow> rows) {
  std::string out(kManifestHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += r.sample_id + ',' + r.dataset + ',' + std::to_string(r.label) + ',' + r.group_id + ',';
    if (r.timestamp_ms) out += std::to_string(*r.timestamp_ms);
    out += '\n';
  }
  return out;
}

Manifest apply_exclusions(std::span<const ManifestRow> rows, const std::set<std::string>& excluded) {
  Manifest out;
  for (const auto& r : rows) {
    if (!excluded.contains(r.sample_id)) out.push_back(r);
  }
  return out;
}

std::vector<ManifestRow> select_frames(std::span<const ManifestRow> frames) {
  if (frames.empty()) throw Error(ErrorCode::EmptyInput, "no frames");
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const auto& f = frames[i];
    if (!f.timestamp_ms) {
      throw Error(ErrorCode::MalformedRow, "frame '" + f.sample_id + "' has no timestamp");
    }
    if (f.group_id != frames.front().group_id) {
      throw Error(ErrorCode::MixedGroups, "frames span more than one group_id");
    }
    if (i > 0 && *f.timestamp_ms < *frames[i - 1].timestamp_ms) {
      throw Error(ErrorCode::UnsortedTimestamps,
                  "timestamp of '" + f.sample_id + "' precedes its predecessor");
    }
  }

  std::vector<ManifestRow> selected;
  const std::int64_t last = *frames.back().timestamp_ms;
  std::size_t cursor = 0;
  for (std::int64_t second = 0; second * 1000 <= last; ++second) {
    // cursor only moves forward, so a frame is never picked twice.
    while (cursor < frames.size() && *frames[cursor].timestamp_ms < second * 1000) ++cursor;
    if (cursor == frames.size()) break;
    selected.push_back(frames[cursor]);
    ++cursor;
  }
  return selected;
}

std::string_view to_string(Split split) noexcept {
  switch (split) {
    case Split::Train: return "train";
    case Split::Val: return "val";
    case Split::Test: return "test";
  }
  return "unknown";
}

std::array<std::size_t, 3> split_counts(std::size_t n, const SplitRatios& ratios) {
  const std::array<double, 3> r{ratios.train, ratios.val, ratios.test};
  for (double v : r) {
    if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorCode::BadRatios, "ratios must be positive");
  }
  if (std::abs(r[0] + r[1] + r[2] - 1.0) > 1e-9) {
    throw Error(ErrorCode::BadRatios, "ratios must sum to 1");
  }
  std::array<std::size_t, 3> counts{};
  std::array<double, 3> remainder{};
  std::size_t assigned = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    const double quota = r[k] * static_cast<double>(n);
    counts[k] = static_cast<std::size_t>(std::floor(quota));
    remainder[k] = quota - std::floor(quota);
    assigned += counts[k];
  }
  // Floors can overshoot by one only through rounding of the quotas.
  while (assigned > n) {
    const auto k = static_cast<std::size_t>(
        std::min_element(remainder.begin(), remainder.end()) - remainder.begin());
    --counts[k];
    remainder[k] += 1.0;
    --assigned;
  }
  while (assigned < n) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < 3; ++k) {
      if (remainder[k] > remainder[best]) best = k;
    }
    ++counts[best];
    remainder[best] = -1.0;
    ++assigned;
  }
  return counts;
}

namespace {

// Fisher-Yates with rejection-sampled bounded draws. std::shuffle and
// std::uniform_int_distribution are implementation-defined, which would
// make splits differ between standard libraries.
template <typename T>
void portable_shuffle(std::vector<T>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::uint64_t bound = i;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t draw = rng();
    while (draw >= limit) draw = rng();
    std::swap(items[i - 1], items[static_cast<std::size_t>(draw % bound)]);
  }
}

}  // namespace

SplitAssignment initial_split(std::span<const ManifestRow> manifest, const SplitRatios& ratios,
                              std::uint64_t seed) {
  if (manifest.empty()) throw Error(ErrorCode::EmptyManifest, "manifest has no rows");
  split_counts(0, ratios);  // validates ratios

  std::map<std::pair<std::string, int>, std::vector<std::size_t>> strata;
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    strata[{manifest[i].dataset, manifest[i].label}].push_back(i);
  }

  std::vector<Split> split_of(manifest.size(), Split::Train);
  std::mt19937_64 rng(seed);
  for (auto& [key, members] : strata) {
    portable_shuffle(members, rng);
    const auto counts = split_counts(members.size(), ratios);
    for (std::size_t j = 0; j < members.size(); ++j) {
      split_of[members[j]] = j < counts[0]               ? Split::Train
                             : j < counts[0] + counts[1] ? Split::Val
                                                         : Split::Test;
    }
  }

  SplitAssignment out;
  out.seed = seed;
  out.entries.reserve(manifest.size());
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    out.entries.push_back({manifest[i].sample_id, split_of[i]});
  }
  return out;
}

SplitAssignment purge_leakage(const SplitAssignment& assignment,
                              std::span<const ManifestRow> manifest) {
  std::unordered_map<std::string_view, const ManifestRow*> by_id;
  by_id.reserve(manifest.size());
  for (const auto& r : manifest) by_id.emplace(r.sample_id, &r);

  auto group_of = [&](const SplitEntry& e) -> const std::string& {
    auto it = by_id.find(e.sample_id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::InconsistentAssignment,
                  "sample '" + e.sample_id + "' is not in the manifest");
    }
    return it->second->group_id;
  };

  std::unordered_set<std::string> test_groups;
  for (const auto& e : assignment.entries) {
    const auto& g = group_of(e);
    if (e.split == Split::Test && !g.empty()) test_groups.insert(g);
  }

  SplitAssignment out;
  out.seed = assignment.seed;
  out.purge_log = assignment.purge_log;
  out.entries.reserve(assignment.entries.size());
  for (const auto& e : assignment.entries) {
    const auto& g = group_of(e);
    if (e.split != Split::Test && !g.empty() && test_groups.contains(g)) {
      out.purge_log.push_back({e.sample_id, std::string(kPurgeReason)});
      continue;
    }
    out.entries.push_back(e);
  }
  return out;
}

SplitReport split_report(const SplitAssignment& assignment, std::span<const ManifestRow> manifest) {
  std::map<std::pair<int, std::string>, SplitReportRow> table;
  std::unordered_map<std::string_view, const ManifestRow*> by_id;
  for (const auto& r : manifest) {
    by_id.emplace(r.sample_id, &r);
    auto& row = table[{r.label, r.dataset}];
    row.label = r.label;
    row.dataset = r.dataset;
  }
  SplitReport report;
  report.totals.label = -1;
  report.totals.dataset = "total";
  for (const auto& e : assignment.entries) {
    auto it = by_id.find(e.sample_id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::InconsistentAssignment,
                  "sample '" + e.sample_id + "' is not in the manifest");
    }
    auto& row = table[{it->second->label, it->second->dataset}];
    auto bump = [&](SplitReportRow& r) {
      switch (e.split) {
        case Split::Train: ++r.train; break;
        case Split::Val: ++r.val; break;
        case Split::Test: ++r.test; break;
      }
    };
    bump(row);
    bump(report.totals);
  }
  for (auto& [key, row] : table) report.rows.push_back(std::move(row));
  return report;
}

std::string split_csv(const SplitAssignment& assignment) {
  std::string out = "sample_id,split\n";
  for (const auto& e : assignment.entries) {
    out += e.sample_id;
    out += ',';
    out += to_string(e.split);
    out += '\n';
  }
  return out;
}

std::string purge_log_csv(const SplitAssignment& assignment) {
  std::string out = "sample_id,reason\n";
  for (const auto& p : assignment.purge_log) out += p.sample_id + ',' + p.reason + '\n';
  return out;
}

std::string split_report_csv(const SplitReport& report) {
  std::string out = "class,dataset,train,val,test,sum\n";
  auto line = [&](const std::string& cls, const SplitReportRow& r) {
    out += cls + ',' + r.dataset + ',' + std::to_string(r.train) + ',' + std::to_string(r.val) +
           ',' + std::to_string(r.test) + ',' + std::to_string(r.sum()) + '\n';
  };
  for (const auto& r : report.rows) line(r.label == 1 ? "fake" : "real", r);
  line("all", report.totals);
  return out;
}

}  // namespace fakeval
