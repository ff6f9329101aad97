#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <unordered_map>

#include "fakeval/curation.hpp"
#include "fakeval/error.hpp"
#include "support/generators.hpp"

namespace fakeval {
namespace {

std::vector<ManifestRow> video(const std::vector<std::int64_t>& stamps, const std::string& group = "v1") {
  std::vector<ManifestRow> rows;
  for (std::size_t i = 0; i < stamps.size(); ++i) {
    rows.push_back({"f" + std::to_string(i), "FaceForensics", 0, group, stamps[i]});
  }
  return rows;
}

std::vector<std::int64_t> stamps_of(const std::vector<ManifestRow>& rows) {
  std::vector<std::int64_t> out;
  for (const auto& r : rows) out.push_back(*r.timestamp_ms);
  return out;
}

TEST(SelectFrames, ThirtyFpsVideo) {
  std::vector<std::int64_t> stamps;
  for (int i = 0; i < 90; ++i) stamps.push_back(std::llround(i * 1000.0 / 30.0));
  const auto picked = select_frames(video(stamps));
  EXPECT_EQ(stamps_of(picked), (std::vector<std::int64_t>{0, 1000, 2000}));
}

TEST(SelectFrames, SingleFrame) {
  EXPECT_EQ(select_frames(video({0})).size(), 1u);
}

TEST(SelectFrames, IrregularTimestamps) {
  const auto picked = select_frames(video({0, 400, 999, 1001, 2500}));
  EXPECT_EQ(stamps_of(picked), (std::vector<std::int64_t>{0, 1001, 2500}));
}

TEST(SelectFrames, GapsNeverReuseAFrame) {
  // 0 -> s0, 3500 -> s1 (first at/after 1000); s2 and s3 have nothing new.
  const auto picked = select_frames(video({0, 3500}));
  EXPECT_EQ(stamps_of(picked), (std::vector<std::int64_t>{0, 3500}));
}

TEST(SelectFrames, Errors) {
  try {
    select_frames({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyInput);
  }
  try {
    select_frames(video({0, 500, 400}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsortedTimestamps);
  }
  auto mixed = video({0, 10});
  mixed[1].group_id = "v2";
  EXPECT_THROW(select_frames(mixed), Error);
}

TEST(SelectFrames, FrameRateBound) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> gap(1, 700);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::int64_t> stamps{gap(rng) % 50};
    for (int i = 0; i < 60; ++i) stamps.push_back(stamps.back() + gap(rng));
    const auto picked = select_frames(video(stamps));
    const double seconds = stamps.back() / 1000.0;
    EXPECT_LE(picked.size(), static_cast<std::size_t>(std::ceil(seconds)) + 1);
    std::set<std::string> ids;
    for (const auto& p : picked) EXPECT_TRUE(ids.insert(p.sample_id).second);
  }
}

TEST(SplitCounts, LargestRemainder) {
  EXPECT_EQ(split_counts(1000, {}), (std::array<std::size_t, 3>{750, 150, 100}));
  EXPECT_EQ(split_counts(3, {}), (std::array<std::size_t, 3>{2, 1, 0}));
  EXPECT_EQ(split_counts(0, {}), (std::array<std::size_t, 3>{0, 0, 0}));
  // 0.75*2 = 1.5, 0.15*2 = 0.3, 0.1*2 = 0.2 -> train takes the leftover.
  EXPECT_EQ(split_counts(2, {}), (std::array<std::size_t, 3>{2, 0, 0}));
  // Equal remainders go to the earlier split.
  EXPECT_EQ(split_counts(1, {0.25, 0.5, 0.25}), (std::array<std::size_t, 3>{0, 1, 0}));
  EXPECT_EQ(split_counts(1, {0.5, 0.25, 0.25}), (std::array<std::size_t, 3>{1, 0, 0}));
  EXPECT_EQ(split_counts(2, {0.4, 0.2, 0.4}), (std::array<std::size_t, 3>{1, 0, 1}));
}

TEST(SplitCounts, BadRatios) {
  for (SplitRatios r : {SplitRatios{0.7, 0.2, 0.2}, SplitRatios{1.0, 0.0, 0.0}, SplitRatios{1.2, -0.1, -0.1}}) {
    try {
      split_counts(10, r);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::BadRatios);
    }
  }
}

TEST(InitialSplit, UniformStratum) {
  Manifest rows;
  for (int i = 0; i < 1000; ++i) rows.push_back({"s" + std::to_string(i), "FFHQ", 0, "", std::nullopt});
  const auto a = initial_split(rows, {}, 1234);
  std::map<Split, int> counts;
  for (const auto& e : a.entries) counts[e.split]++;
  EXPECT_EQ(counts[Split::Train], 750);
  EXPECT_EQ(counts[Split::Val], 150);
  EXPECT_EQ(counts[Split::Test], 100);
  EXPECT_EQ(a.seed, 1234u);
}

TEST(InitialSplit, DeterministicAndSeedSensitive) {
  std::mt19937_64 rng(42);
  const auto rows = testing::random_manifest(rng, 300);
  const auto a = initial_split(rows, {}, 7);
  const auto b = initial_split(rows, {}, 7);
  const auto c = initial_split(rows, {}, 8);
  EXPECT_EQ(a, b);
  EXPECT_NE(a.entries, c.entries);
}

TEST(InitialSplit, StratifiedCounts) {
  std::mt19937_64 rng(43);
  const auto rows = testing::random_manifest(rng, 500);
  const auto a = initial_split(rows, {}, 99);
  std::map<std::pair<std::string, int>, std::array<std::size_t, 3>> got;
  std::map<std::pair<std::string, int>, std::size_t> sizes;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    got[{rows[i].dataset, rows[i].label}][static_cast<int>(a.entries[i].split)]++;
    sizes[{rows[i].dataset, rows[i].label}]++;
    EXPECT_EQ(a.entries[i].sample_id, rows[i].sample_id);
  }
  for (const auto& [key, n] : sizes) EXPECT_EQ(got[key], split_counts(n, {}));
}

TEST(InitialSplit, Errors) {
  EXPECT_THROW(initial_split({}, {}, 1), Error);
  const Manifest one{{"a", "d", 0, "", std::nullopt}};
  EXPECT_THROW(initial_split(one, {0.5, 0.5, 0.5}, 1), Error);
}

TEST(PurgeLeakage, RemovesTrainRowsOfTestGroup) {
  const Manifest rows{{"a", "FF", 0, "g7", std::nullopt},
                      {"b", "FF", 0, "g7", std::nullopt},
                      {"c", "FF", 0, "g7", std::nullopt},
                      {"d", "FF", 0, "g8", std::nullopt},
                      {"e", "FFHQ", 0, "", std::nullopt}};
  SplitAssignment a;
  a.entries = {{"a", Split::Test}, {"b", Split::Train}, {"c", Split::Val}, {"d", Split::Train},
               {"e", Split::Test}};
  const auto p = purge_leakage(a, rows);
  EXPECT_EQ(p.entries, (std::vector<SplitEntry>{{"a", Split::Test}, {"d", Split::Train}, {"e", Split::Test}}));
  EXPECT_EQ(p.purge_log, (std::vector<PurgeEntry>{{"b", "test-group overlap"}, {"c", "test-group overlap"}}));
}

TEST(PurgeLeakage, UngroupedManifestUnchanged) {
  Manifest rows;
  for (int i = 0; i < 50; ++i) rows.push_back({"s" + std::to_string(i), "CelebA", i % 2, "", std::nullopt});
  const auto a = initial_split(rows, {}, 3);
  const auto p = purge_leakage(a, rows);
  EXPECT_EQ(p, a);
}

TEST(PurgeLeakage, UnknownSampleRejected) {
  SplitAssignment a;
  a.entries = {{"ghost", Split::Test}};
  EXPECT_THROW(purge_leakage(a, Manifest{}), Error);
}

TEST(PurgeLeakage, LeakageFreeAndMonotone) {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rows = testing::random_manifest(rng, 20 + trial);
    const auto a = initial_split(rows, {}, trial);
    const auto p = purge_leakage(a, rows);
    std::unordered_map<std::string, std::string> group;
    for (const auto& r : rows) group[r.sample_id] = r.group_id;
    std::set<std::string> test_groups, other_groups;
    std::vector<SplitEntry> test_before, test_after;
    for (const auto& e : a.entries) if (e.split == Split::Test) test_before.push_back(e);
    for (const auto& e : p.entries) {
      if (e.split == Split::Test) {
        test_after.push_back(e);
        if (!group[e.sample_id].empty()) test_groups.insert(group[e.sample_id]);
      } else if (!group[e.sample_id].empty()) {
        other_groups.insert(group[e.sample_id]);
      }
    }
    for (const auto& g : test_groups) EXPECT_FALSE(other_groups.contains(g));
    EXPECT_EQ(test_before, test_after);
    EXPECT_LE(p.entries.size(), a.entries.size());
    EXPECT_EQ(p.entries.size() + p.purge_log.size(), a.entries.size());
  }
}

TEST(SplitReport, ConservesCountsAndKeepsEmptyRows) {
  const Manifest rows{{"a", "FF", 0, "g1", std::nullopt}, {"b", "FF", 0, "g1", std::nullopt},
                      {"c", "FFHQ", 0, "", std::nullopt},  {"d", "FFHQ", 0, "", std::nullopt},
                      {"e", "FFHQ", 0, "", std::nullopt},  {"f", "PGGAN", 1, "", std::nullopt},
                      {"g", "PGGAN", 1, "", std::nullopt}, {"h", "PGGAN", 1, "", std::nullopt},
                      {"i", "Deepfake", 1, "g2", std::nullopt}, {"j", "Deepfake", 1, "g2", std::nullopt}};
  SplitAssignment a;
  for (const auto& r : rows) a.entries.push_back({r.sample_id, Split::Train});
  auto report = split_report(a, rows);
  std::size_t sum = 0;
  for (const auto& r : report.rows) sum += r.sum();
  EXPECT_EQ(sum, 10u);
  EXPECT_EQ(report.totals.sum(), 10u);

  SplitAssignment purged;
  for (const auto& e : a.entries) {
    if (e.sample_id != "a" && e.sample_id != "b") purged.entries.push_back(e);
  }
  report = split_report(purged, rows);
  ASSERT_EQ(report.rows.size(), 4u);
  const auto ff = std::find_if(report.rows.begin(), report.rows.end(),
                               [](const auto& r) { return r.dataset == "FF"; });
  ASSERT_NE(ff, report.rows.end());
  EXPECT_EQ(ff->sum(), 0u);
  const auto csv = split_report_csv(report);
  EXPECT_NE(csv.find("real,FF,0,0,0,0\n"), std::string::npos);
  EXPECT_NE(csv.find("all,total,8,0,0,8\n"), std::string::npos);
}

TEST(Manifest, ParseSerializeRoundTrip) {
  const std::string text =
      "sample_id,dataset,class,group_id,timestamp_ms\n"
      "a,FaceForensics,0,vid_1,0\n"
      "b,FFHQ,0,,\n"
      "c,Deepfake,1,vid_1,1033\n";
  const auto rows = parse_manifest(text);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_FALSE(rows[1].timestamp_ms.has_value());
  EXPECT_EQ(*rows[2].timestamp_ms, 1033);
  EXPECT_EQ(serialize_manifest(rows), text);
  EXPECT_THROW(parse_manifest("sample_id,dataset,class,group_id,timestamp_ms\na,d,2,,\n"), Error);
  EXPECT_THROW(parse_manifest("sample_id,dataset,class,group_id,timestamp_ms\na,d,0,,-5\n"), Error);
}

TEST(Manifest, Exclusions) {
  const Manifest rows{{"a", "d", 0, "", std::nullopt}, {"b", "d", 1, "", std::nullopt}};
  const auto kept = apply_exclusions(rows, {"a"});
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].sample_id, "b");
}

TEST(SplitCsv, Format) {
  SplitAssignment a;
  a.entries = {{"x", Split::Val}};
  a.purge_log = {{"y", std::string(kPurgeReason)}};
  EXPECT_EQ(split_csv(a), "sample_id,split\nx,val\n");
  EXPECT_EQ(purge_log_csv(a), "sample_id,reason\ny,test-group overlap\n");
}

}  // namespace
}  // namespace fakeval
