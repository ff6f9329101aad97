#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "fakeval/error.hpp"
#include "fakeval/metrics.hpp"
#include "fakeval/roc.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace fakeval {
namespace {

PredictionSet toy_separable() {
  return PredictionSet({{"n1", "d", "", 0, 0.1},
                        {"n2", "d", "", 0, 0.2},
                        {"p1", "d", "", 1, 0.8},
                        {"p2", "d", "", 1, 0.9}});
}

PredictionSet all_identical() {
  return PredictionSet({{"a", "d", "", 0, 0.4}, {"b", "d", "", 1, 0.4}, {"c", "d", "", 0, 0.4}});
}

bool has_point(const RocCurve& c, double fpr, double tpr) {
  return std::any_of(c.points.begin(), c.points.end(),
                     [&](const RocPoint& p) { return p.fpr == fpr && p.tpr == tpr; });
}

TEST(BuildRoc, SeparableToySet) {
  const auto curve = build_roc(toy_separable());
  EXPECT_TRUE(has_point(curve, 0, 0));
  EXPECT_TRUE(has_point(curve, 0, 1));
  EXPECT_TRUE(has_point(curve, 1, 1));
  EXPECT_EQ(curve.points.front().fpr, 0.0);
  EXPECT_EQ(curve.points.back().tpr, 1.0);
  EXPECT_EQ(auc(curve), 1.0);
}

TEST(BuildRoc, AllIdenticalScores) {
  const auto curve = build_roc(all_identical());
  std::set<std::pair<double, double>> pts;
  for (const auto& p : curve.points) pts.insert({p.fpr, p.tpr});
  EXPECT_EQ(pts, (std::set<std::pair<double, double>>{{0, 0}, {1, 1}}));
  EXPECT_DOUBLE_EQ(auc(curve), 0.5);
}

TEST(BuildRoc, SingleClassRejected) {
  const PredictionSet set({{"a", "d", "", 1, 0.1}, {"b", "d", "", 1, 0.7}});
  try {
    build_roc(set);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateClass);
  }
}

TEST(BuildRoc, EveryPointMatchesRecount) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const auto set = testing::random_predictions(rng, 40);
    const auto curve = build_roc(set);
    std::set<double> distinct;
    for (const auto& r : set.records()) distinct.insert(r.score);
    EXPECT_EQ(curve.points.size(), distinct.size() + 2);
    for (const auto& p : curve.points) {
      const auto b = testing::recount(set, p.threshold);
      EXPECT_EQ(p.fpr, static_cast<double>(b.fp) / (b.fp + b.tn));
      EXPECT_EQ(p.tpr, static_cast<double>(b.tp) / (b.tp + b.fn));
    }
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
      EXPECT_GE(curve.points[i].fpr, curve.points[i - 1].fpr);
      EXPECT_GE(curve.points[i].tpr, curve.points[i - 1].tpr);
      // Rates never increase as the threshold increases.
      EXPECT_LT(curve.points[i].threshold, curve.points[i - 1].threshold);
    }
  }
}

TEST(Auc, EqualsRankStatistic) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const auto set = testing::random_predictions(rng, 200);
    EXPECT_NEAR(auc(build_roc(set)), testing::rank_auc(set), 1e-9);
  }
}

TEST(Auc, RejectsInvalidCurve) {
  RocCurve bad;
  EXPECT_THROW(auc(bad), Error);
  auto curve = build_roc(toy_separable());
  std::swap(curve.points[1], curve.points[2]);
  EXPECT_THROW(auc(curve), Error);
  curve = build_roc(toy_separable());
  curve.points.pop_back();
  curve.points.back().tpr = 0.5;
  EXPECT_THROW(auc(curve), Error);
}

TEST(Auc, InvariantUnderMonotoneTransform) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const auto set = testing::random_predictions(rng, 80);
    std::vector<PredictionRecord> squashed = set.records();
    for (auto& r : squashed) r.score = r.score * r.score * r.score;
    const auto a = build_roc(set);
    const auto b = build_roc(PredictionSet(squashed));
    ASSERT_EQ(a.points.size(), b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
      EXPECT_EQ(a.points[i].fpr, b.points[i].fpr);
      EXPECT_EQ(a.points[i].tpr, b.points[i].tpr);
    }
    EXPECT_EQ(a.auc, b.auc);
  }
}

TEST(Auc, LabelFlipAntisymmetry) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 30; ++trial) {
    const auto set = testing::random_predictions(rng, 90);
    std::vector<PredictionRecord> flipped = set.records();
    for (auto& r : flipped) {
      r.score = 1.0 - r.score;
      r.label = 1 - r.label;
    }
    EXPECT_NEAR(auc(build_roc(set)), auc(build_roc(PredictionSet(flipped))), 1e-12);
  }
}

TEST(IdealThreshold, SeparableToySet) {
  const auto ideal = ideal_threshold(build_roc(toy_separable()));
  EXPECT_EQ(ideal.point.fpr, 0.0);
  EXPECT_EQ(ideal.point.tpr, 1.0);
  EXPECT_EQ(ideal.distance, 0.0);
  EXPECT_EQ(ideal.threshold, 0.8);
  EXPECT_FALSE(ideal.degenerate);
}

TEST(IdealThreshold, AllIdenticalIsDegenerate) {
  const auto ideal = ideal_threshold(build_roc(all_identical()));
  EXPECT_EQ(ideal.distance, 1.0);
  EXPECT_TRUE(ideal.degenerate);
  EXPECT_EQ(ideal.point.fpr, 0.0);  // lower-fpr endpoint wins the tie
}

TEST(IdealThreshold, MatchesExhaustiveScan) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 100; ++trial) {
    const auto set = testing::random_predictions(rng, 100);
    const auto ideal = ideal_threshold(build_roc(set));
    const auto oracle = testing::exhaustive_ideal(set, kSentinelOffset);
    EXPECT_EQ(ideal.threshold, oracle.threshold);
    EXPECT_EQ(ideal.point.fpr, oracle.fpr);
    EXPECT_EQ(ideal.point.tpr, oracle.tpr);
    EXPECT_LE(ideal.distance, 1.0);
  }
}

TEST(IdealThreshold, ZeroDistanceIffSeparable) {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 50; ++trial) {
    const auto set = testing::random_predictions(rng, 30, 0.0);
    double max_neg = -1, min_pos = 2;
    for (const auto& r : set.records()) {
      if (r.label == 0) max_neg = std::max(max_neg, r.score);
      else min_pos = std::min(min_pos, r.score);
    }
    const auto ideal = ideal_threshold(build_roc(set));
    EXPECT_EQ(ideal.distance == 0.0, min_pos > max_neg);
  }
}

TEST(RocPointAt, AgreesWithConfusion) {
  std::mt19937_64 rng(27);
  const auto set = testing::random_predictions(rng, 70);
  const auto curve = build_roc(set);
  for (double th : {0.0, 0.25, 0.5, 0.56, 0.6587, 0.76, 1.0}) {
    const auto p = roc_point_at(curve, th);
    const auto r = rates(confusion(set, th));
    EXPECT_EQ(p.fpr, r.fpr) << th;
    EXPECT_EQ(p.tpr, r.tpr) << th;
  }
}

TEST(RocCsv, Format) {
  const auto csv = roc_csv(build_roc(toy_separable()));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "threshold,fpr,tpr");
  EXPECT_NE(csv.find("\n1.9,0,0\n"), std::string::npos);
  EXPECT_NE(csv.find("\n0.8,0,1\n"), std::string::npos);
}

}  // namespace
}  // namespace fakeval
