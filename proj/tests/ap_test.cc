/* Copyright 2026 The LRP Toolkit Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include "lrp/ap.h"

#include <algorithm>
#include <random>

#include "gtest/gtest.h"
#include "lrp/errors.h"
#include "lrp/synthetic.h"
#include "oracles.h"

namespace lrp {
namespace {

GroundTruth Gt(const BoundingBox& b, ClassId c = 1, ImageId image = 0) {
  return {image, c, b, false};
}

Detection Det(const BoundingBox& b, double score, ClassId c = 1,
              ImageId image = 0) {
  return {image, c, b, score};
}

constexpr ApVariant kVariants[] = {ApVariant::kContinuous, ApVariant::kPascal11,
                                   ApVariant::kCoco101};

TEST(RpCurveTest, PerfectSingleDetection) {
  const BoundingBox b(0, 0, 10, 10);
  const RPCurve c = rp_curve(std::vector<GroundTruth>{Gt(b)}, std::vector<Detection>{Det(b, 0.8)}, 1, 0.5);
  ASSERT_EQ(c.points.size(), 1u);
  EXPECT_EQ(c.points[0].recall, 1.0);
  EXPECT_EQ(c.points[0].precision, 1.0);
  EXPECT_EQ(c.points[0].score, 0.8);
  for (ApVariant v : kVariants) EXPECT_EQ(ap(c, v), 1.0);
}

TEST(RpCurveTest, DuplicatesEndAtHalfPrecision) {
  const Fixture f = same_ap_duplicates();
  const RPCurve c = rp_curve(f.gts, f.dets, 1, 0.5);
  ASSERT_EQ(c.points.size(), 8u);
  EXPECT_EQ(c.points.back().recall, 1.0);
  EXPECT_EQ(c.points.back().precision, 0.5);
}

TEST(RpCurveTest, HandUnrolledCumulativeCounts) {
  const BoundingBox a(0, 0, 10, 10), b(20, 0, 30, 10);
  const std::vector<GroundTruth> gts{Gt(a), Gt(b)};
  // TP, FP, TP in score order, given out of order.
  const std::vector<Detection> dets{Det(b, 0.5), Det(a, 0.9),
                                    Det(BoundingBox(50, 0, 60, 10), 0.7)};
  const RPCurve c = rp_curve(gts, dets, 1, 0.5);
  ASSERT_EQ(c.points.size(), 3u);
  const double want[3][2] = {{0.5, 1.0}, {0.5, 0.5}, {1.0, 2.0 / 3.0}};
  const std::size_t det[3] = {1, 2, 0};
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(c.points[i].recall, want[i][0]);
    EXPECT_EQ(c.points[i].precision, want[i][1]);
    EXPECT_EQ(c.points[i].detection, det[i]);
  }
  EXPECT_EQ(c.interpolated_precision, (std::vector<double>{1.0, 2.0 / 3.0, 2.0 / 3.0}));
  EXPECT_NEAR(ap(c, ApVariant::kContinuous), 0.5 + 0.5 * 2.0 / 3.0, 1e-15);
  EXPECT_EQ(interpolated_precision_at(c, 0.0), 1.0);
  EXPECT_EQ(interpolated_precision_at(c, 0.6), 2.0 / 3.0);
}

TEST(RpCurveTest, IgnoredDetectionsAddNoPoint) {
  const BoundingBox a(0, 0, 10, 10), crowd(40, 0, 60, 20);
  const std::vector<GroundTruth> gts{Gt(a), {0, 1, crowd, true}};
  const std::vector<Detection> dets{Det(crowd, 0.9), Det(a, 0.8)};
  const RPCurve c = rp_curve(gts, dets, 1, 0.5);
  ASSERT_EQ(c.points.size(), 1u);
  EXPECT_EQ(c.points[0].detection, 1u);
  EXPECT_EQ(c.n_gt, 1u);
}

TEST(RpCurveTest, RequiresGroundTruth) {
  EXPECT_THROW(rp_curve({}, std::vector<Detection>{Det(BoundingBox(0, 0, 1, 1), 0.5)}, 1, 0.5),
               InvalidArgument);
}

TEST(ApTest, SameApTrioAllScoreHalf) {
  for (const Fixture& f : {same_ap_half_recall(), same_ap_duplicates(), same_ap_loose()}) {
    EXPECT_NEAR(ap(rp_curve(f.gts, f.dets, 1, 0.5), ApVariant::kContinuous), 0.5, 1e-12)
        << f.name;
  }
}

TEST(ApTest, NoDetectionsIsZero) {
  const RPCurve c = rp_curve(std::vector<GroundTruth>{Gt(BoundingBox(0, 0, 1, 1))}, {}, 1, 0.5);
  for (ApVariant v : kVariants) EXPECT_EQ(ap(c, v), 0.0);
}

TEST(ApTest, VariantNames) {
  for (ApVariant v : kVariants) EXPECT_EQ(parse_ap_variant(to_string(v)), v);
  EXPECT_THROW(parse_ap_variant("voc07"), InvalidArgument);
}

struct Instance {
  std::vector<GroundTruth> gts;
  std::vector<Detection> dets;
};

Instance RandomInstance(std::mt19937_64& rng, int max_det, bool coarse_scores) {
  std::uniform_int_distribution<int> ng(1, 12), nd(0, max_det);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Instance in;
  const int n_gt = ng(rng);
  for (int i = 0; i < n_gt; ++i) {
    in.gts.push_back({i % 3, 1, oracle::RandomBox(rng, 60, 8, 25), u(rng) < 0.1});
  }
  const int n_det = nd(rng);
  for (int i = 0; i < n_det; ++i) {
    double score = u(rng);
    if (coarse_scores) score = std::round(score * 8) / 8;  // many ties
    Detection d{i % 3, 1, oracle::RandomBox(rng, 60, 8, 25), score};
    if (u(rng) < 0.7) {
      const GroundTruth& g = in.gts[static_cast<std::size_t>(u(rng) * in.gts.size())];
      d.image_id = g.image_id;
      const double dx = 4 * (u(rng) - 0.5), dy = 4 * (u(rng) - 0.5);
      d.box = BoundingBox(g.box.x_min() + dx, g.box.y_min() + dy,
                          g.box.x_max() + dx, g.box.y_max() + dy);
    }
    in.dets.push_back(d);
  }
  return in;
}

bool HasRealGt(const Instance& in) {
  return std::any_of(in.gts.begin(), in.gts.end(), [](const GroundTruth& g) { return !g.ignore; });
}

TEST(ApTest, MatchesPerThresholdIntegration) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 300; ++trial) {
    const Instance in = RandomInstance(rng, 30, trial % 2 == 0);
    if (!HasRealGt(in)) continue;
    const RPCurve c = rp_curve(in.gts, in.dets, 1, 0.5);
    for (ApVariant v : kVariants) {
      EXPECT_NEAR(ap(c, v), oracle::BruteForceAp(in.gts, in.dets, 0.5, v), 1e-9);
    }
  }
}

TEST(ApTest, CurveInvariants) {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance in = RandomInstance(rng, 40, trial % 3 == 0);
    if (!HasRealGt(in)) continue;
    const RPCurve c = rp_curve(in.gts, in.dets, 1, 0.5);
    ASSERT_EQ(c.points.size(), c.interpolated_precision.size());
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      double best = 0.0;
      for (std::size_t j = i; j < c.points.size(); ++j) {
        best = std::max(best, c.points[j].precision);
      }
      EXPECT_EQ(c.interpolated_precision[i], best);
      if (i > 0) {
        EXPECT_GE(c.points[i].recall, c.points[i - 1].recall);
        EXPECT_LE(c.points[i].score, c.points[i - 1].score);
        EXPECT_LE(c.interpolated_precision[i], c.interpolated_precision[i - 1]);
      }
    }
    if (!c.points.empty()) {
      EXPECT_EQ(interpolated_precision_at(c, 0.0), c.interpolated_precision[0]);
    }
  }
}

TEST(ApTest, InvariantUnderIncreasingScoreTransform) {
  std::mt19937_64 rng(63);
  for (int trial = 0; trial < 200; ++trial) {
    Instance in = RandomInstance(rng, 30, trial % 2 == 0);
    if (!HasRealGt(in)) continue;
    const RPCurve before = rp_curve(in.gts, in.dets, 1, 0.5);
    for (auto& d : in.dets) d.score = d.score * d.score * d.score;
    const RPCurve after = rp_curve(in.gts, in.dets, 1, 0.5);
    for (ApVariant v : kVariants) EXPECT_EQ(ap(before, v), ap(after, v));
  }
}

TEST(ApTest, SampledVariantsApproachContinuous) {
  std::mt19937_64 rng(64);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<GroundTruth> gts;
    std::vector<Detection> dets;
    for (int i = 0; i < 200; ++i) {
      const BoundingBox b(30.0 * i, 0, 30.0 * i + 20, 20);
      gts.push_back(Gt(b));
      dets.push_back(Det(b, u(rng)));
      dets.push_back(Det(BoundingBox(30.0 * i, 100, 30.0 * i + 20, 120), u(rng) * 0.8));
    }
    const RPCurve c = rp_curve(gts, dets, 1, 0.5);
    const double cont = ap(c, ApVariant::kContinuous);
    EXPECT_NEAR(ap(c, ApVariant::kCoco101), cont, 0.02);
    EXPECT_NEAR(ap(c, ApVariant::kPascal11), cont, 0.05);
  }
}

TEST(MapOverTausTest, PerfectDetectorScoresOne) {
  const Fixture f = perfect_fixture(4, 3);
  const std::vector<ClassId> ids{1, 2, 3};
  EXPECT_EQ(map_over_taus(f.gts, f.dets, ids, coco_taus()).map, 1.0);
}

TEST(MapOverTausTest, LooseHitsOnlyCountAtLowestTau) {
  std::vector<GroundTruth> gts;
  std::vector<Detection> dets;
  for (int i = 0; i < 5; ++i) {
    gts.push_back(Gt(BoundingBox(100.0 * i, 0, 100.0 * i + 20, 20)));
    dets.push_back(Det(BoundingBox(100.0 * i, 0, 100.0 * i + 20, 10.5), 0.9 - 0.1 * i));  // IoU 0.525
  }
  const std::vector<ClassId> ids{1};
  const MapResult r = map_over_taus(gts, dets, ids, coco_taus());
  const double at_half = ap(rp_curve(gts, dets, 1, 0.5), ApVariant::kCoco101);
  EXPECT_GT(at_half, 0.0);
  EXPECT_NEAR(r.map, at_half / 10.0, 1e-15);
}

TEST(MapOverTausTest, EqualsMeanOfIndependentApValues) {
  const SyntheticDataset data = synthetic_coco({60, 5, 5, 25, 9});
  const std::vector<ClassId> ids{1, 2, 3, 4, 5, 99};
  const std::vector<double> taus = coco_taus();
  const MapResult r = map_over_taus(data.dataset.ground_truths, data.detections, ids, taus, 3);
  EXPECT_EQ(r.excluded, std::vector<ClassId>{99});
  double sum = 0.0;
  int n = 0;
  for (ClassId id : {1, 2, 3, 4, 5}) {
    for (std::size_t k = 0; k < taus.size(); ++k) {
      const double v = ap(rp_curve(data.dataset.ground_truths, data.detections, id, taus[k]),
                          ApVariant::kCoco101);
      EXPECT_EQ(r.per_class.at(id)[k], v);
      sum += v;
      ++n;
    }
  }
  EXPECT_NEAR(r.map, sum / n, 1e-12);
  EXPECT_THROW(map_over_taus({}, {}, ids, taus), NothingEvaluable);
}

TEST(CocoTausTest, TenEvenlySpacedValues) {
  const std::vector<double> t = coco_taus();
  ASSERT_EQ(t.size(), 10u);
  EXPECT_EQ(t.front(), 0.5);
  EXPECT_EQ(t[1], 0.55);
  EXPECT_EQ(t.back(), 0.95);
}

}  // namespace
}  // namespace lrp
