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
#include "lrp/dataio.h"

#include <cstring>
#include <filesystem>
#include <random>

#include "gtest/gtest.h"
#include "lrp/errors.h"
#include "lrp/evaluate.h"
#include "lrp/synthetic.h"

namespace lrp {
namespace {

constexpr const char* kMinimal = R"({
  "images": [{"id": 1, "width": 100, "height": 100}],
  "categories": [{"id": 7, "name": "cat"}],
  "annotations": [{"id": 5, "image_id": 1, "category_id": 7,
                   "bbox": [10, 20, 30, 40], "iscrowd": 0}]
})";

std::string WithAnnotation(const std::string& ann) {
  return R"({"images": [{"id": 1, "width": 100, "height": 100}],
             "categories": [{"id": 7, "name": "cat"}],
             "annotations": [)" + ann + "]}";
}

std::string FieldOf(const std::string& json) {
  try {
    parse_ground_truth(json);
  } catch (const DataError& e) {
    return e.field() + " | " + e.what();
  }
  return "accepted";
}

TEST(GroundTruthTest, MinimalFile) {
  const Dataset ds = parse_ground_truth(kMinimal);
  ASSERT_EQ(ds.ground_truths.size(), 1u);
  const GroundTruth& g = ds.ground_truths[0];
  EXPECT_EQ(g.box, BoundingBox(10, 20, 40, 60));
  EXPECT_EQ(g.image_id, 1);
  EXPECT_EQ(g.class_id, 7);
  EXPECT_FALSE(g.ignore);
  EXPECT_EQ(ds.annotation_ids, std::vector<std::int64_t>{5});
  EXPECT_EQ(ds.category_name(7), "cat");
  EXPECT_TRUE(ds.warnings.empty());
}

TEST(GroundTruthTest, CrowdBecomesIgnore) {
  const Dataset ds = parse_ground_truth(WithAnnotation(
      R"({"id": 1, "image_id": 1, "category_id": 7, "bbox": [0, 0, 5, 5], "iscrowd": 1})"));
  EXPECT_TRUE(ds.ground_truths[0].ignore);
}

TEST(GroundTruthTest, DiagnosticsNameTheField) {
  EXPECT_NE(FieldOf(WithAnnotation(
                R"({"id": 9, "image_id": 4, "category_id": 7, "bbox": [0, 0, 5, 5]})"))
                .find("annotations[0].image_id"),
            std::string::npos);
  EXPECT_NE(FieldOf(WithAnnotation(
                R"({"id": 9, "image_id": 4, "category_id": 7, "bbox": [0, 0, 5, 5]})"))
                .find("4"),
            std::string::npos);
  const std::string zero = FieldOf(WithAnnotation(
      R"({"id": 17, "image_id": 1, "category_id": 7, "bbox": [0, 0, 0, 5]})"));
  EXPECT_NE(zero.find("annotations[0].bbox"), std::string::npos);
  EXPECT_NE(zero.find("annotation id 17"), std::string::npos);
  EXPECT_NE(FieldOf(WithAnnotation(R"({"id": 1, "image_id": 1, "bbox": [0, 0, 1, 1]})"))
                .find("annotations[0].category_id"),
            std::string::npos);
  EXPECT_NE(FieldOf(WithAnnotation(
                R"({"id": 1, "image_id": 1, "category_id": 7, "bbox": [0, 0, 1]})"))
                .find("annotations[0].bbox"),
            std::string::npos);
  EXPECT_NE(FieldOf(WithAnnotation(
                R"({"id": 1, "image_id": 1, "category_id": 7, "bbox": [-1, 0, 1, 1]})"))
                .find("negative"),
            std::string::npos);
  EXPECT_NE(FieldOf(R"({"images": [], "categories": []})").find("annotations"),
            std::string::npos);
  EXPECT_NE(FieldOf(R"({"images": [{"id": 1}, {"id": 1}], "categories": [], "annotations": []})")
                .find("images[1].id"),
            std::string::npos);
}

TEST(GroundTruthTest, MalformedJsonReportsByteOffset) {
  const std::string d = FieldOf(R"({"images": [}")");
  EXPECT_NE(d.find("byte"), std::string::npos);
}

TEST(GroundTruthTest, BoxPastImageBorderWarns) {
  const Dataset ds = parse_ground_truth(WithAnnotation(
      R"({"id": 3, "image_id": 1, "category_id": 7, "bbox": [90, 90, 20, 5]})"));
  ASSERT_EQ(ds.warnings.size(), 1u);
  EXPECT_NE(ds.warnings[0].find("annotation id 3"), std::string::npos);
  EXPECT_EQ(ds.ground_truths[0].box.x_max(), 110);  // not clipped
}

TEST(DetectionsTest, ParsesAndValidates) {
  const Dataset ds = parse_ground_truth(kMinimal);
  EXPECT_TRUE(parse_detections("[]", ds).empty());
  const auto dets = parse_detections(
      R"([{"image_id": 1, "category_id": 7, "bbox": [1, 2, 3, 4], "score": 0.25}])", ds);
  ASSERT_EQ(dets.size(), 1u);
  EXPECT_EQ(dets[0].box, BoundingBox(1, 2, 4, 6));
  EXPECT_EQ(dets[0].score, 0.25);
  try {
    parse_detections(
        R"([{"image_id": 1, "category_id": 7, "bbox": [1, 2, 3, 4], "score": 0.5},
            {"image_id": 1, "category_id": 7, "bbox": [1, 2, 3, 4], "score": 1.5}])",
        ds);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_EQ(e.field(), "detections[1].score");
  }
  EXPECT_THROW(parse_detections(
                   R"([{"image_id": 2, "category_id": 7, "bbox": [1, 2, 3, 4], "score": 0.5}])", ds),
               DataError);
  EXPECT_THROW(parse_detections(
                   R"([{"image_id": 1, "category_id": 8, "bbox": [1, 2, 3, 4], "score": 0.5}])", ds),
               DataError);
  EXPECT_THROW(parse_detections(R"({"image_id": 1})", ds), DataError);
}

TEST(RoundTripTest, WriteThenLoadIsBitExact) {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(0.0, 500.0), s(0.0, 1.0);
  Dataset ds;
  ds.images = {{1, 640.0, 480.0}, {2, std::nullopt, std::nullopt}};
  ds.categories = {{3, "a,b \"quoted\""}, {4, "plain"}};
  std::vector<Detection> dets;
  for (int i = 0; i < 500; ++i) {
    const double x = u(rng), y = u(rng), w = u(rng) / 7 + 1e-3, h = u(rng) / 3 + 1e-3;
    dets.push_back({1 + i % 2, 3 + i % 2, BoundingBox::FromXywh(x, y, w, h), s(rng)});
    ds.ground_truths.push_back({1 + i % 2, 3 + i % 2, BoundingBox::FromXywh(y, x, h, w), i % 5 == 0});
    ds.annotation_ids.push_back(1000 + i);
  }
  const Dataset ds2 = parse_ground_truth(ground_truth_to_json(ds));
  ASSERT_EQ(ds2.ground_truths.size(), ds.ground_truths.size());
  for (std::size_t i = 0; i < ds.ground_truths.size(); ++i) {
    EXPECT_EQ(ds2.ground_truths[i].box, ds.ground_truths[i].box);
    EXPECT_EQ(ds2.ground_truths[i].ignore, ds.ground_truths[i].ignore);
  }
  EXPECT_EQ(ds2.annotation_ids, ds.annotation_ids);
  EXPECT_EQ(ds2.categories[0].name, ds.categories[0].name);
  const auto dets2 = parse_detections(detections_to_json(dets), ds2);
  ASSERT_EQ(dets2.size(), dets.size());
  for (std::size_t i = 0; i < dets.size(); ++i) {
    EXPECT_EQ(dets2[i].box, dets[i].box);
    EXPECT_EQ(dets2[i].score, dets[i].score);
    EXPECT_EQ(dets2[i].image_id, dets[i].image_id);
    EXPECT_EQ(dets2[i].class_id, dets[i].class_id);
  }
}

TEST(RoundTripTest, FileHelpers) {
  const auto path = std::filesystem::temp_directory_path() / "lrp_dataio_roundtrip.json";
  write_file(path, kMinimal);
  EXPECT_EQ(load_ground_truth(path).ground_truths.size(), 1u);
  std::filesystem::remove(path);
  EXPECT_THROW(load_ground_truth(path), DataError);
  EXPECT_THROW(write_file("/nonexistent_dir_lrp/x.json", "x"), DataError);
}

EvalReport SampleReport() {
  const Fixture f = same_ap_loose();
  const Category cat{1, "thing, big"};
  return evaluate(f.gts, f.dets, {&cat, 1}).report;
}

void ExpectReportsClose(const EvalReport& a, const EvalReport& b) {
  auto close = [](const std::optional<double>& x, const std::optional<double>& y) {
    ASSERT_EQ(x.has_value(), y.has_value());
    if (x) EXPECT_NEAR(*x, *y, 5e-5);
  };
  EXPECT_NEAR(a.config.tau, b.config.tau, 5e-5);
  EXPECT_NEAR(a.config.grid_step, b.config.grid_step, 5e-5);
  EXPECT_EQ(a.config.ap_variant, b.config.ap_variant);
  ASSERT_EQ(a.config.taus.size(), b.config.taus.size());
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const ClassRow &x = a.rows[i], &y = b.rows[i];
    EXPECT_EQ(x.class_id, y.class_id);
    EXPECT_EQ(x.name, y.name);
    EXPECT_EQ(x.n_gt, y.n_gt);
    EXPECT_EQ(x.n_det, y.n_det);
    EXPECT_EQ(x.evaluable, y.evaluable);
    close(x.olrp, y.olrp);
    close(x.olrp_iou, y.olrp_iou);
    close(x.olrp_fp, y.olrp_fp);
    close(x.olrp_fn, y.olrp_fn);
    close(x.s_star, y.s_star);
    close(x.ap_continuous, y.ap_continuous);
    close(x.ap_pascal11, y.ap_pascal11);
    close(x.ap_coco101, y.ap_coco101);
    close(x.map, y.map);
  }
  close(a.summary.molrp, b.summary.molrp);
  close(a.summary.molrp_iou, b.summary.molrp_iou);
  close(a.summary.map, b.summary.map);
  close(a.summary.map_at_tau, b.summary.map_at_tau);
  close(a.summary.s_star_min, b.summary.s_star_min);
  close(a.summary.s_star_max, b.summary.s_star_max);
  EXPECT_EQ(a.summary.n_evaluated, b.summary.n_evaluated);
}

TEST(ReportTest, JsonAndCsvRoundTrip) {
  const EvalReport rep = SampleReport();
  ExpectReportsClose(rep, parse_report_json(report_to_json(rep)));
  ExpectReportsClose(rep, parse_report_csv(report_to_csv(rep)));
}

TEST(ReportTest, PerfectReportCsvRow) {
  const Fixture f = perfect_fixture(1, 1);
  const Category cat{1, "only"};
  const std::string csv = report_to_csv(evaluate(f.gts, f.dets, {&cat, 1}).report);
  EXPECT_EQ(csv.rfind("# lrp_report_v1", 0), 0u);
  EXPECT_NE(csv.find("class,1,only,1,1,1,0.0000,0.0000,0.0000,0.0000,"), std::string::npos);
  EXPECT_NE(csv.find(",1.0000,1.0000,1.0000,1.0000,,,"), std::string::npos);
}

TEST(ReportTest, SchemaAndDeterminism) {
  const EvalReport rep = SampleReport();
  const std::string json = report_to_json(rep);
  EXPECT_NE(json.find("\"schema\": \"lrp_report_v1\""), std::string::npos);
  EXPECT_NE(json.find("\"s_star\": 0.6000"), std::string::npos);
  EXPECT_EQ(json, report_to_json(SampleReport()));
  EXPECT_EQ(report_to_csv(rep), report_to_csv(SampleReport()));
  EXPECT_THROW(parse_report_json("{}"), DataError);
  EXPECT_THROW(parse_report_csv("nope"), DataError);
  EXPECT_THROW(parse_report_format("xml"), InvalidArgument);
}

TEST(ReportTest, AbsentValuesStayAbsent) {
  // Class 2 has detections only, so it has no AP values.
  const std::vector<GroundTruth> gts{{0, 1, BoundingBox(0, 0, 10, 10), false}};
  const std::vector<Detection> dets{{0, 2, BoundingBox(0, 0, 10, 10), 0.5}};
  const EvalReport rep = evaluate(gts, dets, {}).report;
  ASSERT_EQ(rep.rows.size(), 2u);
  EXPECT_FALSE(rep.rows[1].ap_coco101.has_value());
  EXPECT_FALSE(rep.rows[0].olrp_iou.has_value());
  const EvalReport back = parse_report_json(report_to_json(rep));
  EXPECT_FALSE(back.rows[1].ap_coco101.has_value());
  EXPECT_FALSE(parse_report_csv(report_to_csv(rep)).rows[1].ap_coco101.has_value());
}

std::size_t CountLines(const std::string& text, const std::string& prefix) {
  std::size_t n = 0, pos = 0;
  while (pos < text.size()) {
    const std::size_t end = text.find('\n', pos);
    if (text.compare(pos, prefix.size(), prefix) == 0) ++n;
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  return n;
}

TEST(CurvesTest, PerfectDetectorHasOneOptimalRecordAtItsScore) {
  const BoundingBox b(0, 0, 10, 10);
  const std::vector<GroundTruth> gts{{0, 1, b, false}};
  const std::vector<Detection> dets{{0, 1, b, 1.0}};
  const Evaluation ev = evaluate(gts, dets, {});
  const std::string csv = curves_to_csv(ev.curves());
  EXPECT_EQ(csv.rfind("# lrp_curves_v1\n", 0), 0u);
  EXPECT_EQ(CountLines(csv, "sweep,"), 101u);
  // Every grid point has the same perfect breakdown; s* is the last one.
  EXPECT_EQ(CountLines(csv, "sweep,1,0.5000,1.0000,1.0000,1.0000,,0.0000"), 1u);
  EXPECT_NE(csv.find("sweep,1,0.5000,1.0000,1.0000,1.0000,,0.0000,0.0000,0.0000,0.0000,1,0,0,1\n"),
            std::string::npos);
  std::size_t optimal = 0, pos = 0;
  while ((pos = csv.find(",1\n", pos)) != std::string::npos) {
    ++optimal;
    ++pos;
  }
  EXPECT_EQ(optimal, 1u);
}

TEST(CurvesTest, HalfRecallOptimumAtFullPrecision) {
  const Fixture f = same_ap_half_recall();
  const std::string csv = curves_to_csv(evaluate(f.gts, f.dets, {}).curves());
  EXPECT_NE(csv.find("sweep,1,0.5000,0.8000,0.5000,1.0000,,0.5000,0.0000,0.0000,0.5000,2,0,2,1\n"),
            std::string::npos);
  std::size_t optimal = 0, pos = 0;
  while ((pos = csv.find(",1\n", pos)) != std::string::npos) {
    ++optimal;
    ++pos;
  }
  EXPECT_EQ(optimal, 1u);
}

TEST(CurvesTest, RecordCountEqualsDefinedSamplesPlusRpPoints) {
  const SyntheticDataset data = synthetic_coco({40, 4, 4, 20, 3});
  const Evaluation ev = evaluate(data.dataset, data.detections, {});
  std::size_t defined = 0, rp = 0;
  for (const auto& c : ev.classes) {
    for (const auto& s : c.sweep.samples) defined += s.breakdown.has_value() && c.sweep.evaluable;
    if (c.rp) rp += c.rp->points.size();
  }
  const std::string csv = curves_to_csv(ev.curves());
  EXPECT_EQ(CountLines(csv, "sweep,"), defined);
  EXPECT_EQ(CountLines(csv, "rp,"), rp);
}

TEST(ThresholdsTest, RoundTripAndPolicy) {
  ThresholdTable t;
  t.entries = {{1, "a", 0.3, 0.15, ""}, {2, "b", 0.8, std::nullopt, "no detections"}};
  const ThresholdTable back = parse_thresholds(thresholds_to_json(t));
  ASSERT_EQ(back.entries.size(), 2u);
  EXPECT_EQ(back.entries[0].s_star, 0.3);
  EXPECT_EQ(back.entries[1].warning, "no detections");
  EXPECT_FALSE(back.entries[1].olrp.has_value());
  const ThresholdPolicy p = back.policy(0.5);
  EXPECT_EQ(p.for_class(1), 0.3);
  EXPECT_EQ(p.for_class(2), 0.8);
  EXPECT_EQ(p.for_class(3), 0.5);
  EXPECT_THROW(parse_thresholds(R"({"schema": "lrp_thresholds_v1", "tau": 0.5, "grid_step": 0.01,
                                    "thresholds": [{"class_id": 1, "s_star": 2}]})"),
               DataError);
}

TEST(StreamTest, RoundTrip) {
  const StreamFixture fx = synthetic_stream(designed_threshold_stream());
  const StreamFixture back = parse_stream(stream_to_json(fx));
  ASSERT_EQ(back.frames.size(), fx.frames.size());
  ASSERT_EQ(back.ground_truths.size(), fx.ground_truths.size());
  for (std::size_t f = 0; f < fx.frames.size(); ++f) {
    ASSERT_EQ(back.frames[f].detections.size(), fx.frames[f].detections.size());
    for (std::size_t i = 0; i < fx.frames[f].detections.size(); ++i) {
      const auto& a = fx.frames[f].detections[i];
      const auto& b = back.frames[f].detections[i];
      EXPECT_EQ(a.det.box, b.det.box);
      EXPECT_EQ(a.det.score, b.det.score);
      EXPECT_EQ(a.class_scores, b.class_scores);
    }
  }
  EXPECT_THROW(parse_stream(R"({"frames": [{"frame_index": 0, "detections": [
      {"class_id": 1, "bbox": [0, 0, 1, 1], "class_scores": [0.5, 0.4]}]}]})"),
               DataError);
  EXPECT_THROW(parse_stream(R"({"frames": [{"frame_index": 1, "detections": []},
                                         {"frame_index": 1, "detections": []}]})"),
               DataError);
}

}  // namespace
}  // namespace lrp
