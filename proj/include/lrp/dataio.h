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
#ifndef LRP_DATAIO_H_
#define LRP_DATAIO_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lrp/ap.h"
#include "lrp/matching.h"
#include "lrp/olrp.h"
#include "lrp/video_link.h"

namespace lrp {

inline constexpr std::string_view kReportSchema = "lrp_report_v1";
inline constexpr std::string_view kCurvesSchema = "lrp_curves_v1";
inline constexpr std::string_view kThresholdsSchema = "lrp_thresholds_v1";

struct ImageInfo {
  ImageId id = 0;
  std::optional<double> width;
  std::optional<double> height;
};

struct Category {
  ClassId id = 0;
  std::string name;
};

// COCO ground truth. Boxes are converted to corner form on load.
struct Dataset {
  std::vector<ImageInfo> images;
  std::vector<Category> categories;
  std::vector<GroundTruth> ground_truths;
  std::vector<std::int64_t> annotation_ids;  // parallel to ground_truths
  // Non-fatal findings, e.g. boxes extending past the image border.
  std::vector<std::string> warnings;

  bool has_image(ImageId id) const;
  bool has_category(ClassId id) const;
  std::vector<ClassId> category_ids() const;
  std::string category_name(ClassId id) const;
};

// Parse errors raise DataError whose field() names the offending element
// (e.g. "annotations[3].bbox") or the byte offset of a syntax error.
Dataset parse_ground_truth(std::string_view json_text);
Dataset load_ground_truth(const std::filesystem::path& path);

// COCO results: [{"image_id", "category_id", "bbox": [x, y, w, h], "score"}].
std::vector<Detection> parse_detections(std::string_view json_text,
                                        const Dataset& dataset);
std::vector<Detection> load_detections(const std::filesystem::path& path,
                                       const Dataset& dataset);

std::string ground_truth_to_json(const Dataset& dataset);
std::string detections_to_json(std::span<const Detection> dets);

// ---------------------------------------------------------------------------
// Evaluation reports

struct EvalConfig {
  double tau = kDefaultTau;
  std::vector<double> taus;  // for mAP
  double grid_step = kDefaultGridStep;
  ApVariant ap_variant = ApVariant::kCoco101;
};

struct ClassRow {
  ClassId class_id = 0;
  std::string name;
  std::size_t n_gt = 0;
  std::size_t n_det = 0;
  bool evaluable = false;
  std::optional<double> olrp;
  std::optional<double> olrp_iou;
  std::optional<double> olrp_fp;
  std::optional<double> olrp_fn;
  std::optional<double> s_star;
  // AP at tau in each variant; absent without ground truth.
  std::optional<double> ap_continuous;
  std::optional<double> ap_pascal11;
  std::optional<double> ap_coco101;
  // Mean coco101 AP over config.taus.
  std::optional<double> map;
};

struct SummaryRow {
  std::optional<double> molrp;
  std::optional<double> molrp_iou;
  std::optional<double> molrp_fp;
  std::optional<double> molrp_fn;
  std::optional<double> map;         // over classes and config.taus
  std::optional<double> map_at_tau;  // config.ap_variant at config.tau
  std::optional<double> s_star_min;
  std::optional<double> s_star_max;
  std::size_t n_evaluated = 0;
};

struct EvalReport {
  EvalConfig config;
  std::vector<ClassRow> rows;
  SummaryRow summary;
};

enum class ReportFormat { kJson, kCsv };
ReportFormat parse_report_format(std::string_view name);

// Reals are printed with four decimals; absent values are null (JSON) or
// empty (CSV). Field order is fixed.
std::string report_to_json(const EvalReport& report);
std::string report_to_csv(const EvalReport& report);
std::string format_report(const EvalReport& report, ReportFormat format);
void export_report(const EvalReport& report, ReportFormat format,
                   const std::filesystem::path& path);

EvalReport parse_report_json(std::string_view text);
EvalReport parse_report_csv(std::string_view text);

// ---------------------------------------------------------------------------
// Curves

struct CurveSet {
  SweepResult sweep;
  std::optional<RPCurve> rp;
};

// Long-format CSV. "sweep" rows: one per defined grid sample, with the s*
// sample flagged is_optimal. "rp" rows: one per RP-curve point.
std::string curves_to_csv(std::span<const CurveSet> curves);
void export_curves(std::span<const CurveSet> curves,
                   const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Class thresholds (class id -> s*)

struct ThresholdEntry {
  ClassId class_id = 0;
  std::string name;
  double s_star = 0.0;
  std::optional<double> olrp;
  std::string warning;
};

struct ThresholdTable {
  double tau = kDefaultTau;
  double grid_step = kDefaultGridStep;
  std::vector<ThresholdEntry> entries;

  ThresholdPolicy policy(double general = 0.5) const;
};

std::string thresholds_to_json(const ThresholdTable& table);
ThresholdTable parse_thresholds(std::string_view text);
ThresholdTable load_thresholds(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Video stream fixtures
//
// {"frames": [{"frame_index": 0,
//              "detections": [{"class_id": 1, "bbox": [x, y, w, h],
//                              "class_scores": [...]}],
//              "ground_truths": [{"class_id": 1, "bbox": [x, y, w, h]}]}]}
//
// "ground_truths" is optional. A detection's score is the largest entry of
// its class_scores.

struct StreamFixture {
  std::vector<FrameDetections> frames;
  std::vector<GroundTruth> ground_truths;  // image_id = frame_index
};

StreamFixture parse_stream(std::string_view text);
StreamFixture load_stream(const std::filesystem::path& path);
std::string stream_to_json(const StreamFixture& fixture);
// Output of run_stream in the fixture layout, with "score", "raw_score",
// "tubelet_id" and "dominant" added per detection.
std::string linked_stream_to_json(std::span<const LinkedFrame> frames);

// Whole-file helpers; throw DataError on I/O failure.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace lrp

#endif  // LRP_DATAIO_H_
