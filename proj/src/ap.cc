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
#include <string>

#include "lrp/errors.h"
#include "lrp/olrp.h"
#include "lrp/parallel.h"

namespace lrp {

namespace {

RPCurve CurveForClass(std::span<const GroundTruth> gts,
                      std::span<const Detection> dets, ClassId class_id,
                      double tau) {
  RPCurve curve;
  curve.class_id = class_id;
  curve.tau = tau;
  curve.n_gt = static_cast<std::size_t>(std::count_if(
      gts.begin(), gts.end(), [](const GroundTruth& g) { return !g.ignore; }));
  if (curve.n_gt == 0) {
    throw InvalidArgument("rp_curve: class " + std::to_string(class_id) +
                          " has no ground truth, recall is undefined");
  }

  const MatchResult m = match_greedy(gts, dets, 0.0, tau);
  const std::vector<std::size_t> order = score_order(dets);
  const double n_gt = static_cast<double>(curve.n_gt);

  std::size_t tp = 0, fp = 0;
  for (std::size_t d : order) {
    const DetectionOutcome outcome = m.outcomes[d];
    if (outcome == DetectionOutcome::kTruePositive) {
      ++tp;
    } else if (outcome == DetectionOutcome::kFalsePositive) {
      ++fp;
    } else {
      continue;
    }
    curve.points.push_back(
        {static_cast<double>(tp) / n_gt,
         static_cast<double>(tp) / static_cast<double>(tp + fp),
         dets[d].score, d});
  }
  // A threshold equal to a shared score admits the whole group.
  for (std::size_t i = curve.points.size(); i-- > 1;) {
    if (curve.points[i - 1].score == curve.points[i].score) {
      curve.points[i - 1].recall = curve.points[i].recall;
      curve.points[i - 1].precision = curve.points[i].precision;
    }
  }

  curve.interpolated_precision.resize(curve.points.size());
  double running = 0.0;
  for (std::size_t i = curve.points.size(); i-- > 0;) {
    running = std::max(running, curve.points[i].precision);
    curve.interpolated_precision[i] = running;
  }
  return curve;
}

double MeanAtRecallLevels(const RPCurve& curve, int intervals) {
  double sum = 0.0;
  for (int k = 0; k <= intervals; ++k) {
    sum += interpolated_precision_at(curve, static_cast<double>(k) / intervals);
  }
  return sum / static_cast<double>(intervals + 1);
}

}  // namespace

std::string_view to_string(ApVariant v) {
  switch (v) {
    case ApVariant::kContinuous:
      return "continuous";
    case ApVariant::kPascal11:
      return "pascal11";
    case ApVariant::kCoco101:
      return "coco101";
  }
  return "unknown";
}

ApVariant parse_ap_variant(std::string_view name) {
  if (name == "continuous") return ApVariant::kContinuous;
  if (name == "pascal11") return ApVariant::kPascal11;
  if (name == "coco101") return ApVariant::kCoco101;
  throw InvalidArgument("unknown AP variant '" + std::string(name) +
                        "' (expected continuous, pascal11 or coco101)");
}

RPCurve rp_curve(std::span<const GroundTruth> gts,
                 std::span<const Detection> dets, ClassId class_id,
                 double tau) {
  std::vector<GroundTruth> cls_gts;
  std::vector<Detection> cls_dets;
  for (const auto& g : gts) {
    if (g.class_id == class_id) cls_gts.push_back(g);
  }
  for (const auto& d : dets) {
    if (d.class_id == class_id) cls_dets.push_back(d);
  }
  RPCurve curve = CurveForClass(cls_gts, cls_dets, class_id, tau);
  // Report indices into the caller's detection list.
  std::vector<std::size_t> original;
  original.reserve(cls_dets.size());
  for (std::size_t i = 0; i < dets.size(); ++i) {
    if (dets[i].class_id == class_id) original.push_back(i);
  }
  for (auto& p : curve.points) p.detection = original[p.detection];
  return curve;
}

double interpolated_precision_at(const RPCurve& curve, double recall) {
  // Recall is non-decreasing, so the points with recall >= r form a suffix.
  const auto it = std::lower_bound(
      curve.points.begin(), curve.points.end(), recall,
      [](const RpPoint& p, double r) { return p.recall < r; });
  if (it == curve.points.end()) return 0.0;
  return curve.interpolated_precision[static_cast<std::size_t>(
      it - curve.points.begin())];
}

double ap(const RPCurve& curve, ApVariant variant) {
  switch (variant) {
    case ApVariant::kContinuous: {
      double area = 0.0;
      double prev_recall = 0.0;
      for (std::size_t i = 0; i < curve.points.size(); ++i) {
        const double r = curve.points[i].recall;
        if (r > prev_recall) {
          area += (r - prev_recall) * curve.interpolated_precision[i];
          prev_recall = r;
        }
      }
      return area;
    }
    case ApVariant::kPascal11:
      return MeanAtRecallLevels(curve, 10);
    case ApVariant::kCoco101:
      return MeanAtRecallLevels(curve, 100);
  }
  return 0.0;
}

MapResult map_over_taus(std::span<const GroundTruth> gts,
                        std::span<const Detection> dets,
                        std::span<const ClassId> class_ids,
                        std::span<const double> taus, unsigned workers) {
  for (double tau : taus) {
    if (!(tau >= 0.0 && tau <= kMaxEvalTau)) {
      throw InvalidArgument("IoU threshold tau must lie in [0, 0.999]");
    }
  }
  if (taus.empty()) throw InvalidArgument("map_over_taus: no tau values");

  std::vector<ClassId> ids(class_ids.begin(), class_ids.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  const auto groups = group_by_class(gts, dets);
  const ClassData empty;

  std::vector<std::vector<double>> aps(ids.size());
  parallel_for(ids.size(), workers, [&](std::size_t i) {
    const auto it = groups.find(ids[i]);
    const ClassData& data = it == groups.end() ? empty : it->second;
    const bool has_gt =
        std::any_of(data.gts.begin(), data.gts.end(),
                    [](const GroundTruth& g) { return !g.ignore; });
    if (!has_gt) return;
    for (double tau : taus) {
      aps[i].push_back(
          ap(CurveForClass(data.gts, data.dets, ids[i], tau), ApVariant::kCoco101));
    }
  });

  MapResult out;
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (aps[i].empty()) {
      out.excluded.push_back(ids[i]);
      continue;
    }
    for (double v : aps[i]) sum += v;
    count += aps[i].size();
    out.per_class.emplace(ids[i], std::move(aps[i]));
  }
  if (count == 0) {
    throw NothingEvaluable("map_over_taus: no class has ground truth");
  }
  out.map = sum / static_cast<double>(count);
  return out;
}

std::vector<double> coco_taus() {
  std::vector<double> taus;
  for (int k = 0; k < 10; ++k) taus.push_back((50 + 5 * k) / 100.0);
  return taus;
}

}  // namespace lrp
