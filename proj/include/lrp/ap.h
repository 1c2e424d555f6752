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
#ifndef LRP_AP_H_
#define LRP_AP_H_

#include <cstddef>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "lrp/matching.h"

namespace lrp {

enum class ApVariant {
  kContinuous,  // exact area under the interpolated step curve
  kPascal11,    // mean over recall {0, 0.1, ..., 1}
  kCoco101,     // mean over recall {0, 0.01, ..., 1}
};

std::string_view to_string(ApVariant v);
// Accepts "continuous", "pascal11", "coco101". Throws InvalidArgument.
ApVariant parse_ap_variant(std::string_view name);

struct RpPoint {
  double recall = 0.0;
  double precision = 0.0;
  double score = 0.0;
  std::size_t detection = 0;  // input index
};

// Recall-precision curve with one point per evaluated detection in score
// order. A point reports the counts with every detection scoring at least
// as high included, so detections sharing a score share a point value.
struct RPCurve {
  ClassId class_id = 0;
  double tau = 0.5;
  std::size_t n_gt = 0;
  std::vector<RpPoint> points;
  // interpolated_precision[i] = max over j >= i of points[j].precision
  std::vector<double> interpolated_precision;
};

// Throws InvalidArgument when the class has no (non-ignored) ground truth.
RPCurve rp_curve(std::span<const GroundTruth> gts,
                 std::span<const Detection> dets, ClassId class_id,
                 double tau);

// Interpolated precision at recall r: the best precision among points with
// recall >= r, or 0 when there is none.
double interpolated_precision_at(const RPCurve& curve, double recall);

double ap(const RPCurve& curve, ApVariant variant);

struct MapResult {
  double map = 0.0;
  // Per class, AP (coco101) at each tau in input order.
  std::map<ClassId, std::vector<double>> per_class;
  // Classes without ground truth; AP is undefined for them.
  std::vector<ClassId> excluded;
};

// Mean of AP (coco101) over classes and taus. Throws NothingEvaluable if
// every class is excluded.
MapResult map_over_taus(std::span<const GroundTruth> gts,
                        std::span<const Detection> dets,
                        std::span<const ClassId> class_ids,
                        std::span<const double> taus, unsigned workers = 1);

// 0.50, 0.55, ..., 0.95
std::vector<double> coco_taus();

}  // namespace lrp

#endif  // LRP_AP_H_
