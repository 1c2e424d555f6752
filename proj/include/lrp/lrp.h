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
#ifndef LRP_LRP_H_
#define LRP_LRP_H_

#include <cstddef>
#include <optional>
#include <span>

#include "lrp/geometry.h"
#include "lrp/matching.h"

namespace lrp {

// LRP error of one detection set Y_s against ground truths X, with its
// three components and the weights that recombine them.
//
// A component is absent (not zero) when its denominator is empty:
// localisation without true positives, FP without detections, FN without
// ground truths.
struct LrpBreakdown {
  double total = 0.0;
  std::optional<double> loc_component;
  std::optional<double> fp_component;
  std::optional<double> fn_component;
  std::size_t n_tp = 0;
  std::size_t n_fp = 0;
  std::size_t n_fn = 0;
  std::size_t z = 0;    // n_tp + n_fp + n_fn
  double tau = 0.5;
  double w_iou = 0.0;   // n_tp / (1 - tau)
  double w_fp = 0.0;    // |Y_s| = n_tp + n_fp
  double w_fn = 0.0;    // |X|   = n_tp + n_fn

  friend bool operator==(const LrpBreakdown&, const LrpBreakdown&) = default;
};

// Builds a breakdown from counts and the summed localisation error
// sum(1 - IoU) over true positives. The total uses the compact form
//   (sum(1 - IoU) / (1 - tau) + n_fp + n_fn) / (n_tp + n_fp + n_fn).
// Throws UndefinedLrp when all counts are zero.
LrpBreakdown lrp_from_counts(std::size_t n_tp, std::size_t n_fp,
                             std::size_t n_fn, double loc_error_sum,
                             double tau);

// n_gt is |X| (non-ignored) and n_det is |Y_s|; both must agree with m.
LrpBreakdown lrp_components(const MatchResult& m, std::size_t n_gt,
                            std::size_t n_det, double tau);
LrpBreakdown lrp_components(const MatchResult& m, double tau);

double lrp_total(const MatchResult& m, std::size_t n_gt, std::size_t n_det,
                 double tau);
double lrp_total(const MatchResult& m, double tau);

// Weighted recombination of the components:
//   (w_iou * loc + w_fp * fp + w_fn * fn) / z,
// with absent components contributing nothing.
double lrp_weighted_total(const LrpBreakdown& b);

// LRP under optimal (Hungarian) assignment; symmetric in its arguments.
double lrp_metric(std::span<const BoundingBox> xs,
                  std::span<const BoundingBox> ys, double tau);

enum class BaseDistance { kOneMinusIou };

struct DasaParams {
  double p = 1.0;  // norm order, >= 1
  double c = 0.5;  // cutoff in (0, 1]
  BaseDistance base_distance = BaseDistance::kOneMinusIou;
};

// Cutoff set distance with l = max(|xs|, |ys|):
//   ((sum_TP d^p + c^p * (N_FP + N_FN)) / l)^(1/p)
// using match_optimal at tau = 1 - c. Throws UndefinedLrp if both sets are
// empty and InvalidArgument for p < 1 or c outside (0, 1].
double dasa(std::span<const BoundingBox> xs, std::span<const BoundingBox> ys,
            const DasaParams& params);

}  // namespace lrp

#endif  // LRP_LRP_H_
