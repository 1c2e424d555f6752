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
#ifndef LRP_OLRP_H_
#define LRP_OLRP_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lrp/lrp.h"
#include "lrp/matching.h"

namespace lrp {

inline constexpr double kDefaultTau = 0.5;
inline constexpr double kDefaultGridStep = 0.01;
// Evaluation paths reject tau above this; w_iou diverges as tau -> 1.
inline constexpr double kMaxEvalTau = 0.999;

// Score thresholds {0, step, 2 step, ..., 1}. The step must divide 1.
std::vector<double> score_grid(double step = kDefaultGridStep);

struct SweepSample {
  double s = 0.0;
  // Absent where LRP is undefined (no ground truths and Y_s empty).
  std::optional<LrpBreakdown> breakdown;
  std::size_t n_retained = 0;  // |{d : score >= s}|, ignored ones included
};

struct SweepResult {
  ClassId class_id = 0;
  double tau = kDefaultTau;
  // False when the class has neither ground truths nor detections.
  bool evaluable = true;
  // True when the class has ground truths but no detections at all; s_star
  // is then reported as 0 with oLRP 1.
  bool no_detections = false;
  std::vector<SweepSample> samples;
  double s_star = 0.0;
  double olrp = 1.0;
  std::optional<double> olrp_iou;
  std::optional<double> olrp_fp;
  std::optional<double> olrp_fn;
  std::size_t n_gt = 0;   // non-ignored ground truths
  std::size_t n_det = 0;  // all detections of the class

  // Sample at s_star, or nullptr for a non-evaluable class.
  const SweepSample* optimal() const;
};

struct ClassData {
  std::vector<GroundTruth> gts;
  std::vector<Detection> dets;
};

// Splits a mixed-class collection, preserving input order inside a class.
std::map<ClassId, ClassData> group_by_class(std::span<const GroundTruth> gts,
                                            std::span<const Detection> dets);

// Exhaustive sweep of the score threshold over score_grid(grid_step) for
// one class. Inputs may contain other classes; they are skipped. oLRP is
// the minimum total over defined samples; among grid points attaining it
// s_star is the largest.
SweepResult sweep_class(std::span<const GroundTruth> gts,
                        std::span<const Detection> dets, ClassId class_id,
                        double tau = kDefaultTau,
                        double grid_step = kDefaultGridStep);

struct MoLrpReport {
  double tau = kDefaultTau;
  std::map<ClassId, SweepResult> per_class;  // evaluable classes only
  std::vector<ClassId> not_evaluable;
  double molrp = 0.0;
  // Means over the classes where the component is present.
  std::optional<double> molrp_iou;
  std::optional<double> molrp_fp;
  std::optional<double> molrp_fn;
  double s_star_min = 0.0;
  double s_star_max = 0.0;
};

// Mean optimal LRP over class_ids. Sweeps run on up to `workers` threads;
// the result does not depend on the worker count. Throws NothingEvaluable
// when no listed class can be evaluated.
MoLrpReport molrp(std::span<const GroundTruth> gts,
                  std::span<const Detection> dets,
                  std::span<const ClassId> class_ids, double tau = kDefaultTau,
                  double grid_step = kDefaultGridStep, unsigned workers = 1);

// Independent sweeps of one class at each tau.
std::vector<std::pair<double, SweepResult>> olrp_at_tau_sweep(
    std::span<const GroundTruth> gts, std::span<const Detection> dets,
    ClassId class_id, std::span<const double> taus,
    double grid_step = kDefaultGridStep);

}  // namespace lrp

#endif  // LRP_OLRP_H_
