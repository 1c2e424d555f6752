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
#ifndef LRP_EVALUATE_H_
#define LRP_EVALUATE_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lrp/ap.h"
#include "lrp/dataio.h"
#include "lrp/matching.h"
#include "lrp/olrp.h"

namespace lrp {

struct EvalOptions {
  double tau = kDefaultTau;
  std::vector<double> taus = coco_taus();
  double grid_step = kDefaultGridStep;
  ApVariant ap_variant = ApVariant::kCoco101;
  unsigned workers = 1;
};

struct ClassEvaluation {
  ClassId class_id = 0;
  std::string name;
  SweepResult sweep;
  std::optional<RPCurve> rp;       // at EvalOptions::tau, needs a GT
  std::vector<double> ap_per_tau;  // coco101, parallel to EvalOptions::taus
};

struct Evaluation {
  EvalReport report;
  std::vector<ClassEvaluation> classes;
  std::vector<std::string> warnings;

  std::vector<CurveSet> curves() const;
};

// Evaluates every category plus any class id that only occurs in the data.
// Throws NothingEvaluable when no class has ground truths or detections.
Evaluation evaluate(std::span<const GroundTruth> gts,
                    std::span<const Detection> dets,
                    std::span<const Category> categories,
                    const EvalOptions& options = {});
Evaluation evaluate(const Dataset& dataset, std::span<const Detection> dets,
                    const EvalOptions& options = {});

ThresholdTable threshold_table(const Evaluation& evaluation);

// Per-class sweeps of a detection stream against the fixture ground truths.
// Covers every class present in the fixture, even if dets lacks it.
std::map<ClassId, SweepResult> stream_olrp(const StreamFixture& fixture,
                                           std::span<const Detection> dets,
                                           double tau = kDefaultTau,
                                           double grid_step = kDefaultGridStep);

// Optimal thresholds of the raw, unlinked stream.
ThresholdTable stream_thresholds(const StreamFixture& fixture,
                                 double tau = kDefaultTau,
                                 double grid_step = kDefaultGridStep);

}  // namespace lrp

#endif  // LRP_EVALUATE_H_
