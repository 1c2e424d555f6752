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
#ifndef LRP_MATCHING_H_
#define LRP_MATCHING_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lrp/geometry.h"

namespace lrp {

using ImageId = std::int64_t;
using ClassId = std::int64_t;

struct Detection {
  ImageId image_id = 0;
  ClassId class_id = 0;
  BoundingBox box;
  double score = 0.0;  // in [0, 1]
};

struct GroundTruth {
  ImageId image_id = 0;
  ClassId class_id = 0;
  BoundingBox box;
  // Crowd region: never a false negative, absorbs overlapping detections.
  bool ignore = false;
};

enum class DetectionOutcome : std::uint8_t {
  kFiltered,       // score below the threshold s, not part of Y_s
  kTruePositive,
  kFalsePositive,
  kIgnored,        // absorbed by an ignore region; neither TP nor FP
};

struct TpPair {
  std::size_t detection;
  std::size_t ground_truth;
  double iou;
};

struct MatchResult {
  std::vector<TpPair> tp_pairs;
  std::size_t n_tp = 0;
  std::size_t n_fp = 0;
  std::size_t n_fn = 0;
  std::size_t n_ignored = 0;
  // One entry per input detection.
  std::vector<DetectionOutcome> outcomes;

  // |X|: non-ignored ground truths.
  std::size_t n_gt() const { return n_tp + n_fn; }
  // |Y_s|: evaluated detections.
  std::size_t n_det() const { return n_tp + n_fp; }
};

// Order in which greedy matching visits detections: descending score, ties
// by ascending input index.
std::vector<std::size_t> score_order(std::span<const Detection> dets);

// AP-style greedy matching of one class. Detections with score >= s form
// Y_s and are visited in score_order; each claims the unmatched non-ignored
// ground truth of its image with the highest IoU (ties: lowest index)
// provided IoU >= tau. A detection with no such candidate that overlaps an
// ignore region at IoU >= tau is dropped; otherwise it is a false positive.
//
// Because a detection's outcome depends only on higher-ranked detections,
// the outcomes for Y_s are a prefix of the outcomes for the full list.
//
// Throws InvalidArgument for s outside [0, 1], tau outside [0, 1), scores
// outside [0, 1], or mixed class ids.
MatchResult match_greedy(std::span<const GroundTruth> gts,
                         std::span<const Detection> dets, double s,
                         double tau);

// Optimal one-to-one assignment between box sets minimising the summed
// 1 - IoU with cutoff 1 - tau; assigned pairs with IoU < tau are severed.
// xs play the ground-truth role, ys the detection role.
MatchResult match_optimal(std::span<const BoundingBox> xs,
                          std::span<const BoundingBox> ys, double tau);

}  // namespace lrp

#endif  // LRP_MATCHING_H_
