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
#ifndef LRP_VIDEO_LINK_H_
#define LRP_VIDEO_LINK_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "lrp/matching.h"

namespace lrp {

// A detection in a video frame together with its score distribution over
// the stream's labels. det.score is the largest entry of class_scores and
// det.image_id carries the frame index.
struct StreamDetection {
  Detection det;
  std::vector<double> class_scores;
};

struct FrameDetections {
  std::int64_t frame_index = 0;
  std::vector<StreamDetection> detections;
};

// Checks the score-distribution invariants of every detection. Throws
// InvalidArgument naming the frame and detection.
void validate_frame(const FrameDetections& frame);

struct LinkParams {
  double alpha = 0.7;        // weight of the box term
  double cost_cutoff = 0.7;  // links costing more than this are severed
};

// alpha * (1 - IoU) + (1 - alpha) * L1(class_scores) / 2, in [0, 1].
// Detections of different classes are never linked; their cost is 2.
double link_cost(const StreamDetection& a, const StreamDetection& b,
                 double alpha);

struct FrameLink {
  std::size_t prev;
  std::size_t curr;
  double cost;
};

// Hungarian association between consecutive frames. Sorted by curr.
std::vector<FrameLink> link_frames(const FrameDetections& prev,
                                   const FrameDetections& curr,
                                   const LinkParams& params = {});

// Two-hypothesis Bayes rule with both inputs clamped to [1e-6, 1 - 1e-6]:
//   p q / (p q + (1 - p)(1 - q))
double bayes_update(double prior, double likelihood);

// Per-class score cut-offs; classes without an entry use `general`.
struct ThresholdPolicy {
  double general = 0.5;
  std::map<ClassId, double> per_class;

  double for_class(ClassId c) const;
};

struct Tubelet {
  std::size_t id = 0;
  ClassId class_id = 0;
  std::vector<std::pair<std::int64_t, BoundingBox>> boxes;
  double updated_score = 0.0;
  std::vector<double> score_history;
  // Set once updated_score has risen by the dominance margin above the
  // lowest score in its history.
  bool dominant = false;
};

struct LinkedDetection {
  StreamDetection detection;  // det.score holds the updated score
  double raw_score = 0.0;
  std::size_t tubelet_id = 0;
  bool dominant = false;
};

struct LinkedFrame {
  std::int64_t frame_index = 0;
  std::vector<LinkedDetection> detections;
};

struct StreamOptions {
  LinkParams link;
  double dominance_rise = 0.2;
};

struct StreamResult {
  std::vector<LinkedFrame> frames;
  std::vector<Tubelet> tubelets;
};

// Online pass over the frames in order. Per frame: keep detections whose
// raw score passes their class threshold, associate them with the kept
// detections of the previous frame, and rescore linked ones with
// bayes_update(tubelet score, raw score). Unlinked detections open a new
// tubelet at their raw score. Throws InvalidArgument unless frame indices
// strictly increase.
StreamResult run_stream(std::span<const FrameDetections> frames,
                        const ThresholdPolicy& thresholds,
                        const StreamOptions& options = {});

// Flattens output frames into scored detections for evaluation.
std::vector<Detection> to_detections(std::span<const LinkedFrame> frames);
std::vector<Detection> to_detections(std::span<const FrameDetections> frames);

}  // namespace lrp

#endif  // LRP_VIDEO_LINK_H_
