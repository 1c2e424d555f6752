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
#include "lrp/video_link.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "lrp/errors.h"
#include "lrp/hungarian.h"

namespace lrp {

namespace {

constexpr double kClamp = 1e-6;
constexpr double kCrossClassCost = 2.0;

std::string Where(const FrameDetections& frame, std::size_t i) {
  return "frame " + std::to_string(frame.frame_index) + " detection " +
         std::to_string(i);
}

}  // namespace

void validate_frame(const FrameDetections& frame) {
  for (std::size_t i = 0; i < frame.detections.size(); ++i) {
    const StreamDetection& d = frame.detections[i];
    if (d.class_scores.empty()) {
      throw InvalidArgument(Where(frame, i) + ": empty class_scores");
    }
    double sum = 0.0, top = 0.0;
    for (double p : d.class_scores) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidArgument(Where(frame, i) +
                              ": class_scores entry outside [0, 1]");
      }
      sum += p;
      top = std::max(top, p);
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw InvalidArgument(Where(frame, i) + ": class_scores must sum to 1");
    }
    if (d.det.score != top) {
      throw InvalidArgument(Where(frame, i) +
                            ": score must equal the largest class score");
    }
  }
}

double link_cost(const StreamDetection& a, const StreamDetection& b,
                 double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InvalidArgument("link alpha must lie in [0, 1]");
  }
  if (a.det.class_id != b.det.class_id) return kCrossClassCost;
  if (a.class_scores.size() != b.class_scores.size()) {
    throw InvalidArgument("class score vectors differ in length");
  }
  double l1 = 0.0;
  for (std::size_t k = 0; k < a.class_scores.size(); ++k) {
    l1 += std::abs(a.class_scores[k] - b.class_scores[k]);
  }
  return alpha * iou_distance(a.det.box, b.det.box) +
         (1.0 - alpha) * 0.5 * l1;
}

std::vector<FrameLink> link_frames(const FrameDetections& prev,
                                   const FrameDetections& curr,
                                   const LinkParams& params) {
  if (!(params.cost_cutoff >= 0.0 && params.cost_cutoff <= 1.0)) {
    throw InvalidArgument("link cost cutoff must lie in [0, 1]");
  }
  std::vector<FrameLink> links;
  if (prev.detections.empty() || curr.detections.empty()) return links;

  CostMatrix cost(prev.detections.size(), curr.detections.size());
  for (std::size_t i = 0; i < prev.detections.size(); ++i) {
    for (std::size_t j = 0; j < curr.detections.size(); ++j) {
      cost(i, j) =
          link_cost(prev.detections[i], curr.detections[j], params.alpha);
    }
  }
  for (const auto& [i, j] : hungarian(cost).pairs) {
    if (cost(i, j) <= params.cost_cutoff) links.push_back({i, j, cost(i, j)});
  }
  std::sort(links.begin(), links.end(),
            [](const FrameLink& a, const FrameLink& b) { return a.curr < b.curr; });
  return links;
}

double bayes_update(double prior, double likelihood) {
  const double p = std::clamp(prior, kClamp, 1.0 - kClamp);
  const double q = std::clamp(likelihood, kClamp, 1.0 - kClamp);
  const double agree = p * q;
  return agree / (agree + (1.0 - p) * (1.0 - q));
}

double ThresholdPolicy::for_class(ClassId c) const {
  const auto it = per_class.find(c);
  return it == per_class.end() ? general : it->second;
}

StreamResult run_stream(std::span<const FrameDetections> frames,
                        const ThresholdPolicy& thresholds,
                        const StreamOptions& options) {
  auto check_threshold = [](double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw InvalidArgument("stream thresholds must lie in [0, 1]");
    }
  };
  check_threshold(thresholds.general);
  for (const auto& [cls, t] : thresholds.per_class) check_threshold(t);
  for (std::size_t f = 1; f < frames.size(); ++f) {
    if (frames[f].frame_index <= frames[f - 1].frame_index) {
      throw InvalidArgument("frame indices must strictly increase (frame " +
                            std::to_string(frames[f].frame_index) +
                            " follows " +
                            std::to_string(frames[f - 1].frame_index) + ")");
    }
  }

  StreamResult out;
  FrameDetections prev_kept;
  std::vector<std::size_t> prev_tubelet;

  for (const FrameDetections& frame : frames) {
    validate_frame(frame);
    FrameDetections kept;
    kept.frame_index = frame.frame_index;
    for (const StreamDetection& d : frame.detections) {
      if (d.det.score >= thresholds.for_class(d.det.class_id)) {
        kept.detections.push_back(d);
      }
    }

    std::vector<std::size_t> linked_prev(kept.detections.size(),
                                         prev_kept.detections.size());
    for (const FrameLink& link : link_frames(prev_kept, kept, options.link)) {
      linked_prev[link.curr] = link.prev;
    }

    LinkedFrame linked;
    linked.frame_index = frame.frame_index;
    std::vector<std::size_t> tubelet_of(kept.detections.size());
    for (std::size_t j = 0; j < kept.detections.size(); ++j) {
      const StreamDetection& d = kept.detections[j];
      const double raw = d.det.score;
      std::size_t t;
      if (linked_prev[j] < prev_kept.detections.size()) {
        t = prev_tubelet[linked_prev[j]];
        Tubelet& tube = out.tubelets[t];
        tube.updated_score = bayes_update(tube.updated_score, raw);
      } else {
        t = out.tubelets.size();
        Tubelet tube;
        tube.id = t;
        tube.class_id = d.det.class_id;
        tube.updated_score = raw;
        out.tubelets.push_back(std::move(tube));
      }
      Tubelet& tube = out.tubelets[t];
      tube.boxes.emplace_back(frame.frame_index, d.det.box);
      tube.score_history.push_back(tube.updated_score);
      const double low =
          *std::min_element(tube.score_history.begin(), tube.score_history.end());
      if (tube.updated_score - low >= options.dominance_rise) tube.dominant = true;
      tubelet_of[j] = t;

      LinkedDetection ld;
      ld.detection = d;
      ld.detection.det.score = tube.updated_score;
      ld.raw_score = raw;
      ld.tubelet_id = t;
      ld.dominant = tube.dominant;
      linked.detections.push_back(std::move(ld));
    }

    out.frames.push_back(std::move(linked));
    prev_kept = std::move(kept);
    prev_tubelet = std::move(tubelet_of);
  }
  return out;
}

std::vector<Detection> to_detections(std::span<const LinkedFrame> frames) {
  std::vector<Detection> out;
  for (const auto& f : frames) {
    for (const auto& d : f.detections) {
      Detection det = d.detection.det;
      det.image_id = f.frame_index;
      out.push_back(det);
    }
  }
  return out;
}

std::vector<Detection> to_detections(std::span<const FrameDetections> frames) {
  std::vector<Detection> out;
  for (const auto& f : frames) {
    for (const auto& d : f.detections) {
      Detection det = d.det;
      det.image_id = f.frame_index;
      out.push_back(det);
    }
  }
  return out;
}

}  // namespace lrp
