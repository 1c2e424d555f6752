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
#ifndef LRP_SYNTHETIC_H_
#define LRP_SYNTHETIC_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lrp/dataio.h"
#include "lrp/matching.h"

namespace lrp {

struct Fixture {
  std::string name;
  std::vector<GroundTruth> gts;
  std::vector<Detection> dets;
};

// Four ground truths in one image; every detector below has continuous AP 0.5.
Fixture same_ap_half_recall();  // two exact hits
Fixture same_ap_duplicates();  // four exact hits plus four shifted duplicates
Fixture same_ap_loose();  // loosely localised hits interleaved with false positives
Fixture same_ap_loose_exact();  // same_ap_loose with its top hits made exact

// Every ground truth detected exactly once with its own box.
Fixture perfect_fixture(std::size_t n_images, std::size_t n_classes,
                        std::uint64_t seed = 1);

struct SyntheticStreamClass {
  ClassId class_id = 1;
  std::size_t n_objects = 2;  // tracked objects, one hit per frame each
  double tp_score_lo = 0.5;
  double tp_score_hi = 0.9;
  std::size_t n_clutter = 1;  // persistent false positives
  double fp_score_lo = 0.1;
  double fp_score_hi = 0.4;
  std::optional<double> anchor_score;  // exact score of the first hit
};

struct SyntheticStreamOptions {
  std::size_t n_frames = 20;
  std::size_t n_labels = 10;  // length of every class_scores vector
  double box_size = 50.0;
  double jitter = 2.0;  // max per-coordinate offset of a hit from its object
  double motion = 3.0;  // horizontal drift per frame
  std::uint64_t seed = 7;
  std::vector<SyntheticStreamClass> classes;
};

// Class ids index class_scores modulo n_labels.
StreamFixture synthetic_stream(const SyntheticStreamOptions& options);

// Two classes whose optimal thresholds on the raw stream are 0.30 and 0.80.
SyntheticStreamOptions designed_threshold_stream();

struct SyntheticCocoOptions {
  std::size_t n_images = 5000;
  std::size_t n_classes = 80;
  std::size_t gts_per_image = 7;
  std::size_t dets_per_image = 100;
  std::uint64_t seed = 2017;
};

struct SyntheticDataset {
  Dataset dataset;
  std::vector<Detection> detections;
};

SyntheticDataset synthetic_coco(const SyntheticCocoOptions& options = {});

}  // namespace lrp

#endif  // LRP_SYNTHETIC_H_
