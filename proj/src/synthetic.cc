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
#include "lrp/synthetic.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "lrp/errors.h"

namespace lrp {

namespace {

constexpr ClassId kTrioClass = 1;

GroundTruth TrioGt(int k) {
  return {0, kTrioClass, BoundingBox(100.0 * k, 0.0, 100.0 * k + 50.0, 50.0),
          false};
}

std::vector<GroundTruth> TrioGts() {
  return {TrioGt(0), TrioGt(1), TrioGt(2), TrioGt(3)};
}

Detection TrioDet(double x0, double y0, double x1, double y1, double score) {
  return {0, kTrioClass, BoundingBox(x0, y0, x1, y1), score};
}

Detection TrioMiss(int k, double score) {
  return TrioDet(500.0 + 100.0 * k, 500.0, 550.0 + 100.0 * k, 550.0, score);
}

double Uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::vector<double> ClassScores(ClassId class_id, double score,
                                std::size_t n_labels) {
  std::vector<double> v(n_labels, (1.0 - score) / static_cast<double>(n_labels - 1));
  const auto slot = static_cast<std::size_t>(
      ((class_id % static_cast<ClassId>(n_labels)) + static_cast<ClassId>(n_labels)) %
      static_cast<ClassId>(n_labels));
  v[slot] = score;
  return v;
}

}  // namespace

Fixture same_ap_half_recall() {
  return {"same_ap_half_recall", TrioGts(),
          {TrioDet(0, 0, 50, 50, 0.8), TrioDet(100, 0, 150, 50, 0.8)}};
}

Fixture same_ap_duplicates() {
  Fixture f{"same_ap_duplicates", TrioGts(), {}};
  for (int k = 0; k < 4; ++k) {
    f.dets.push_back(TrioDet(100.0 * k, 0, 100.0 * k + 50, 50, 0.8));
    f.dets.push_back(TrioDet(100.0 * k + 5, 0, 100.0 * k + 55, 50, 0.8));
  }
  return f;
}

Fixture same_ap_loose() {
  return {"same_ap_loose", TrioGts(),
          {TrioDet(0, 0, 50, 30, 0.9),        // IoU 0.60
           TrioMiss(0, 0.8), TrioMiss(1, 0.7),
           TrioDet(100, 0, 150, 30.5, 0.6),   // IoU 0.61
           TrioMiss(2, 0.5),
           TrioDet(200, 0, 250, 26, 0.4)}};   // IoU 0.52
}

Fixture same_ap_loose_exact() {
  Fixture f = same_ap_loose();
  f.name = "same_ap_loose_exact";
  f.dets[0].box = TrioGt(0).box;
  f.dets[3].box = TrioGt(1).box;
  return f;
}

Fixture perfect_fixture(std::size_t n_images, std::size_t n_classes,
                        std::uint64_t seed) {
  if (n_images == 0 || n_classes == 0) {
    throw InvalidArgument("perfect_fixture needs at least one image and class");
  }
  std::mt19937_64 rng(seed);
  Fixture f{"perfect", {}, {}};
  for (std::size_t i = 0; i < n_images; ++i) {
    for (std::size_t c = 0; c < n_classes; ++c) {
      const double x = Uniform(rng, 0.0, 400.0), y = Uniform(rng, 0.0, 400.0);
      const double w = Uniform(rng, 10.0, 100.0), h = Uniform(rng, 10.0, 100.0);
      const auto image = static_cast<ImageId>(i + 1);
      const auto cls = static_cast<ClassId>(c + 1);
      const BoundingBox box(x, y, x + w, y + h);
      f.gts.push_back({image, cls, box, false});
      f.dets.push_back({image, cls, box, Uniform(rng, 0.5, 1.0)});
    }
  }
  return f;
}

StreamFixture synthetic_stream(const SyntheticStreamOptions& o) {
  if (o.n_labels < 2) throw InvalidArgument("n_labels must be at least 2");
  if (!(o.box_size > 4.0 * o.jitter)) {
    throw InvalidArgument("jitter too large for the box size");
  }
  const double min_score = 1.0 / static_cast<double>(o.n_labels);
  for (const auto& c : o.classes) {
    for (double s : {c.tp_score_lo, c.tp_score_hi, c.fp_score_lo, c.fp_score_hi}) {
      if (!(s >= min_score && s <= 1.0)) {
        throw InvalidArgument("synthetic scores must lie in [1/n_labels, 1]");
      }
    }
  }
  std::mt19937_64 rng(o.seed);
  const double cell = 2.0 * o.box_size + o.motion * static_cast<double>(o.n_frames);
  StreamFixture fx;
  for (std::size_t f = 0; f < o.n_frames; ++f) {
    FrameDetections frame;
    frame.frame_index = static_cast<std::int64_t>(f);
    const double drift = o.motion * static_cast<double>(f);
    for (std::size_t ci = 0; ci < o.classes.size(); ++ci) {
      const SyntheticStreamClass& c = o.classes[ci];
      const double row = 4.0 * o.box_size * static_cast<double>(ci);
      for (std::size_t j = 0; j < c.n_objects; ++j) {
        const double x = cell * static_cast<double>(j) + drift;
        const BoundingBox truth(x, row, x + o.box_size, row + o.box_size);
        fx.ground_truths.push_back({frame.frame_index, c.class_id, truth, false});
        // Dyadic offsets keep the boxes exact through the xywh file format.
        const auto jit = [&] {
          return std::round(Uniform(rng, -o.jitter, o.jitter) * 64.0) / 64.0;
        };
        const double x0 = truth.x_min() + jit(), y0 = truth.y_min() + jit();
        const double x1 = truth.x_max() + jit(), y1 = truth.y_max() + jit();
        double score = Uniform(rng, c.tp_score_lo, c.tp_score_hi);
        if (f == 0 && j == 0 && c.anchor_score) score = *c.anchor_score;
        StreamDetection d;
        d.det = {frame.frame_index, c.class_id, BoundingBox(x0, y0, x1, y1), score};
        d.class_scores = ClassScores(c.class_id, score, o.n_labels);
        frame.detections.push_back(std::move(d));
      }
      for (std::size_t j = 0; j < c.n_clutter; ++j) {
        const double x = cell * static_cast<double>(j) + drift;
        const double y = row + 2.0 * o.box_size;
        const double score = Uniform(rng, c.fp_score_lo, c.fp_score_hi);
        StreamDetection d;
        d.det = {frame.frame_index, c.class_id,
                 BoundingBox(x, y, x + o.box_size, y + o.box_size), score};
        d.class_scores = ClassScores(c.class_id, score, o.n_labels);
        frame.detections.push_back(std::move(d));
      }
    }
    fx.frames.push_back(std::move(frame));
  }
  return fx;
}

SyntheticStreamOptions designed_threshold_stream() {
  SyntheticStreamOptions o;
  o.n_frames = 30;
  SyntheticStreamClass low;
  low.class_id = 1;
  low.n_objects = 3;
  low.tp_score_lo = 0.30;
  low.tp_score_hi = 0.48;
  low.n_clutter = 2;
  low.fp_score_lo = 0.10;
  low.fp_score_hi = 0.28;
  low.anchor_score = 0.30;
  SyntheticStreamClass high;
  high.class_id = 2;
  high.n_objects = 3;
  high.tp_score_lo = 0.80;
  high.tp_score_hi = 0.97;
  high.n_clutter = 2;
  high.fp_score_lo = 0.55;
  high.fp_score_hi = 0.78;
  high.anchor_score = 0.80;
  o.classes = {low, high};
  return o;
}

SyntheticDataset synthetic_coco(const SyntheticCocoOptions& o) {
  if (o.n_images == 0 || o.n_classes == 0) {
    throw InvalidArgument("synthetic_coco needs at least one image and class");
  }
  std::mt19937_64 rng(o.seed);
  SyntheticDataset out;
  Dataset& ds = out.dataset;
  for (std::size_t c = 0; c < o.n_classes; ++c) {
    ds.categories.push_back({static_cast<ClassId>(c + 1),
                             "class_" + std::to_string(c + 1)});
  }
  std::uniform_int_distribution<std::size_t> pick_class(1, o.n_classes);
  std::int64_t ann_id = 1;
  for (std::size_t i = 0; i < o.n_images; ++i) {
    const auto image = static_cast<ImageId>(i + 1);
    ds.images.push_back({image, 640.0, 480.0});
    std::size_t made = 0;
    for (std::size_t g = 0; g < o.gts_per_image; ++g) {
      const auto cls = static_cast<ClassId>(pick_class(rng));
      const double w = Uniform(rng, 8.0, 200.0), h = Uniform(rng, 8.0, 200.0);
      const double x = Uniform(rng, 0.0, 640.0 - w), y = Uniform(rng, 0.0, 480.0 - h);
      const BoundingBox box(x, y, x + w, y + h);
      ds.ground_truths.push_back({image, cls, box, Uniform(rng, 0, 1) < 0.01});
      ds.annotation_ids.push_back(ann_id++);
      const int hits = static_cast<int>(Uniform(rng, 0.0, 3.0));
      for (int k = 0; k < hits && made < o.dets_per_image; ++k, ++made) {
        const double dx = Uniform(rng, -0.2, 0.2) * w, dy = Uniform(rng, -0.2, 0.2) * h;
        out.detections.push_back(
            {image, cls, BoundingBox(x + dx, y + dy, x + dx + w, y + dy + h),
             Uniform(rng, 0.05, 1.0)});
      }
    }
    for (; made < o.dets_per_image; ++made) {
      const auto cls = static_cast<ClassId>(pick_class(rng));
      const double w = Uniform(rng, 8.0, 200.0), h = Uniform(rng, 8.0, 200.0);
      const double x = Uniform(rng, 0.0, 640.0 - w), y = Uniform(rng, 0.0, 480.0 - h);
      out.detections.push_back(
          {image, cls, BoundingBox(x, y, x + w, y + h), Uniform(rng, 0.0, 0.6)});
    }
  }
  return out;
}

}  // namespace lrp
