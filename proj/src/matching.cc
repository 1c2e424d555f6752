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
#include "lrp/matching.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "lrp/errors.h"
#include "lrp/hungarian.h"

namespace lrp {

namespace {

void CheckTau(double tau) {
  if (!(tau >= 0.0 && tau < 1.0)) {
    throw InvalidArgument("IoU threshold tau must lie in [0, 1)");
  }
}

void CheckSingleClass(std::span<const GroundTruth> gts,
                      std::span<const Detection> dets) {
  bool have = false;
  ClassId cls = 0;
  auto check = [&](ClassId c) {
    if (!have) {
      cls = c;
      have = true;
    } else if (c != cls) {
      throw InvalidArgument("match_greedy: inputs mix several class ids");
    }
  };
  for (const auto& g : gts) check(g.class_id);
  for (const auto& d : dets) check(d.class_id);
}

}  // namespace

std::vector<std::size_t> score_order(std::span<const Detection> dets) {
  std::vector<std::size_t> order(dets.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return dets[a].score > dets[b].score;
                   });
  return order;
}

MatchResult match_greedy(std::span<const GroundTruth> gts,
                         std::span<const Detection> dets, double s,
                         double tau) {
  CheckTau(tau);
  if (!(s >= 0.0 && s <= 1.0)) {
    throw InvalidArgument("score threshold s must lie in [0, 1]");
  }
  CheckSingleClass(gts, dets);
  for (const auto& d : dets) {
    if (!(d.score >= 0.0 && d.score <= 1.0)) {
      throw InvalidArgument("detection score outside [0, 1]");
    }
  }

  std::unordered_map<ImageId, std::vector<std::size_t>> by_image;
  for (std::size_t g = 0; g < gts.size(); ++g) {
    by_image[gts[g].image_id].push_back(g);
  }

  MatchResult out;
  out.outcomes.assign(dets.size(), DetectionOutcome::kFiltered);
  std::vector<char> taken(gts.size(), 0);

  for (std::size_t d : score_order(dets)) {
    const Detection& det = dets[d];
    if (det.score < s) break;  // every later detection scores lower still

    const auto it = by_image.find(det.image_id);
    std::size_t best = gts.size();
    double best_iou = -1.0;
    bool hits_ignore = false;
    if (it != by_image.end()) {
      for (std::size_t g : it->second) {
        const double overlap = iou(det.box, gts[g].box);
        if (overlap < tau) continue;
        if (gts[g].ignore) {
          hits_ignore = true;
        } else if (!taken[g] && overlap > best_iou) {
          best = g;
          best_iou = overlap;
        }
      }
    }

    if (best != gts.size()) {
      taken[best] = 1;
      out.tp_pairs.push_back({d, best, best_iou});
      out.outcomes[d] = DetectionOutcome::kTruePositive;
      ++out.n_tp;
    } else if (hits_ignore) {
      out.outcomes[d] = DetectionOutcome::kIgnored;
      ++out.n_ignored;
    } else {
      out.outcomes[d] = DetectionOutcome::kFalsePositive;
      ++out.n_fp;
    }
  }

  for (std::size_t g = 0; g < gts.size(); ++g) {
    if (!gts[g].ignore && !taken[g]) ++out.n_fn;
  }
  return out;
}

MatchResult match_optimal(std::span<const BoundingBox> xs,
                          std::span<const BoundingBox> ys, double tau) {
  CheckTau(tau);
  const double cutoff = 1.0 - tau;

  CostMatrix cost(xs.size(), ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      cost(i, j) = std::min(iou_distance(xs[i], ys[j]), cutoff);
    }
  }

  MatchResult out;
  out.outcomes.assign(ys.size(), DetectionOutcome::kFalsePositive);
  for (const auto& [i, j] : hungarian(cost).pairs) {
    const double overlap = iou(xs[i], ys[j]);
    if (overlap < tau) continue;
    out.tp_pairs.push_back({j, i, overlap});
    out.outcomes[j] = DetectionOutcome::kTruePositive;
  }
  std::sort(out.tp_pairs.begin(), out.tp_pairs.end(),
            [](const TpPair& a, const TpPair& b) {
              return a.detection < b.detection;
            });
  out.n_tp = out.tp_pairs.size();
  out.n_fp = ys.size() - out.n_tp;
  out.n_fn = xs.size() - out.n_tp;
  return out;
}

}  // namespace lrp
