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
// Independent reference implementations used by the unit and acceptance
// tests. Each one recomputes a quantity by brute force, from definitions,
// without sharing code paths with the library routine under test.
#ifndef LRP_TESTS_ORACLES_H_
#define LRP_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "lrp/ap.h"
#include "lrp/geometry.h"
#include "lrp/hungarian.h"
#include "lrp/matching.h"

namespace lrp::oracle {

// IoU of boxes whose corners lie on a grid of spacing `cell`, by counting
// grid cells covered by each box.
inline double RasterIou(const BoundingBox& a, const BoundingBox& b,
                        double cell = 1.0) {
  const double x0 = std::min(a.x_min(), b.x_min());
  const double y0 = std::min(a.y_min(), b.y_min());
  const double x1 = std::max(a.x_max(), b.x_max());
  const double y1 = std::max(a.y_max(), b.y_max());
  const auto nx = static_cast<long>(std::llround((x1 - x0) / cell));
  const auto ny = static_cast<long>(std::llround((y1 - y0) / cell));
  long inter = 0, uni = 0;
  auto inside = [](const BoundingBox& r, double cx, double cy) {
    return cx > r.x_min() && cx < r.x_max() && cy > r.y_min() && cy < r.y_max();
  };
  for (long i = 0; i < nx; ++i) {
    for (long j = 0; j < ny; ++j) {
      const double cx = x0 + (static_cast<double>(i) + 0.5) * cell;
      const double cy = y0 + (static_cast<double>(j) + 0.5) * cell;
      const bool ia = inside(a, cx, cy), ib = inside(b, cx, cy);
      inter += ia && ib;
      uni += ia || ib;
    }
  }
  return static_cast<double>(inter) / static_cast<double>(uni);
}

inline double RasterArea(const BoundingBox& a, double cell) {
  long n = 0;
  for (double x = a.x_min() + cell / 2; x < a.x_max(); x += cell) {
    for (double y = a.y_min() + cell / 2; y < a.y_max(); y += cell) ++n;
  }
  return static_cast<double>(n) * cell * cell;
}

// Minimum assignment cost over every injective row-to-column map (or its
// transpose when there are more rows than columns).
inline double BruteForceAssignmentCost(const CostMatrix& c) {
  const bool wide = c.rows() <= c.cols();
  const std::size_t n = wide ? c.rows() : c.cols();
  const std::size_t m = wide ? c.cols() : c.rows();
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      total += wide ? c(i, perm[i]) : c(perm[i], i);
    }
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Recall/precision measured by re-running greedy matching at every distinct
// score threshold, in descending order.
struct ThresholdPoint {
  double recall;
  double precision;
};

inline std::vector<ThresholdPoint> PerThresholdCurve(
    const std::vector<GroundTruth>& gts, const std::vector<Detection>& dets,
    double tau) {
  std::set<double, std::greater<>> scores;
  for (const auto& d : dets) scores.insert(d.score);
  std::size_t n_gt = 0;
  for (const auto& g : gts) n_gt += !g.ignore;
  std::vector<ThresholdPoint> pts;
  for (double s : scores) {
    const MatchResult m = match_greedy(gts, dets, s, tau);
    if (m.n_tp + m.n_fp == 0) continue;
    pts.push_back({static_cast<double>(m.n_tp) / static_cast<double>(n_gt),
                   static_cast<double>(m.n_tp) /
                       static_cast<double>(m.n_tp + m.n_fp)});
  }
  return pts;
}

inline double InterpolatedAt(const std::vector<ThresholdPoint>& pts,
                             double r) {
  double best = 0.0;
  for (const auto& p : pts) {
    if (p.recall >= r) best = std::max(best, p.precision);
  }
  return best;
}

inline double BruteForceAp(const std::vector<GroundTruth>& gts,
                           const std::vector<Detection>& dets, double tau,
                           ApVariant variant) {
  const std::vector<ThresholdPoint> pts = PerThresholdCurve(gts, dets, tau);
  if (variant == ApVariant::kContinuous) {
    std::set<double> recalls;
    for (const auto& p : pts) recalls.insert(p.recall);
    double area = 0.0, prev = 0.0;
    for (double r : recalls) {
      area += (r - prev) * InterpolatedAt(pts, r);
      prev = r;
    }
    return area;
  }
  const int steps = variant == ApVariant::kPascal11 ? 10 : 100;
  double sum = 0.0;
  for (int k = 0; k <= steps; ++k) {
    sum += InterpolatedAt(pts, static_cast<double>(k) / steps);
  }
  return sum / (steps + 1);
}

// LRP straight from the compact-form definition.
inline double CompactLrp(const std::vector<double>& tp_ious, std::size_t n_fp,
                         std::size_t n_fn, double tau) {
  double loc = 0.0;
  for (double v : tp_ious) loc += (1.0 - v) / (1.0 - tau);
  return (loc + static_cast<double>(n_fp + n_fn)) /
         static_cast<double>(tp_ious.size() + n_fp + n_fn);
}

inline BoundingBox RandomBox(std::mt19937_64& rng, double extent = 100.0,
                             double min_side = 1.0, double max_side = 40.0) {
  std::uniform_real_distribution<double> pos(0.0, extent);
  std::uniform_real_distribution<double> side(min_side, max_side);
  const double x = pos(rng), y = pos(rng);
  return BoundingBox(x, y, x + side(rng), y + side(rng));
}

inline BoundingBox RandomIntBox(std::mt19937_64& rng, int extent = 12) {
  std::uniform_int_distribution<int> pos(0, extent);
  std::uniform_int_distribution<int> side(1, extent / 2);
  const int x = pos(rng), y = pos(rng);
  return BoundingBox(x, y, x + side(rng), y + side(rng));
}

}  // namespace lrp::oracle

#endif  // LRP_TESTS_ORACLES_H_
