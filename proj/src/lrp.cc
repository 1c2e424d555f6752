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
#include "lrp/lrp.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "lrp/errors.h"

namespace lrp {

namespace {

// Summation in ascending order so that the same multiset of IoUs always
// yields the same bits, whatever order the pairs were produced in.
double SortedLocErrorSum(const MatchResult& m, double tau) {
  std::vector<double> errs;
  errs.reserve(m.tp_pairs.size());
  for (const auto& pair : m.tp_pairs) {
    if (!(pair.iou >= tau && pair.iou <= 1.0)) {
      throw InvalidArgument("match result: TP pair with IoU outside [tau, 1]");
    }
    errs.push_back(1.0 - pair.iou);
  }
  std::sort(errs.begin(), errs.end());
  double sum = 0.0;
  for (double e : errs) sum += e;
  return sum;
}

}  // namespace

LrpBreakdown lrp_from_counts(std::size_t n_tp, std::size_t n_fp,
                             std::size_t n_fn, double loc_error_sum,
                             double tau) {
  if (!(tau >= 0.0 && tau < 1.0)) {
    throw InvalidArgument("IoU threshold tau must lie in [0, 1)");
  }
  LrpBreakdown b;
  b.n_tp = n_tp;
  b.n_fp = n_fp;
  b.n_fn = n_fn;
  b.z = n_tp + n_fp + n_fn;
  if (b.z == 0) throw UndefinedLrp();
  b.tau = tau;
  b.w_iou = static_cast<double>(n_tp) / (1.0 - tau);
  b.w_fp = static_cast<double>(n_tp + n_fp);
  b.w_fn = static_cast<double>(n_tp + n_fn);

  if (n_tp > 0) b.loc_component = loc_error_sum / static_cast<double>(n_tp);
  if (n_tp + n_fp > 0) b.fp_component = static_cast<double>(n_fp) / b.w_fp;
  if (n_tp + n_fn > 0) b.fn_component = static_cast<double>(n_fn) / b.w_fn;

  // FP and FN counts are added as one integer so the total does not depend
  // on which side is which.
  b.total = (loc_error_sum / (1.0 - tau) + static_cast<double>(n_fp + n_fn)) /
            static_cast<double>(b.z);
  return b;
}

LrpBreakdown lrp_components(const MatchResult& m, std::size_t n_gt,
                            std::size_t n_det, double tau) {
  if (m.tp_pairs.size() != m.n_tp) {
    throw InvalidArgument("match result: n_tp disagrees with its TP pairs");
  }
  if (m.n_tp + m.n_fn != n_gt) {
    throw InvalidArgument("match result: n_tp + n_fn must equal |X|");
  }
  if (m.n_tp + m.n_fp != n_det) {
    throw InvalidArgument("match result: n_tp + n_fp must equal |Y_s|");
  }
  return lrp_from_counts(m.n_tp, m.n_fp, m.n_fn, SortedLocErrorSum(m, tau), tau);
}

LrpBreakdown lrp_components(const MatchResult& m, double tau) {
  return lrp_components(m, m.n_gt(), m.n_det(), tau);
}

double lrp_total(const MatchResult& m, std::size_t n_gt, std::size_t n_det,
                 double tau) {
  return lrp_components(m, n_gt, n_det, tau).total;
}

double lrp_total(const MatchResult& m, double tau) {
  return lrp_components(m, tau).total;
}

double lrp_weighted_total(const LrpBreakdown& b) {
  if (b.z == 0) throw UndefinedLrp();
  double sum = 0.0;
  if (b.loc_component) sum += b.w_iou * *b.loc_component;
  if (b.fp_component) sum += b.w_fp * *b.fp_component;
  if (b.fn_component) sum += b.w_fn * *b.fn_component;
  return sum / static_cast<double>(b.z);
}

double lrp_metric(std::span<const BoundingBox> xs,
                  std::span<const BoundingBox> ys, double tau) {
  return lrp_total(match_optimal(xs, ys, tau), tau);
}

double dasa(std::span<const BoundingBox> xs, std::span<const BoundingBox> ys,
            const DasaParams& params) {
  if (!(params.p >= 1.0) || !std::isfinite(params.p)) {
    throw InvalidArgument("DASA norm order p must be finite and >= 1");
  }
  if (!(params.c > 0.0 && params.c <= 1.0)) {
    throw InvalidArgument("DASA cutoff c must lie in (0, 1]");
  }
  const std::size_t l = std::max(xs.size(), ys.size());
  if (l == 0) throw UndefinedLrp();

  const MatchResult m = match_optimal(xs, ys, 1.0 - params.c);
  std::vector<double> terms;
  terms.reserve(m.tp_pairs.size());
  for (const auto& pair : m.tp_pairs) {
    terms.push_back(std::pow(1.0 - pair.iou, params.p));
  }
  std::sort(terms.begin(), terms.end());
  double sum = 0.0;
  for (double t : terms) sum += t;
  sum += std::pow(params.c, params.p) * static_cast<double>(m.n_fp + m.n_fn);
  return std::pow(sum / static_cast<double>(l), 1.0 / params.p);
}

}  // namespace lrp
