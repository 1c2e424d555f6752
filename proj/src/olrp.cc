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
#include "lrp/olrp.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lrp/errors.h"
#include "lrp/parallel.h"

namespace lrp {

namespace {

void CheckEvalTau(double tau) {
  if (!(tau >= 0.0 && tau <= kMaxEvalTau)) {
    throw InvalidArgument("IoU threshold tau must lie in [0, 0.999]");
  }
}

// Sweep over detections and ground truths that all belong to class_id.
SweepResult SweepSingleClass(std::span<const GroundTruth> gts,
                             std::span<const Detection> dets,
                             ClassId class_id, double tau, double grid_step) {
  CheckEvalTau(tau);
  const std::vector<double> grid = score_grid(grid_step);

  SweepResult out;
  out.class_id = class_id;
  out.tau = tau;
  out.n_det = dets.size();
  out.n_gt = static_cast<std::size_t>(std::count_if(
      gts.begin(), gts.end(), [](const GroundTruth& g) { return !g.ignore; }));
  if (out.n_gt == 0 && dets.empty()) {
    out.evaluable = false;
    return out;
  }

  // One greedy pass at s = 0 fixes every detection's outcome; Y_s at any
  // other threshold is a prefix of the score order.
  const MatchResult full = match_greedy(gts, dets, 0.0, tau);
  const std::vector<std::size_t> order = score_order(dets);

  std::vector<double> det_iou(dets.size(), 0.0);
  for (const auto& pair : full.tp_pairs) det_iou[pair.detection] = pair.iou;

  const std::size_t n = order.size();
  std::vector<std::size_t> cum_tp(n + 1, 0), cum_fp(n + 1, 0);
  std::vector<double> cum_loc(n + 1, 0.0);
  std::vector<double> sorted_scores(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t d = order[k];
    sorted_scores[k] = dets[d].score;
    cum_tp[k + 1] = cum_tp[k];
    cum_fp[k + 1] = cum_fp[k];
    cum_loc[k + 1] = cum_loc[k];
    switch (full.outcomes[d]) {
      case DetectionOutcome::kTruePositive:
        ++cum_tp[k + 1];
        cum_loc[k + 1] += 1.0 - det_iou[d];
        break;
      case DetectionOutcome::kFalsePositive:
        ++cum_fp[k + 1];
        break;
      default:
        break;
    }
  }

  out.samples.reserve(grid.size());
  std::size_t best = grid.size();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    SweepSample sample;
    sample.s = grid[i];
    // Scores are sorted descending: count those >= s.
    sample.n_retained = static_cast<std::size_t>(
        std::partition_point(sorted_scores.begin(), sorted_scores.end(),
                             [&](double v) { return v >= sample.s; }) -
        sorted_scores.begin());
    const std::size_t k = sample.n_retained;
    const std::size_t tp = cum_tp[k];
    const std::size_t fp = cum_fp[k];
    const std::size_t fn = out.n_gt - tp;
    if (tp + fp + fn > 0) {
      sample.breakdown = lrp_from_counts(tp, fp, fn, cum_loc[k], tau);
      // <= so that the largest s wins ties.
      if (best == grid.size() ||
          sample.breakdown->total <= out.samples[best].breakdown->total) {
        best = i;
      }
    }
    out.samples.push_back(std::move(sample));
  }

  if (best == grid.size()) {
    // Only ignore regions and the detections they absorb.
    out.evaluable = false;
    out.samples.clear();
    return out;
  }
  if (dets.empty()) {
    // Every sample is all-FN; report the permissive end of the grid.
    out.no_detections = true;
    best = 0;
  }

  const LrpBreakdown& opt = *out.samples[best].breakdown;
  out.s_star = out.samples[best].s;
  out.olrp = opt.total;
  out.olrp_iou = opt.loc_component;
  out.olrp_fp = opt.fp_component;
  out.olrp_fn = opt.fn_component;
  return out;
}

std::optional<double> MeanOfPresent(const std::vector<std::optional<double>>& v) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& x : v) {
    if (x) {
      sum += *x;
      ++count;
    }
  }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

}  // namespace

std::vector<double> score_grid(double step) {
  if (!(step > 0.0 && step <= 1.0)) {
    throw InvalidArgument("grid step must lie in (0, 1]");
  }
  const double intervals = std::round(1.0 / step);
  if (std::abs(intervals * step - 1.0) > 1e-9) {
    throw InvalidArgument("grid step must divide 1 evenly");
  }
  const auto n = static_cast<std::size_t>(intervals);
  std::vector<double> grid(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    grid[k] = static_cast<double>(k) / intervals;
  }
  return grid;
}

const SweepSample* SweepResult::optimal() const {
  if (!evaluable) return nullptr;
  for (const auto& sample : samples) {
    if (sample.s == s_star) return &sample;
  }
  return nullptr;
}

std::map<ClassId, ClassData> group_by_class(std::span<const GroundTruth> gts,
                                            std::span<const Detection> dets) {
  std::map<ClassId, ClassData> out;
  for (const auto& g : gts) out[g.class_id].gts.push_back(g);
  for (const auto& d : dets) out[d.class_id].dets.push_back(d);
  return out;
}

SweepResult sweep_class(std::span<const GroundTruth> gts,
                        std::span<const Detection> dets, ClassId class_id,
                        double tau, double grid_step) {
  std::vector<GroundTruth> cls_gts;
  std::vector<Detection> cls_dets;
  for (const auto& g : gts) {
    if (g.class_id == class_id) cls_gts.push_back(g);
  }
  for (const auto& d : dets) {
    if (d.class_id == class_id) cls_dets.push_back(d);
  }
  return SweepSingleClass(cls_gts, cls_dets, class_id, tau, grid_step);
}

MoLrpReport molrp(std::span<const GroundTruth> gts,
                  std::span<const Detection> dets,
                  std::span<const ClassId> class_ids, double tau,
                  double grid_step, unsigned workers) {
  CheckEvalTau(tau);
  score_grid(grid_step);  // validate before spawning work
  std::vector<ClassId> ids(class_ids.begin(), class_ids.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  const std::map<ClassId, ClassData> groups = group_by_class(gts, dets);
  const ClassData empty;

  std::vector<SweepResult> results(ids.size());
  parallel_for(ids.size(), workers, [&](std::size_t i) {
    const auto it = groups.find(ids[i]);
    const ClassData& data = it == groups.end() ? empty : it->second;
    results[i] = SweepSingleClass(data.gts, data.dets, ids[i], tau, grid_step);
  });

  MoLrpReport report;
  report.tau = tau;
  std::vector<std::optional<double>> ious, fps, fns;
  double sum = 0.0;
  report.s_star_min = std::numeric_limits<double>::infinity();
  report.s_star_max = -std::numeric_limits<double>::infinity();
  for (auto& r : results) {
    if (!r.evaluable) {
      report.not_evaluable.push_back(r.class_id);
      continue;
    }
    sum += r.olrp;
    ious.push_back(r.olrp_iou);
    fps.push_back(r.olrp_fp);
    fns.push_back(r.olrp_fn);
    report.s_star_min = std::min(report.s_star_min, r.s_star);
    report.s_star_max = std::max(report.s_star_max, r.s_star);
    const ClassId id = r.class_id;
    report.per_class.emplace(id, std::move(r));
  }
  if (report.per_class.empty()) {
    throw NothingEvaluable("no class has ground truths or detections");
  }
  report.molrp = sum / static_cast<double>(report.per_class.size());
  report.molrp_iou = MeanOfPresent(ious);
  report.molrp_fp = MeanOfPresent(fps);
  report.molrp_fn = MeanOfPresent(fns);
  return report;
}

std::vector<std::pair<double, SweepResult>> olrp_at_tau_sweep(
    std::span<const GroundTruth> gts, std::span<const Detection> dets,
    ClassId class_id, std::span<const double> taus, double grid_step) {
  for (double tau : taus) CheckEvalTau(tau);
  std::vector<std::pair<double, SweepResult>> out;
  out.reserve(taus.size());
  for (double tau : taus) {
    out.emplace_back(tau, sweep_class(gts, dets, class_id, tau, grid_step));
  }
  return out;
}

}  // namespace lrp
