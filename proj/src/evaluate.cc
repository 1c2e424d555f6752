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
#include "lrp/evaluate.h"

#include <algorithm>
#include <map>
#include <set>

#include "lrp/errors.h"
#include "lrp/parallel.h"

namespace lrp {

namespace {

std::optional<double> Mean(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

void CheckOptions(const EvalOptions& o) {
  if (!(o.tau >= 0.0 && o.tau <= kMaxEvalTau)) {
    throw InvalidArgument("tau must lie in [0, 0.999]");
  }
  if (o.taus.empty()) throw InvalidArgument("tau list is empty");
  for (double t : o.taus) {
    if (!(t >= 0.0 && t <= kMaxEvalTau)) {
      throw InvalidArgument("tau list entries must lie in [0, 0.999]");
    }
  }
  score_grid(o.grid_step);
}

}  // namespace

std::vector<CurveSet> Evaluation::curves() const {
  std::vector<CurveSet> out;
  out.reserve(classes.size());
  for (const auto& c : classes) out.push_back({c.sweep, c.rp});
  return out;
}

Evaluation evaluate(std::span<const GroundTruth> gts,
                    std::span<const Detection> dets,
                    std::span<const Category> categories,
                    const EvalOptions& options) {
  CheckOptions(options);
  const std::map<ClassId, ClassData> groups = group_by_class(gts, dets);
  std::map<ClassId, std::string> names;
  for (const auto& [id, data] : groups) names[id];
  for (const auto& c : categories) names[c.id] = c.name;

  Evaluation ev;
  ev.classes.resize(names.size());
  std::size_t k = 0;
  for (const auto& [id, name] : names) {
    ev.classes[k].class_id = id;
    ev.classes[k].name = name;
    ++k;
  }

  const ClassData empty;
  parallel_for(ev.classes.size(), options.workers, [&](std::size_t i) {
    ClassEvaluation& c = ev.classes[i];
    const auto it = groups.find(c.class_id);
    const ClassData& data = it == groups.end() ? empty : it->second;
    c.sweep = sweep_class(data.gts, data.dets, c.class_id, options.tau,
                          options.grid_step);
    if (c.sweep.n_gt == 0) return;
    c.rp = rp_curve(data.gts, data.dets, c.class_id, options.tau);
    c.ap_per_tau.reserve(options.taus.size());
    for (double t : options.taus) {
      c.ap_per_tau.push_back(
          ap(rp_curve(data.gts, data.dets, c.class_id, t), ApVariant::kCoco101));
    }
  });

  EvalReport& rep = ev.report;
  rep.config = {options.tau, options.taus, options.grid_step,
                options.ap_variant};
  std::vector<double> olrps, ious, fps, fns, maps, at_tau, s_stars;
  for (const ClassEvaluation& c : ev.classes) {
    ClassRow row;
    row.class_id = c.class_id;
    row.name = c.name;
    row.n_gt = c.sweep.n_gt;
    row.n_det = c.sweep.n_det;
    row.evaluable = c.sweep.evaluable;
    if (c.sweep.evaluable) {
      row.olrp = c.sweep.olrp;
      row.olrp_iou = c.sweep.olrp_iou;
      row.olrp_fp = c.sweep.olrp_fp;
      row.olrp_fn = c.sweep.olrp_fn;
      row.s_star = c.sweep.s_star;
      olrps.push_back(c.sweep.olrp);
      if (c.sweep.olrp_iou) ious.push_back(*c.sweep.olrp_iou);
      if (c.sweep.olrp_fp) fps.push_back(*c.sweep.olrp_fp);
      if (c.sweep.olrp_fn) fns.push_back(*c.sweep.olrp_fn);
      s_stars.push_back(c.sweep.s_star);
      if (c.sweep.no_detections) {
        ev.warnings.push_back("class " + std::to_string(c.class_id) +
                              ": no detections, s* reported as 0.00 with "
                              "oLRP 1");
      }
    } else {
      ev.warnings.push_back("class " + std::to_string(c.class_id) +
                            ": nothing to evaluate");
    }
    if (c.rp) {
      row.ap_continuous = ap(*c.rp, ApVariant::kContinuous);
      row.ap_pascal11 = ap(*c.rp, ApVariant::kPascal11);
      row.ap_coco101 = ap(*c.rp, ApVariant::kCoco101);
      row.map = Mean(c.ap_per_tau);
      maps.push_back(*row.map);
      at_tau.push_back(ap(*c.rp, options.ap_variant));
    }
    rep.rows.push_back(std::move(row));
  }
  if (olrps.empty()) {
    throw NothingEvaluable("no class has ground truths or detections");
  }
  SummaryRow& s = rep.summary;
  s.molrp = Mean(olrps);
  s.molrp_iou = Mean(ious);
  s.molrp_fp = Mean(fps);
  s.molrp_fn = Mean(fns);
  s.map = Mean(maps);
  s.map_at_tau = Mean(at_tau);
  s.s_star_min = *std::min_element(s_stars.begin(), s_stars.end());
  s.s_star_max = *std::max_element(s_stars.begin(), s_stars.end());
  s.n_evaluated = olrps.size();
  return ev;
}

Evaluation evaluate(const Dataset& dataset, std::span<const Detection> dets,
                    const EvalOptions& options) {
  Evaluation ev =
      evaluate(dataset.ground_truths, dets, dataset.categories, options);
  ev.warnings.insert(ev.warnings.begin(), dataset.warnings.begin(),
                     dataset.warnings.end());
  return ev;
}

ThresholdTable threshold_table(const Evaluation& evaluation) {
  ThresholdTable t;
  t.tau = evaluation.report.config.tau;
  t.grid_step = evaluation.report.config.grid_step;
  for (const ClassEvaluation& c : evaluation.classes) {
    if (!c.sweep.evaluable) continue;
    ThresholdEntry e;
    e.class_id = c.class_id;
    e.name = c.name;
    e.s_star = c.sweep.s_star;
    e.olrp = c.sweep.olrp;
    if (c.sweep.no_detections) e.warning = "no detections";
    t.entries.push_back(std::move(e));
  }
  return t;
}

std::map<ClassId, SweepResult> stream_olrp(const StreamFixture& fixture,
                                           std::span<const Detection> dets,
                                           double tau, double grid_step) {
  std::set<ClassId> ids;
  for (const auto& g : fixture.ground_truths) ids.insert(g.class_id);
  for (const auto& f : fixture.frames) {
    for (const auto& d : f.detections) ids.insert(d.det.class_id);
  }
  for (const auto& d : dets) ids.insert(d.class_id);
  const std::map<ClassId, ClassData> groups =
      group_by_class(fixture.ground_truths, dets);
  const ClassData empty;
  std::map<ClassId, SweepResult> out;
  for (ClassId id : ids) {
    const auto it = groups.find(id);
    const ClassData& data = it == groups.end() ? empty : it->second;
    out.emplace(id, sweep_class(data.gts, data.dets, id, tau, grid_step));
  }
  return out;
}

ThresholdTable stream_thresholds(const StreamFixture& fixture, double tau,
                                 double grid_step) {
  const std::vector<Detection> raw = to_detections(fixture.frames);
  ThresholdTable t;
  t.tau = tau;
  t.grid_step = grid_step;
  for (const auto& [id, sweep] : stream_olrp(fixture, raw, tau, grid_step)) {
    if (!sweep.evaluable) continue;
    ThresholdEntry e;
    e.class_id = id;
    e.s_star = sweep.s_star;
    e.olrp = sweep.olrp;
    if (sweep.no_detections) e.warning = "no detections";
    t.entries.push_back(std::move(e));
  }
  return t;
}

}  // namespace lrp
