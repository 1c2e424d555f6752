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
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/operators.h>
#include <pybind11/stl/filesystem.h>

#include "lrp/ap.h"
#include "lrp/dataio.h"
#include "lrp/errors.h"
#include "lrp/evaluate.h"
#include "lrp/geometry.h"
#include "lrp/hungarian.h"
#include "lrp/lrp.h"
#include "lrp/matching.h"
#include "lrp/olrp.h"
#include "lrp/synthetic.h"
#include "lrp/video_link.h"

namespace py = pybind11;

namespace {

using Boxes = std::vector<lrp::BoundingBox>;
using Gts = std::vector<lrp::GroundTruth>;
using Dets = std::vector<lrp::Detection>;

lrp::CostMatrix ToCostMatrix(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  const std::size_t m = n == 0 ? 0 : rows[0].size();
  lrp::CostMatrix c(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != m) throw lrp::InvalidArgument("ragged cost matrix");
    for (std::size_t j = 0; j < m; ++j) c(i, j) = rows[i][j];
  }
  return c;
}

}  // namespace

PYBIND11_MODULE(_lrp, m) {
  m.doc() = "Localization-Recall-Precision evaluation for object detectors";

  py::register_exception<lrp::InvalidArgument>(m, "InvalidArgument",
                                               PyExc_ValueError);
  py::register_exception<lrp::UndefinedLrp>(m, "UndefinedLrp",
                                            PyExc_ArithmeticError);
  py::register_exception<lrp::DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<lrp::NothingEvaluable>(m, "NothingEvaluable",
                                                PyExc_RuntimeError);

  py::class_<lrp::BoundingBox>(m, "BoundingBox")
      .def(py::init<double, double, double, double>(), py::arg("x_min"),
           py::arg("y_min"), py::arg("x_max"), py::arg("y_max"))
      .def_static("from_xywh", &lrp::BoundingBox::FromXywh)
      .def_property_readonly("x_min", &lrp::BoundingBox::x_min)
      .def_property_readonly("y_min", &lrp::BoundingBox::y_min)
      .def_property_readonly("x_max", &lrp::BoundingBox::x_max)
      .def_property_readonly("y_max", &lrp::BoundingBox::y_max)
      .def_property_readonly("width", &lrp::BoundingBox::width)
      .def_property_readonly("height", &lrp::BoundingBox::height)
      .def(py::self == py::self)
      .def("__repr__", [](const lrp::BoundingBox& b) {
        return "BoundingBox(" + std::to_string(b.x_min()) + ", " +
               std::to_string(b.y_min()) + ", " + std::to_string(b.x_max()) +
               ", " + std::to_string(b.y_max()) + ")";
      });
  m.def("area", &lrp::area);
  m.def("iou", &lrp::iou);
  m.def("iou_distance", &lrp::iou_distance);

  py::class_<lrp::Detection>(m, "Detection")
      .def(py::init([](lrp::ImageId image, lrp::ClassId cls,
                       const lrp::BoundingBox& box, double score) {
             return lrp::Detection{image, cls, box, score};
           }),
           py::arg("image_id"), py::arg("class_id"), py::arg("box"),
           py::arg("score"))
      .def_readwrite("image_id", &lrp::Detection::image_id)
      .def_readwrite("class_id", &lrp::Detection::class_id)
      .def_readwrite("box", &lrp::Detection::box)
      .def_readwrite("score", &lrp::Detection::score);

  py::class_<lrp::GroundTruth>(m, "GroundTruth")
      .def(py::init([](lrp::ImageId image, lrp::ClassId cls,
                       const lrp::BoundingBox& box, bool ignore) {
             return lrp::GroundTruth{image, cls, box, ignore};
           }),
           py::arg("image_id"), py::arg("class_id"), py::arg("box"),
           py::arg("ignore") = false)
      .def_readwrite("image_id", &lrp::GroundTruth::image_id)
      .def_readwrite("class_id", &lrp::GroundTruth::class_id)
      .def_readwrite("box", &lrp::GroundTruth::box)
      .def_readwrite("ignore", &lrp::GroundTruth::ignore);

  py::class_<lrp::TpPair>(m, "TpPair")
      .def_readonly("detection", &lrp::TpPair::detection)
      .def_readonly("ground_truth", &lrp::TpPair::ground_truth)
      .def_readonly("iou", &lrp::TpPair::iou);

  py::class_<lrp::MatchResult>(m, "MatchResult")
      .def_readonly("tp_pairs", &lrp::MatchResult::tp_pairs)
      .def_readonly("n_tp", &lrp::MatchResult::n_tp)
      .def_readonly("n_fp", &lrp::MatchResult::n_fp)
      .def_readonly("n_fn", &lrp::MatchResult::n_fn)
      .def_readonly("n_ignored", &lrp::MatchResult::n_ignored);
  m.def(
      "match_greedy",
      [](const Gts& gts, const Dets& dets, double s, double tau) {
        return lrp::match_greedy(gts, dets, s, tau);
      }, py::arg("gts"), py::arg("dets"),
        py::arg("s"), py::arg("tau") = lrp::kDefaultTau);
  m.def(
      "match_optimal",
      [](const Boxes& xs, const Boxes& ys, double tau) {
        return lrp::match_optimal(xs, ys, tau);
      }, py::arg("xs"), py::arg("ys"),
        py::arg("tau") = lrp::kDefaultTau);

  py::class_<lrp::LrpBreakdown>(m, "LrpBreakdown")
      .def_readonly("total", &lrp::LrpBreakdown::total)
      .def_readonly("loc_component", &lrp::LrpBreakdown::loc_component)
      .def_readonly("fp_component", &lrp::LrpBreakdown::fp_component)
      .def_readonly("fn_component", &lrp::LrpBreakdown::fn_component)
      .def_readonly("n_tp", &lrp::LrpBreakdown::n_tp)
      .def_readonly("n_fp", &lrp::LrpBreakdown::n_fp)
      .def_readonly("n_fn", &lrp::LrpBreakdown::n_fn)
      .def_readonly("tau", &lrp::LrpBreakdown::tau);
  m.def("lrp_components",
        py::overload_cast<const lrp::MatchResult&, double>(&lrp::lrp_components),
        py::arg("match"), py::arg("tau") = lrp::kDefaultTau);
  m.def("lrp_total",
        py::overload_cast<const lrp::MatchResult&, double>(&lrp::lrp_total),
        py::arg("match"), py::arg("tau") = lrp::kDefaultTau);
  m.def(
      "lrp_metric",
      [](const Boxes& xs, const Boxes& ys, double tau) {
        return lrp::lrp_metric(xs, ys, tau);
      }, py::arg("xs"), py::arg("ys"),
        py::arg("tau") = lrp::kDefaultTau);
  m.def(
      "dasa",
      [](const Boxes& xs, const Boxes& ys, double p, double c) {
        return lrp::dasa(xs, ys, {p, c, lrp::BaseDistance::kOneMinusIou});
      },
      py::arg("xs"), py::arg("ys"), py::arg("p") = 1.0, py::arg("c") = 0.5);

  m.def(
      "hungarian",
      [](const std::vector<std::vector<double>>& cost) {
        const lrp::Assignment a = lrp::hungarian(ToCostMatrix(cost));
        return py::make_tuple(a.pairs, a.total_cost);
      },
      py::arg("cost"), "Returns (pairs, total_cost) of a minimum assignment.");

  py::class_<lrp::SweepSample>(m, "SweepSample")
      .def_readonly("s", &lrp::SweepSample::s)
      .def_readonly("breakdown", &lrp::SweepSample::breakdown)
      .def_readonly("n_retained", &lrp::SweepSample::n_retained);
  py::class_<lrp::SweepResult>(m, "SweepResult")
      .def_readonly("class_id", &lrp::SweepResult::class_id)
      .def_readonly("tau", &lrp::SweepResult::tau)
      .def_readonly("evaluable", &lrp::SweepResult::evaluable)
      .def_readonly("samples", &lrp::SweepResult::samples)
      .def_readonly("s_star", &lrp::SweepResult::s_star)
      .def_readonly("olrp", &lrp::SweepResult::olrp)
      .def_readonly("olrp_iou", &lrp::SweepResult::olrp_iou)
      .def_readonly("olrp_fp", &lrp::SweepResult::olrp_fp)
      .def_readonly("olrp_fn", &lrp::SweepResult::olrp_fn);
  m.def(
      "sweep_class",
      [](const Gts& gts, const Dets& dets, lrp::ClassId class_id, double tau,
         double grid_step) {
        return lrp::sweep_class(gts, dets, class_id, tau, grid_step);
      }, py::arg("gts"), py::arg("dets"),
        py::arg("class_id"), py::arg("tau") = lrp::kDefaultTau,
        py::arg("grid_step") = lrp::kDefaultGridStep);

  py::class_<lrp::MoLrpReport>(m, "MoLrpReport")
      .def_readonly("molrp", &lrp::MoLrpReport::molrp)
      .def_readonly("molrp_iou", &lrp::MoLrpReport::molrp_iou)
      .def_readonly("molrp_fp", &lrp::MoLrpReport::molrp_fp)
      .def_readonly("molrp_fn", &lrp::MoLrpReport::molrp_fn)
      .def_readonly("per_class", &lrp::MoLrpReport::per_class)
      .def_readonly("not_evaluable", &lrp::MoLrpReport::not_evaluable)
      .def_readonly("s_star_min", &lrp::MoLrpReport::s_star_min)
      .def_readonly("s_star_max", &lrp::MoLrpReport::s_star_max);
  m.def(
      "molrp",
      [](const Gts& gts, const Dets& dets,
         const std::vector<lrp::ClassId>& class_ids, double tau,
         double grid_step, unsigned workers) {
        py::gil_scoped_release release;
        return lrp::molrp(gts, dets, class_ids, tau, grid_step, workers);
      },
      py::arg("gts"), py::arg("dets"), py::arg("class_ids"),
      py::arg("tau") = lrp::kDefaultTau,
      py::arg("grid_step") = lrp::kDefaultGridStep, py::arg("workers") = 1);

  py::class_<lrp::RPCurve>(m, "RPCurve")
      .def_readonly("class_id", &lrp::RPCurve::class_id)
      .def_readonly("n_gt", &lrp::RPCurve::n_gt)
      .def_property_readonly("recall",
                             [](const lrp::RPCurve& c) {
                               std::vector<double> v;
                               for (const auto& p : c.points) v.push_back(p.recall);
                               return v;
                             })
      .def_property_readonly("precision",
                             [](const lrp::RPCurve& c) {
                               std::vector<double> v;
                               for (const auto& p : c.points) v.push_back(p.precision);
                               return v;
                             })
      .def_readonly("interpolated_precision",
                    &lrp::RPCurve::interpolated_precision);
  m.def(
      "rp_curve",
      [](const Gts& gts, const Dets& dets, lrp::ClassId class_id, double tau) {
        return lrp::rp_curve(gts, dets, class_id, tau);
      }, py::arg("gts"), py::arg("dets"),
        py::arg("class_id"), py::arg("tau") = lrp::kDefaultTau);
  m.def(
      "ap",
      [](const lrp::RPCurve& curve, const std::string& variant) {
        return lrp::ap(curve, lrp::parse_ap_variant(variant));
      },
      py::arg("curve"), py::arg("variant") = "coco101");

  m.def("bayes_update", &lrp::bayes_update, py::arg("prior"),
        py::arg("likelihood"));

  m.def(
      "evaluate_files",
      [](const std::filesystem::path& gt, const std::filesystem::path& det,
         double tau, double grid_step, const std::string& variant,
         unsigned workers) {
        py::gil_scoped_release release;
        const lrp::Dataset ds = lrp::load_ground_truth(gt);
        const auto dets = lrp::load_detections(det, ds);
        lrp::EvalOptions o;
        o.tau = tau;
        o.grid_step = grid_step;
        o.ap_variant = lrp::parse_ap_variant(variant);
        o.workers = workers;
        return lrp::report_to_json(lrp::evaluate(ds, dets, o).report);
      },
      py::arg("gt_path"), py::arg("det_path"),
      py::arg("tau") = lrp::kDefaultTau,
      py::arg("grid_step") = lrp::kDefaultGridStep,
      py::arg("ap_variant") = "coco101", py::arg("workers") = 1,
      "Evaluates COCO files and returns the lrp_report_v1 JSON text.");

  py::class_<lrp::Fixture>(m, "Fixture")
      .def_readonly("name", &lrp::Fixture::name)
      .def_readonly("gts", &lrp::Fixture::gts)
      .def_readonly("dets", &lrp::Fixture::dets);
  m.def("same_ap_half_recall", &lrp::same_ap_half_recall);
  m.def("same_ap_duplicates", &lrp::same_ap_duplicates);
  m.def("same_ap_loose", &lrp::same_ap_loose);
  m.def("same_ap_loose_exact", &lrp::same_ap_loose_exact);
}
