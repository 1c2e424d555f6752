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
#include "cli.h"

#include <cmath>
#include <filesystem>
#include <memory>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "lrp/dataio.h"
#include "lrp/errors.h"
#include "lrp/evaluate.h"
#include "lrp/synthetic.h"
#include "lrp/video_link.h"

namespace lrp::cli {

namespace {

constexpr const char* kDefaultTaus = "0.5:0.05:0.95";

struct Config {
  std::string gt_path;
  std::string det_path;
  std::string det_b_path;
  std::string stream_path;
  std::string thresholds_path;
  std::string output;
  std::string output_dir;
  std::string format = "json";
  std::string taus = kDefaultTaus;
  std::string ap_variant = "coco101";
  std::string kind = "half-recall";
  std::vector<ClassId> classes;
  double tau = kDefaultTau;
  double grid_step = kDefaultGridStep;
  double general = 0.5;
  double alpha = 0.7;
  double cost_cutoff = 0.7;
  double dominance_rise = 0.2;
  bool tau_sweep = false;
  unsigned workers = 1;
  std::uint64_t seed = 1;
};

std::string Fixed(double v, int decimals = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string Opt(const std::optional<double>& v) { return v ? Fixed(*v) : ""; }

// Output files may not exist yet, but their directory must.
const CLI::Validator kWritablePath(
    [](std::string& path) -> std::string {
      const auto parent = std::filesystem::path(path).parent_path();
      if (!parent.empty() && !std::filesystem::is_directory(parent)) {
        return "directory does not exist: " + parent.string();
      }
      return {};
    },
    "PATH", "writable path");

void Emit(const Config& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty() || cfg.output == "-") {
    out << text;
  } else {
    write_file(cfg.output, text);
  }
}

void PrintWarnings(const std::vector<std::string>& warnings,
                   std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << "\n";
}

EvalOptions MakeOptions(const Config& cfg) {
  EvalOptions o;
  o.tau = cfg.tau;
  o.taus = parse_tau_list(cfg.taus);
  o.grid_step = cfg.grid_step;
  o.ap_variant = parse_ap_variant(cfg.ap_variant);
  o.workers = cfg.workers;
  return o;
}

struct Inputs {
  Dataset dataset;
  std::vector<Detection> dets;
};

Inputs Load(const Config& cfg, const std::string& det_path) {
  Inputs in;
  in.dataset = load_ground_truth(cfg.gt_path);
  try {
    in.dets = load_detections(det_path, in.dataset);
  } catch (const DataError& e) {
    throw DataError(det_path, e.what());
  }
  return in;
}

// Restricts the dataset categories to --class selections, if any.
void SelectClasses(const Config& cfg, Dataset& ds) {
  if (cfg.classes.empty()) return;
  std::vector<Category> keep;
  for (ClassId id : cfg.classes) {
    if (!ds.has_category(id)) {
      throw DataError("--class", "unknown category id " + std::to_string(id));
    }
    keep.push_back({id, ds.category_name(id)});
  }
  ds.categories = std::move(keep);
}

template <typename T>
std::vector<T> KeepClasses(const std::vector<T>& items,
                           const std::vector<Category>& cats) {
  std::vector<T> out;
  for (const T& x : items) {
    for (const auto& c : cats) {
      if (c.id == x.class_id) {
        out.push_back(x);
        break;
      }
    }
  }
  return out;
}

void Restrict(const Config& cfg, Inputs& in) {
  if (cfg.classes.empty()) return;
  SelectClasses(cfg, in.dataset);
  in.dataset.ground_truths = KeepClasses(in.dataset.ground_truths, in.dataset.categories);
  in.dets = KeepClasses(in.dets, in.dataset.categories);
}

int CmdEval(const Config& cfg, std::ostream& out, std::ostream& err) {
  Inputs in = Load(cfg, cfg.det_path);
  Restrict(cfg, in);
  const Evaluation ev = evaluate(in.dataset, in.dets, MakeOptions(cfg));
  PrintWarnings(ev.warnings, err);
  Emit(cfg, format_report(ev.report, parse_report_format(cfg.format)), out);
  return kExitOk;
}

int CmdSweep(const Config& cfg, std::ostream& out, std::ostream& err) {
  Inputs in = Load(cfg, cfg.det_path);
  Restrict(cfg, in);
  PrintWarnings(in.dataset.warnings, err);
  const std::vector<double> taus = parse_tau_list(cfg.taus);
  std::ostringstream csv;
  csv << "class_id,name,tau,olrp,olrp_iou,olrp_fp,olrp_fn,s_star\n";
  std::vector<std::pair<double, MoLrpReport>> means;
  const std::vector<ClassId> ids = in.dataset.category_ids();
  for (double tau : taus) {
    if (!(tau <= kMaxEvalTau)) throw InvalidArgument("tau must lie in [0, 0.999]");
    means.emplace_back(tau, molrp(in.dataset.ground_truths, in.dets, ids, tau,
                                  cfg.grid_step, cfg.workers));
  }
  for (ClassId id : ids) {
    for (const auto& [tau, report] : means) {
      const auto it = report.per_class.find(id);
      if (it == report.per_class.end()) continue;
      const SweepResult& r = it->second;
      std::string name = in.dataset.category_name(id);
      if (name.find_first_of(",\"") != std::string::npos) name = "\"" + name + "\"";
      csv << id << "," << name << "," << Fixed(tau) << "," << Fixed(r.olrp)
          << "," << Opt(r.olrp_iou) << "," << Opt(r.olrp_fp) << ","
          << Opt(r.olrp_fn) << "," << Fixed(r.s_star) << "\n";
    }
  }
  for (const auto& [tau, report] : means) {
    csv << "all,moLRP," << Fixed(tau) << "," << Fixed(report.molrp) << ","
        << Opt(report.molrp_iou) << "," << Opt(report.molrp_fp) << ","
        << Opt(report.molrp_fn) << ",\n";
  }
  Emit(cfg, csv.str(), out);
  return kExitOk;
}

int CmdCurves(const Config& cfg, std::ostream& out, std::ostream& err) {
  Inputs in = Load(cfg, cfg.det_path);
  Restrict(cfg, in);
  std::vector<double> taus{cfg.tau};
  if (cfg.tau_sweep) taus = parse_tau_list(cfg.taus);
  std::vector<CurveSet> curves;
  std::vector<std::string> warnings = in.dataset.warnings;
  for (double tau : taus) {
    EvalOptions o = MakeOptions(cfg);
    o.tau = tau;
    o.taus = {tau};
    Evaluation ev = evaluate(in.dataset.ground_truths, in.dets,
                             in.dataset.categories, o);
    for (auto& c : ev.curves()) curves.push_back(std::move(c));
    if (tau == taus.front()) {
      warnings.insert(warnings.end(), ev.warnings.begin(), ev.warnings.end());
    }
  }
  PrintWarnings(warnings, err);
  Emit(cfg, curves_to_csv(curves), out);
  return kExitOk;
}

int CmdThresholds(const Config& cfg, std::ostream& out, std::ostream& err) {
  ThresholdTable table;
  if (!cfg.stream_path.empty()) {
    const StreamFixture fx = load_stream(cfg.stream_path);
    if (fx.ground_truths.empty()) {
      throw DataError(cfg.stream_path, "stream fixture has no ground_truths");
    }
    table = stream_thresholds(fx, cfg.tau, cfg.grid_step);
    if (table.entries.empty()) {
      throw NothingEvaluable("no class has ground truths or detections");
    }
  } else {
    if (cfg.gt_path.empty() || cfg.det_path.empty()) {
      throw InvalidArgument("thresholds needs --gt and --det, or --stream");
    }
    Inputs in = Load(cfg, cfg.det_path);
    Restrict(cfg, in);
    EvalOptions o = MakeOptions(cfg);
    o.taus = {cfg.tau};
    const Evaluation ev = evaluate(in.dataset, in.dets, o);
    PrintWarnings(ev.warnings, err);
    table = threshold_table(ev);
  }
  for (const auto& e : table.entries) {
    if (!e.warning.empty()) {
      err << "warning: class " << e.class_id << ": " << e.warning
          << ", s* reported as " << Fixed(e.s_star, 2) << "\n";
    }
  }
  Emit(cfg, thresholds_to_json(table), out);
  return kExitOk;
}

int CmdCompare(const Config& cfg, std::ostream& out, std::ostream& err) {
  Inputs a = Load(cfg, cfg.det_path);
  Restrict(cfg, a);
  std::vector<Detection> b_dets = load_detections(cfg.det_b_path, a.dataset);
  if (!cfg.classes.empty()) b_dets = KeepClasses(b_dets, a.dataset.categories);
  const EvalOptions o = MakeOptions(cfg);
  const Evaluation ea = evaluate(a.dataset, a.dets, o);
  const Evaluation eb = evaluate(a.dataset, b_dets, o);
  PrintWarnings(ea.warnings, err);
  std::ostringstream csv;
  csv << "class_id,name,olrp_a,olrp_b,delta_olrp,s_star_a,s_star_b,"
         "ap_a,ap_b,delta_ap\n";
  auto delta = [](const std::optional<double>& x, const std::optional<double>& y) {
    return x && y ? Fixed(*y - *x) : std::string();
  };
  auto variant_ap = [&](const ClassRow& r) -> std::optional<double> {
    switch (o.ap_variant) {
      case ApVariant::kContinuous: return r.ap_continuous;
      case ApVariant::kPascal11: return r.ap_pascal11;
      case ApVariant::kCoco101: return r.ap_coco101;
    }
    return std::nullopt;
  };
  for (std::size_t i = 0; i < ea.report.rows.size(); ++i) {
    const ClassRow& ra = ea.report.rows[i];
    const ClassRow& rb = eb.report.rows[i];
    std::string name = ra.name;
    if (name.find_first_of(",\"") != std::string::npos) name = "\"" + name + "\"";
    csv << ra.class_id << "," << name << "," << Opt(ra.olrp) << ","
        << Opt(rb.olrp) << "," << delta(ra.olrp, rb.olrp) << ","
        << Opt(ra.s_star) << "," << Opt(rb.s_star) << ","
        << Opt(variant_ap(ra)) << "," << Opt(variant_ap(rb)) << ","
        << delta(variant_ap(ra), variant_ap(rb)) << "\n";
  }
  const SummaryRow& sa = ea.report.summary;
  const SummaryRow& sb = eb.report.summary;
  csv << "all,summary," << Opt(sa.molrp) << "," << Opt(sb.molrp) << ","
      << delta(sa.molrp, sb.molrp) << ",,," << Opt(sa.map_at_tau) << ","
      << Opt(sb.map_at_tau) << "," << delta(sa.map_at_tau, sb.map_at_tau)
      << "\n";
  Emit(cfg, csv.str(), out);
  return kExitOk;
}

int CmdStream(const Config& cfg, std::ostream& out, std::ostream& err) {
  const StreamFixture fx = load_stream(cfg.stream_path);
  for (const auto& frame : fx.frames) {
    try {
      validate_frame(frame);
    } catch (const InvalidArgument& e) {
      throw DataError(cfg.stream_path, e.what());
    }
  }
  StreamOptions so;
  so.link.alpha = cfg.alpha;
  so.link.cost_cutoff = cfg.cost_cutoff;
  so.dominance_rise = cfg.dominance_rise;

  ThresholdPolicy general;
  general.general = cfg.general;
  const StreamResult g = run_stream(fx.frames, general, so);
  std::optional<StreamResult> s;
  if (!cfg.thresholds_path.empty()) {
    s = run_stream(fx.frames, load_thresholds(cfg.thresholds_path).policy(cfg.general), so);
  }
  if (!cfg.output_dir.empty()) {
    const std::filesystem::path dir(cfg.output_dir);
    write_file(dir / "stream_general.json", linked_stream_to_json(g.frames));
    if (s) write_file(dir / "stream_specific.json", linked_stream_to_json(s->frames));
  }
  if (fx.ground_truths.empty()) {
    err << "warning: stream fixture has no ground_truths, skipping oLRP\n";
    out << linked_stream_to_json(s ? s->frames : g.frames);
    return kExitOk;
  }

  const auto raw = stream_olrp(fx, to_detections(fx.frames), cfg.tau, cfg.grid_step);
  const auto gen = stream_olrp(fx, to_detections(g.frames), cfg.tau, cfg.grid_step);
  std::map<ClassId, SweepResult> spec;
  if (s) spec = stream_olrp(fx, to_detections(s->frames), cfg.tau, cfg.grid_step);

  std::ostringstream csv;
  csv << "class_id,olrp_raw,olrp_general,olrp_specific\n";
  std::vector<double> sums(3, 0.0);
  std::size_t n = 0;
  for (const auto& [id, r] : raw) {
    if (!r.evaluable) continue;
    const SweepResult& rg = gen.at(id);
    csv << id << "," << Fixed(r.olrp) << "," << Fixed(rg.olrp) << ",";
    sums[0] += r.olrp;
    sums[1] += rg.olrp;
    if (s) {
      csv << Fixed(spec.at(id).olrp);
      sums[2] += spec.at(id).olrp;
    }
    csv << "\n";
    ++n;
  }
  if (n == 0) throw NothingEvaluable("no class has ground truths or detections");
  const double dn = static_cast<double>(n);
  csv << "all," << Fixed(sums[0] / dn) << "," << Fixed(sums[1] / dn) << ","
      << (s ? Fixed(sums[2] / dn) : "") << "\n";
  Emit(cfg, csv.str(), out);
  return kExitOk;
}

int CmdSynth(const Config& cfg, std::ostream& out, std::ostream&) {
  const std::filesystem::path dir(cfg.output_dir);
  if (cfg.kind == "stream") {
    write_file(dir / "stream.json",
               stream_to_json(synthetic_stream(designed_threshold_stream())));
    out << (dir / "stream.json").string() << "\n";
    return kExitOk;
  }
  Dataset ds;
  std::vector<Detection> dets;
  if (cfg.kind == "coco") {
    SyntheticCocoOptions o;
    o.seed = cfg.seed;
    SyntheticDataset sd = synthetic_coco(o);
    ds = std::move(sd.dataset);
    dets = std::move(sd.detections);
  } else {
    Fixture f;
    if (cfg.kind == "half-recall") f = same_ap_half_recall();
    else if (cfg.kind == "duplicates") f = same_ap_duplicates();
    else if (cfg.kind == "loose") f = same_ap_loose();
    else if (cfg.kind == "loose-exact") f = same_ap_loose_exact();
    else f = perfect_fixture(4, 3, cfg.seed);
    std::set<ImageId> images;
    std::set<ClassId> classes;
    for (const auto& g : f.gts) {
      images.insert(g.image_id);
      classes.insert(g.class_id);
    }
    for (ImageId id : images) ds.images.push_back({id, std::nullopt, std::nullopt});
    for (ClassId id : classes) ds.categories.push_back({id, "class_" + std::to_string(id)});
    ds.ground_truths = f.gts;
    dets = f.dets;
  }
  write_file(dir / "gt.json", ground_truth_to_json(ds));
  write_file(dir / "det.json", detections_to_json(dets));
  out << (dir / "gt.json").string() << "\n" << (dir / "det.json").string() << "\n";
  return kExitOk;
}

}  // namespace

std::vector<double> parse_tau_list(const std::string& text) {
  std::vector<double> out;
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size() || !std::isfinite(v)) {
      throw InvalidArgument("bad tau list entry '" + s + "'");
    }
    return v;
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string p;
    while (std::getline(ss, p, ':')) parts.push_back(p);
    if (parts.size() != 3) throw InvalidArgument("tau range must be lo:step:hi");
    const double lo = number(parts[0]), step = number(parts[1]), hi = number(parts[2]);
    if (!(step > 0.0) || hi < lo) throw InvalidArgument("empty tau range");
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long k = 0; k <= n; ++k) {
      out.push_back(std::round((lo + static_cast<double>(k) * step) * 1e9) / 1e9);
    }
  } else {
    std::stringstream ss(text);
    std::string p;
    while (std::getline(ss, p, ',')) out.push_back(number(p));
  }
  if (out.empty()) throw InvalidArgument("empty tau list");
  for (double t : out) {
    if (!(t >= 0.0 && t <= kMaxEvalTau)) {
      throw InvalidArgument("tau values must lie in [0, 0.999]");
    }
  }
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Localization-Recall-Precision evaluation for object detectors",
               "lrp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "lrp 0.1.0");
  Config cfg;

  auto add_gt_det = [&](CLI::App* sub) {
    sub->add_option("--gt", cfg.gt_path, "COCO annotation JSON")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--det", cfg.det_path, "COCO results JSON")
        ->required()
        ->check(CLI::ExistingFile);
  };
  auto add_tau = [&](CLI::App* sub) {
    sub->add_option("--tau", cfg.tau, "IoU threshold for oLRP and TP validation")
        ->capture_default_str()
        ->check(CLI::Range(0.0, kMaxEvalTau));
  };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--grid-step", cfg.grid_step,
                    "score threshold grid spacing (must divide 1)")
        ->capture_default_str();
  };
  auto add_taus = [&](CLI::App* sub) {
    sub->add_option("--taus", cfg.taus,
                    "IoU thresholds for mAP, lo:step:hi or a comma list")
        ->capture_default_str();
  };
  auto add_variant = [&](CLI::App* sub) {
    sub->add_option("--ap-variant", cfg.ap_variant, "AP interpolation")
        ->capture_default_str()
        ->check(CLI::IsMember({"continuous", "pascal11", "coco101"}));
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", cfg.output, "output file (default stdout)")
        ->check(kWritablePath);
  };
  auto add_workers = [&](CLI::App* sub) {
    sub->add_option("--workers", cfg.workers, "parallel per-class workers")
        ->capture_default_str()
        ->check(CLI::Range(1u, 256u));
  };
  auto add_classes = [&](CLI::App* sub) {
    sub->add_option("--class", cfg.classes,
                    "restrict to these category ids (repeatable)");
  };

  CLI::App* eval = app.add_subcommand("eval", "per-class oLRP, components, s*, AP and mAP report");
  add_gt_det(eval);
  add_tau(eval);
  add_taus(eval);
  add_variant(eval);
  add_grid(eval);
  add_output(eval);
  add_classes(eval);
  add_workers(eval);
  eval->add_option("--format", cfg.format, "report format")
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "csv"}));

  CLI::App* sweep = app.add_subcommand("sweep", "oLRP and moLRP at every IoU threshold in --taus");
  add_gt_det(sweep);
  add_taus(sweep);
  add_grid(sweep);
  add_output(sweep);
  add_classes(sweep);
  add_workers(sweep);

  CLI::App* curves = app.add_subcommand("curves", "long-format LRP sweep and RP curve records");
  add_gt_det(curves);
  add_tau(curves);
  add_taus(curves);
  add_grid(curves);
  add_output(curves);
  add_classes(curves);
  add_workers(curves);
  curves->add_flag("--tau-sweep", cfg.tau_sweep, "one curve block per IoU threshold in --taus");

  CLI::App* thresholds = app.add_subcommand("thresholds", "class-specific optimal score thresholds s*");
  thresholds->add_option("--gt", cfg.gt_path, "COCO annotation JSON")->check(CLI::ExistingFile);
  thresholds->add_option("--det", cfg.det_path, "COCO results JSON")->check(CLI::ExistingFile);
  thresholds->add_option("--stream", cfg.stream_path, "stream fixture (instead of --gt/--det)")
      ->check(CLI::ExistingFile)
      ->excludes(thresholds->get_option("--gt"))
      ->excludes(thresholds->get_option("--det"));
  add_tau(thresholds);
  add_grid(thresholds);
  add_output(thresholds);
  add_classes(thresholds);
  add_workers(thresholds);

  CLI::App* compare = app.add_subcommand("compare", "two detection files side by side");
  add_gt_det(compare);
  compare->add_option("--det-b", cfg.det_b_path, "second COCO results JSON")
      ->required()
      ->check(CLI::ExistingFile);
  add_tau(compare);
  add_taus(compare);
  add_variant(compare);
  add_grid(compare);
  add_output(compare);
  add_classes(compare);
  add_workers(compare);

  CLI::App* stream = app.add_subcommand("stream", "link and rescore a video stream, compare thresholding policies");
  stream->add_option("--stream", cfg.stream_path, "stream fixture JSON")
      ->required()
      ->check(CLI::ExistingFile);
  stream->add_option("--thresholds", cfg.thresholds_path, "class-specific thresholds JSON")
      ->check(CLI::ExistingFile);
  stream->add_option("--general", cfg.general, "general score threshold")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  stream->add_option("--alpha", cfg.alpha, "link cost weight of 1-IoU against score distance")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  stream->add_option("--cost-cutoff", cfg.cost_cutoff, "links above this cost are severed")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  stream->add_option("--dominance-rise", cfg.dominance_rise,
                     "score rise over a tubelet's minimum that flags it dominant")
      ->capture_default_str();
  stream->add_option("--output-dir", cfg.output_dir, "write the linked streams here")
      ->check(CLI::ExistingDirectory);
  add_tau(stream);
  add_grid(stream);
  add_output(stream);

  CLI::App* synth = app.add_subcommand("synth", "write synthetic fixtures");
  synth->add_option("--kind", cfg.kind, "fixture kind")
      ->capture_default_str()
      ->check(CLI::IsMember({"half-recall", "duplicates", "loose", "loose-exact", "perfect", "coco", "stream"}));
  synth->add_option("--output-dir", cfg.output_dir, "destination directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  synth->add_option("--seed", cfg.seed, "random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*eval) return CmdEval(cfg, out, err);
    if (*sweep) return CmdSweep(cfg, out, err);
    if (*curves) return CmdCurves(cfg, out, err);
    if (*thresholds) return CmdThresholds(cfg, out, err);
    if (*compare) return CmdCompare(cfg, out, err);
    if (*stream) return CmdStream(cfg, out, err);
    if (*synth) return CmdSynth(cfg, out, err);
  } catch (const NothingEvaluable& e) {
    err << "error: nothing evaluable: " << e.what() << "\n";
    return kExitNothingEvaluable;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  std::vector<const char*> argv{"lrp"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace lrp::cli
