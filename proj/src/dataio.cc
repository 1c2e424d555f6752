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
#include "lrp/dataio.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "lrp/errors.h"

namespace lrp {

namespace {

using json = nlohmann::json;

json ParseJson(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError("byte " + std::to_string(e.byte),
                    std::string("malformed JSON: ") + e.what());
  }
}

std::string Index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const json& Field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw DataError(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw DataError(path + "." + key, "missing required field");
  }
  return *it;
}

const json* OptionalField(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

const json& ArrayField(const json& obj, const char* key,
                       const std::string& path) {
  const json& v = Field(obj, key, path);
  if (!v.is_array()) {
    throw DataError(path.empty() ? key : path + "." + key,
                    "expected an array");
  }
  return v;
}

std::int64_t AsInt(const json& v, const std::string& path) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 9e15) {
      return static_cast<std::int64_t>(d);
    }
  }
  throw DataError(path, "expected an integer id");
}

double AsNumber(const json& v, const std::string& path) {
  if (!v.is_number()) throw DataError(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw DataError(path, "expected a finite number");
  return d;
}

std::string AsString(const json& v, const std::string& path) {
  if (!v.is_string()) throw DataError(path, "expected a string");
  return v.get<std::string>();
}

struct Xywh {
  double x, y, w, h;
};

Xywh AsXywh(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 4) {
    throw DataError(path, "expected [x, y, width, height]");
  }
  return {AsNumber(v[0], Index(path, 0)), AsNumber(v[1], Index(path, 1)),
          AsNumber(v[2], Index(path, 2)), AsNumber(v[3], Index(path, 3))};
}

BoundingBox ToBox(const Xywh& b, const std::string& path,
                  const std::string& what) {
  if (!(b.w > 0.0) || !(b.h > 0.0)) {
    throw DataError(path, "zero-area box" + what);
  }
  try {
    return BoundingBox::FromXywh(b.x, b.y, b.w, b.h);
  } catch (const InvalidArgument& e) {
    // x + w can round back onto x for extreme magnitudes.
    throw DataError(path, std::string(e.what()) + what);
  }
}

json BoxToJson(const BoundingBox& b) {
  return json::array({b.x_min(), b.y_min(), b.width(), b.height()});
}

std::string Fixed(double v, int decimals = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s == "-0.0000") s = "0.0000";
  return s;
}

std::string JsonReal(const std::optional<double>& v) {
  return v ? Fixed(*v) : "null";
}

std::string CsvReal(const std::optional<double>& v) {
  return v ? Fixed(*v) : "";
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

std::optional<double> OptReal(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::stod(s);
}

std::optional<double> OptReal(const json& obj, const char* key) {
  const json* v = OptionalField(obj, key);
  if (!v) return std::nullopt;
  return v->get<double>();
}

}  // namespace

// ---------------------------------------------------------------------------

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path.string(), "cannot open file for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw DataError(path.string(), "read failed");
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError(path.string(), "cannot open file for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw DataError(path.string(), "write failed");
}

bool Dataset::has_image(ImageId id) const {
  return std::any_of(images.begin(), images.end(),
                     [&](const ImageInfo& im) { return im.id == id; });
}

bool Dataset::has_category(ClassId id) const {
  return std::any_of(categories.begin(), categories.end(),
                     [&](const Category& c) { return c.id == id; });
}

std::vector<ClassId> Dataset::category_ids() const {
  std::vector<ClassId> ids;
  for (const auto& c : categories) ids.push_back(c.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::string Dataset::category_name(ClassId id) const {
  for (const auto& c : categories) {
    if (c.id == id) return c.name;
  }
  return {};
}

Dataset parse_ground_truth(std::string_view json_text) {
  const json root = ParseJson(json_text);
  if (!root.is_object()) throw DataError("$", "expected a COCO annotation object");

  Dataset ds;
  std::unordered_map<ImageId, std::size_t> image_at;
  const json& images = ArrayField(root, "images", "");
  for (std::size_t i = 0; i < images.size(); ++i) {
    const std::string path = Index("images", i);
    const json& im = images[i];
    ImageInfo info;
    info.id = AsInt(Field(im, "id", path), path + ".id");
    if (const json* w = OptionalField(im, "width")) {
      info.width = AsNumber(*w, path + ".width");
    }
    if (const json* h = OptionalField(im, "height")) {
      info.height = AsNumber(*h, path + ".height");
    }
    if (!image_at.emplace(info.id, ds.images.size()).second) {
      throw DataError(path + ".id",
                      "duplicate image id " + std::to_string(info.id));
    }
    ds.images.push_back(info);
  }

  std::unordered_set<ClassId> category_ids;
  const json& cats = ArrayField(root, "categories", "");
  for (std::size_t i = 0; i < cats.size(); ++i) {
    const std::string path = Index("categories", i);
    Category c;
    c.id = AsInt(Field(cats[i], "id", path), path + ".id");
    if (const json* n = OptionalField(cats[i], "name")) {
      c.name = AsString(*n, path + ".name");
    }
    if (!category_ids.insert(c.id).second) {
      throw DataError(path + ".id",
                      "duplicate category id " + std::to_string(c.id));
    }
    ds.categories.push_back(std::move(c));
  }

  const json& anns = ArrayField(root, "annotations", "");
  ds.ground_truths.reserve(anns.size());
  for (std::size_t i = 0; i < anns.size(); ++i) {
    const std::string path = Index("annotations", i);
    const json& a = anns[i];
    std::int64_t ann_id = static_cast<std::int64_t>(i);
    if (const json* id = OptionalField(a, "id")) ann_id = AsInt(*id, path + ".id");
    const std::string what = " (annotation id " + std::to_string(ann_id) + ")";

    GroundTruth g;
    g.image_id = AsInt(Field(a, "image_id", path), path + ".image_id");
    const auto im = image_at.find(g.image_id);
    if (im == image_at.end()) {
      throw DataError(path + ".image_id",
                      "unknown image id " + std::to_string(g.image_id) + what);
    }
    g.class_id = AsInt(Field(a, "category_id", path), path + ".category_id");
    if (!category_ids.count(g.class_id)) {
      throw DataError(path + ".category_id", "unknown category id " +
                                                 std::to_string(g.class_id) +
                                                 what);
    }
    const Xywh b = AsXywh(Field(a, "bbox", path), path + ".bbox");
    if (b.x < 0.0 || b.y < 0.0) {
      throw DataError(path + ".bbox", "negative box coordinate" + what);
    }
    g.box = ToBox(b, path + ".bbox", what);
    if (const json* crowd = OptionalField(a, "iscrowd")) {
      if (crowd->is_boolean()) {
        g.ignore = crowd->get<bool>();
      } else {
        const std::int64_t v = AsInt(*crowd, path + ".iscrowd");
        if (v != 0 && v != 1) throw DataError(path + ".iscrowd", "expected 0 or 1");
        g.ignore = v == 1;
      }
    }
    const ImageInfo& info = ds.images[im->second];
    if ((info.width && g.box.x_max() > *info.width) ||
        (info.height && g.box.y_max() > *info.height)) {
      ds.warnings.push_back(path + ".bbox: box extends past the image border" +
                            what);
    }
    ds.ground_truths.push_back(g);
    ds.annotation_ids.push_back(ann_id);
  }
  return ds;
}

Dataset load_ground_truth(const std::filesystem::path& path) {
  return parse_ground_truth(read_file(path));
}

std::vector<Detection> parse_detections(std::string_view json_text,
                                        const Dataset& dataset) {
  const json root = ParseJson(json_text);
  if (!root.is_array()) throw DataError("$", "expected an array of detections");

  std::unordered_set<ImageId> images;
  for (const auto& im : dataset.images) images.insert(im.id);
  std::unordered_set<ClassId> cats;
  for (const auto& c : dataset.categories) cats.insert(c.id);

  std::vector<Detection> out;
  out.reserve(root.size());
  for (std::size_t i = 0; i < root.size(); ++i) {
    const std::string path = Index("detections", i);
    const json& r = root[i];
    Detection d;
    d.image_id = AsInt(Field(r, "image_id", path), path + ".image_id");
    if (!images.count(d.image_id)) {
      throw DataError(path + ".image_id",
                      "unknown image id " + std::to_string(d.image_id));
    }
    d.class_id = AsInt(Field(r, "category_id", path), path + ".category_id");
    if (!cats.count(d.class_id)) {
      throw DataError(path + ".category_id",
                      "unknown category id " + std::to_string(d.class_id));
    }
    d.box = ToBox(AsXywh(Field(r, "bbox", path), path + ".bbox"),
                  path + ".bbox", "");
    d.score = AsNumber(Field(r, "score", path), path + ".score");
    if (d.score < 0.0 || d.score > 1.0) {
      throw DataError(path + ".score", "score outside [0, 1]");
    }
    out.push_back(d);
  }
  return out;
}

std::vector<Detection> load_detections(const std::filesystem::path& path,
                                       const Dataset& dataset) {
  return parse_detections(read_file(path), dataset);
}

std::string ground_truth_to_json(const Dataset& dataset) {
  json root;
  root["images"] = json::array();
  for (const auto& im : dataset.images) {
    json j{{"id", im.id}};
    if (im.width) j["width"] = *im.width;
    if (im.height) j["height"] = *im.height;
    root["images"].push_back(std::move(j));
  }
  root["categories"] = json::array();
  for (const auto& c : dataset.categories) {
    root["categories"].push_back({{"id", c.id}, {"name", c.name}});
  }
  root["annotations"] = json::array();
  for (std::size_t i = 0; i < dataset.ground_truths.size(); ++i) {
    const GroundTruth& g = dataset.ground_truths[i];
    const std::int64_t id = i < dataset.annotation_ids.size()
                                ? dataset.annotation_ids[i]
                                : static_cast<std::int64_t>(i + 1);
    root["annotations"].push_back({{"id", id},
                                   {"image_id", g.image_id},
                                   {"category_id", g.class_id},
                                   {"bbox", BoxToJson(g.box)},
                                   {"iscrowd", g.ignore ? 1 : 0}});
  }
  return root.dump();
}

std::string detections_to_json(std::span<const Detection> dets) {
  json root = json::array();
  for (const auto& d : dets) {
    root.push_back({{"image_id", d.image_id},
                    {"category_id", d.class_id},
                    {"bbox", BoxToJson(d.box)},
                    {"score", d.score}});
  }
  return root.dump();
}

// ---------------------------------------------------------------------------

ReportFormat parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv") return ReportFormat::kCsv;
  throw InvalidArgument("unknown report format '" + std::string(name) +
                        "' (expected json or csv)");
}

std::string report_to_json(const EvalReport& report) {
  std::ostringstream out;
  const EvalConfig& cfg = report.config;
  out << "{\n  \"schema\": \"" << kReportSchema << "\",\n";
  out << "  \"config\": {\"tau\": " << Fixed(cfg.tau) << ", \"taus\": [";
  for (std::size_t i = 0; i < cfg.taus.size(); ++i) {
    out << (i ? ", " : "") << Fixed(cfg.taus[i]);
  }
  out << "], \"grid_step\": " << Fixed(cfg.grid_step)
      << ", \"ap_variant\": \"" << to_string(cfg.ap_variant)
      << "\", \"s_star_tie_break\": \"largest\"},\n";
  out << "  \"classes\": [";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const ClassRow& r = report.rows[i];
    out << (i ? ",\n" : "\n") << "    {\"class_id\": " << r.class_id
        << ", \"name\": " << json(r.name).dump() << ", \"n_gt\": " << r.n_gt
        << ", \"n_det\": " << r.n_det
        << ", \"evaluable\": " << (r.evaluable ? "true" : "false")
        << ", \"olrp\": " << JsonReal(r.olrp)
        << ", \"olrp_iou\": " << JsonReal(r.olrp_iou)
        << ", \"olrp_fp\": " << JsonReal(r.olrp_fp)
        << ", \"olrp_fn\": " << JsonReal(r.olrp_fn)
        << ", \"s_star\": " << JsonReal(r.s_star)
        << ", \"ap_continuous\": " << JsonReal(r.ap_continuous)
        << ", \"ap_pascal11\": " << JsonReal(r.ap_pascal11)
        << ", \"ap_coco101\": " << JsonReal(r.ap_coco101)
        << ", \"map\": " << JsonReal(r.map) << "}";
  }
  out << (report.rows.empty() ? "],\n" : "\n  ],\n");
  const SummaryRow& s = report.summary;
  out << "  \"summary\": {\"molrp\": " << JsonReal(s.molrp)
      << ", \"molrp_iou\": " << JsonReal(s.molrp_iou)
      << ", \"molrp_fp\": " << JsonReal(s.molrp_fp)
      << ", \"molrp_fn\": " << JsonReal(s.molrp_fn)
      << ", \"map\": " << JsonReal(s.map)
      << ", \"map_at_tau\": " << JsonReal(s.map_at_tau)
      << ", \"s_star_min\": " << JsonReal(s.s_star_min)
      << ", \"s_star_max\": " << JsonReal(s.s_star_max)
      << ", \"n_evaluated\": " << s.n_evaluated << "}\n}\n";
  return out.str();
}

namespace {

constexpr const char* kReportCsvHeader =
    "row_type,class_id,name,n_gt,n_det,evaluable,olrp,olrp_iou,olrp_fp,"
    "olrp_fn,s_star,ap_continuous,ap_pascal11,ap_coco101,map,map_at_tau,"
    "s_star_min,s_star_max";

}  // namespace

std::string report_to_csv(const EvalReport& report) {
  std::ostringstream out;
  const EvalConfig& cfg = report.config;
  out << "# " << kReportSchema << " tau=" << Fixed(cfg.tau)
      << " grid_step=" << Fixed(cfg.grid_step)
      << " ap_variant=" << to_string(cfg.ap_variant) << " taus=";
  for (std::size_t i = 0; i < cfg.taus.size(); ++i) {
    out << (i ? ";" : "") << Fixed(cfg.taus[i]);
  }
  out << "\n" << kReportCsvHeader << "\n";
  for (const ClassRow& r : report.rows) {
    out << "class," << r.class_id << "," << CsvField(r.name) << "," << r.n_gt
        << "," << r.n_det << "," << (r.evaluable ? 1 : 0) << ","
        << CsvReal(r.olrp) << "," << CsvReal(r.olrp_iou) << ","
        << CsvReal(r.olrp_fp) << "," << CsvReal(r.olrp_fn) << ","
        << CsvReal(r.s_star) << "," << CsvReal(r.ap_continuous) << ","
        << CsvReal(r.ap_pascal11) << "," << CsvReal(r.ap_coco101) << ","
        << CsvReal(r.map) << ",,,\n";
  }
  const SummaryRow& s = report.summary;
  out << "summary,,," << ",," << s.n_evaluated << "," << CsvReal(s.molrp)
      << "," << CsvReal(s.molrp_iou) << "," << CsvReal(s.molrp_fp) << ","
      << CsvReal(s.molrp_fn) << ",,,,," << CsvReal(s.map) << ","
      << CsvReal(s.map_at_tau) << "," << CsvReal(s.s_star_min) << ","
      << CsvReal(s.s_star_max) << "\n";
  return out.str();
}

std::string format_report(const EvalReport& report, ReportFormat format) {
  return format == ReportFormat::kJson ? report_to_json(report)
                                       : report_to_csv(report);
}

void export_report(const EvalReport& report, ReportFormat format,
                   const std::filesystem::path& path) {
  write_file(path, format_report(report, format));
}

EvalReport parse_report_json(std::string_view text) {
  const json root = ParseJson(text);
  if (!root.is_object() || root.value("schema", "") != kReportSchema) {
    throw DataError("schema", "not an lrp_report_v1 document");
  }
  EvalReport rep;
  const json& cfg = Field(root, "config", "");
  rep.config.tau = AsNumber(Field(cfg, "tau", "config"), "config.tau");
  for (const auto& t : ArrayField(cfg, "taus", "config")) {
    rep.config.taus.push_back(t.get<double>());
  }
  rep.config.grid_step =
      AsNumber(Field(cfg, "grid_step", "config"), "config.grid_step");
  rep.config.ap_variant = parse_ap_variant(
      AsString(Field(cfg, "ap_variant", "config"), "config.ap_variant"));
  for (const auto& c : ArrayField(root, "classes", "")) {
    ClassRow r;
    r.class_id = c.at("class_id").get<ClassId>();
    r.name = c.at("name").get<std::string>();
    r.n_gt = c.at("n_gt").get<std::size_t>();
    r.n_det = c.at("n_det").get<std::size_t>();
    r.evaluable = c.at("evaluable").get<bool>();
    r.olrp = OptReal(c, "olrp");
    r.olrp_iou = OptReal(c, "olrp_iou");
    r.olrp_fp = OptReal(c, "olrp_fp");
    r.olrp_fn = OptReal(c, "olrp_fn");
    r.s_star = OptReal(c, "s_star");
    r.ap_continuous = OptReal(c, "ap_continuous");
    r.ap_pascal11 = OptReal(c, "ap_pascal11");
    r.ap_coco101 = OptReal(c, "ap_coco101");
    r.map = OptReal(c, "map");
    rep.rows.push_back(std::move(r));
  }
  const json& s = Field(root, "summary", "");
  rep.summary.molrp = OptReal(s, "molrp");
  rep.summary.molrp_iou = OptReal(s, "molrp_iou");
  rep.summary.molrp_fp = OptReal(s, "molrp_fp");
  rep.summary.molrp_fn = OptReal(s, "molrp_fn");
  rep.summary.map = OptReal(s, "map");
  rep.summary.map_at_tau = OptReal(s, "map_at_tau");
  rep.summary.s_star_min = OptReal(s, "s_star_min");
  rep.summary.s_star_max = OptReal(s, "s_star_max");
  rep.summary.n_evaluated = s.at("n_evaluated").get<std::size_t>();
  return rep;
}

EvalReport parse_report_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  EvalReport rep;
  if (!std::getline(in, line) ||
      line.rfind("# " + std::string(kReportSchema), 0) != 0) {
    throw DataError("line 1", "missing lrp_report_v1 header comment");
  }
  std::istringstream meta(line.substr(2 + kReportSchema.size()));
  std::string kv;
  while (meta >> kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
    if (key == "tau") rep.config.tau = std::stod(value);
    if (key == "grid_step") rep.config.grid_step = std::stod(value);
    if (key == "ap_variant") rep.config.ap_variant = parse_ap_variant(value);
    if (key == "taus") {
      std::istringstream ts(value);
      std::string t;
      while (std::getline(ts, t, ';')) {
        if (!t.empty()) rep.config.taus.push_back(std::stod(t));
      }
    }
  }
  if (!std::getline(in, line) || line != kReportCsvHeader) {
    throw DataError("line 2", "unexpected CSV header");
  }
  std::size_t line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = SplitCsvLine(line);
    if (f.size() != 18) {
      throw DataError("line " + std::to_string(line_no), "expected 18 fields");
    }
    if (f[0] == "class") {
      ClassRow r;
      r.class_id = std::stoll(f[1]);
      r.name = f[2];
      r.n_gt = std::stoull(f[3]);
      r.n_det = std::stoull(f[4]);
      r.evaluable = f[5] == "1";
      r.olrp = OptReal(f[6]);
      r.olrp_iou = OptReal(f[7]);
      r.olrp_fp = OptReal(f[8]);
      r.olrp_fn = OptReal(f[9]);
      r.s_star = OptReal(f[10]);
      r.ap_continuous = OptReal(f[11]);
      r.ap_pascal11 = OptReal(f[12]);
      r.ap_coco101 = OptReal(f[13]);
      r.map = OptReal(f[14]);
      rep.rows.push_back(std::move(r));
    } else if (f[0] == "summary") {
      rep.summary.n_evaluated = std::stoull(f[5]);
      rep.summary.molrp = OptReal(f[6]);
      rep.summary.molrp_iou = OptReal(f[7]);
      rep.summary.molrp_fp = OptReal(f[8]);
      rep.summary.molrp_fn = OptReal(f[9]);
      rep.summary.map = OptReal(f[14]);
      rep.summary.map_at_tau = OptReal(f[15]);
      rep.summary.s_star_min = OptReal(f[16]);
      rep.summary.s_star_max = OptReal(f[17]);
    } else {
      throw DataError("line " + std::to_string(line_no),
                      "unknown row type '" + f[0] + "'");
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

std::string curves_to_csv(std::span<const CurveSet> curves) {
  std::ostringstream out;
  out << "# " << kCurvesSchema << "\n"
      << "kind,class_id,tau,s,recall,precision,interp_precision,lrp,lrp_iou,"
         "lrp_fp,lrp_fn,n_tp,n_fp,n_fn,is_optimal\n";
  for (const CurveSet& c : curves) {
    const SweepResult& sw = c.sweep;
    if (sw.evaluable) {
      for (const SweepSample& sample : sw.samples) {
        if (!sample.breakdown) continue;
        const LrpBreakdown& b = *sample.breakdown;
        std::optional<double> recall, precision;
        if (b.n_tp + b.n_fn > 0) {
          recall = static_cast<double>(b.n_tp) / static_cast<double>(b.n_tp + b.n_fn);
        }
        if (b.n_tp + b.n_fp > 0) {
          precision = static_cast<double>(b.n_tp) / static_cast<double>(b.n_tp + b.n_fp);
        }
        out << "sweep," << sw.class_id << "," << Fixed(sw.tau) << ","
            << Fixed(sample.s) << "," << CsvReal(recall) << ","
            << CsvReal(precision) << ",," << Fixed(b.total) << ","
            << CsvReal(b.loc_component) << "," << CsvReal(b.fp_component)
            << "," << CsvReal(b.fn_component) << "," << b.n_tp << ","
            << b.n_fp << "," << b.n_fn << ","
            << (sample.s == sw.s_star ? 1 : 0) << "\n";
      }
    }
    if (c.rp) {
      const RPCurve& rp = *c.rp;
      for (std::size_t i = 0; i < rp.points.size(); ++i) {
        const RpPoint& p = rp.points[i];
        out << "rp," << rp.class_id << "," << Fixed(rp.tau) << ","
            << Fixed(p.score) << "," << Fixed(p.recall) << ","
            << Fixed(p.precision) << "," << Fixed(rp.interpolated_precision[i])
            << ",,,,,,,,0\n";
      }
    }
  }
  return out.str();
}

void export_curves(std::span<const CurveSet> curves,
                   const std::filesystem::path& path) {
  write_file(path, curves_to_csv(curves));
}

// ---------------------------------------------------------------------------

ThresholdPolicy ThresholdTable::policy(double general) const {
  ThresholdPolicy p;
  p.general = general;
  for (const auto& e : entries) p.per_class[e.class_id] = e.s_star;
  return p;
}

std::string thresholds_to_json(const ThresholdTable& table) {
  json root;
  root["schema"] = kThresholdsSchema;
  root["tau"] = table.tau;
  root["grid_step"] = table.grid_step;
  root["s_star_tie_break"] = "largest";
  root["thresholds"] = json::array();
  for (const auto& e : table.entries) {
    json j{{"class_id", e.class_id}, {"name", e.name}, {"s_star", e.s_star}};
    j["olrp"] = e.olrp ? json(*e.olrp) : json(nullptr);
    if (!e.warning.empty()) j["warning"] = e.warning;
    root["thresholds"].push_back(std::move(j));
  }
  return root.dump(2) + "\n";
}

ThresholdTable parse_thresholds(std::string_view text) {
  const json root = ParseJson(text);
  if (!root.is_object() || root.value("schema", "") != kThresholdsSchema) {
    throw DataError("schema", "not an lrp_thresholds_v1 document");
  }
  ThresholdTable t;
  t.tau = AsNumber(Field(root, "tau", ""), "tau");
  t.grid_step = AsNumber(Field(root, "grid_step", ""), "grid_step");
  const json& arr = ArrayField(root, "thresholds", "");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = Index("thresholds", i);
    ThresholdEntry e;
    e.class_id = AsInt(Field(arr[i], "class_id", path), path + ".class_id");
    e.s_star = AsNumber(Field(arr[i], "s_star", path), path + ".s_star");
    if (e.s_star < 0.0 || e.s_star > 1.0) {
      throw DataError(path + ".s_star", "threshold outside [0, 1]");
    }
    if (const json* n = OptionalField(arr[i], "name")) e.name = AsString(*n, path + ".name");
    if (const json* o = OptionalField(arr[i], "olrp")) e.olrp = AsNumber(*o, path + ".olrp");
    if (const json* w = OptionalField(arr[i], "warning")) e.warning = AsString(*w, path + ".warning");
    t.entries.push_back(std::move(e));
  }
  return t;
}

ThresholdTable load_thresholds(const std::filesystem::path& path) {
  return parse_thresholds(read_file(path));
}

// ---------------------------------------------------------------------------

StreamFixture parse_stream(std::string_view text) {
  const json root = ParseJson(text);
  if (!root.is_object()) throw DataError("$", "expected a stream object");
  StreamFixture fx;
  const json& frames = ArrayField(root, "frames", "");
  for (std::size_t f = 0; f < frames.size(); ++f) {
    const std::string fpath = Index("frames", f);
    FrameDetections frame;
    frame.frame_index =
        AsInt(Field(frames[f], "frame_index", fpath), fpath + ".frame_index");
    const json& dets = ArrayField(frames[f], "detections", fpath);
    for (std::size_t i = 0; i < dets.size(); ++i) {
      const std::string path = Index(fpath + ".detections", i);
      StreamDetection sd;
      sd.det.image_id = frame.frame_index;
      sd.det.class_id = AsInt(Field(dets[i], "class_id", path), path + ".class_id");
      sd.det.box = ToBox(AsXywh(Field(dets[i], "bbox", path), path + ".bbox"),
                         path + ".bbox", "");
      const json& cs = ArrayField(dets[i], "class_scores", path);
      if (cs.empty()) throw DataError(path + ".class_scores", "empty score vector");
      double sum = 0.0;
      for (std::size_t k = 0; k < cs.size(); ++k) {
        const double p = AsNumber(cs[k], Index(path + ".class_scores", k));
        if (p < 0.0 || p > 1.0) {
          throw DataError(Index(path + ".class_scores", k), "outside [0, 1]");
        }
        sd.class_scores.push_back(p);
        sum += p;
      }
      if (std::abs(sum - 1.0) > 1e-9) {
        throw DataError(path + ".class_scores", "entries must sum to 1");
      }
      sd.det.score = *std::max_element(sd.class_scores.begin(), sd.class_scores.end());
      frame.detections.push_back(std::move(sd));
    }
    if (const json* gts = OptionalField(frames[f], "ground_truths")) {
      if (!gts->is_array()) throw DataError(fpath + ".ground_truths", "expected an array");
      for (std::size_t i = 0; i < gts->size(); ++i) {
        const std::string path = Index(fpath + ".ground_truths", i);
        GroundTruth g;
        g.image_id = frame.frame_index;
        g.class_id = AsInt(Field((*gts)[i], "class_id", path), path + ".class_id");
        g.box = ToBox(AsXywh(Field((*gts)[i], "bbox", path), path + ".bbox"),
                      path + ".bbox", "");
        fx.ground_truths.push_back(g);
      }
    }
    if (!fx.frames.empty() && frame.frame_index <= fx.frames.back().frame_index) {
      throw DataError(fpath + ".frame_index", "frame indices must strictly increase");
    }
    fx.frames.push_back(std::move(frame));
  }
  return fx;
}

StreamFixture load_stream(const std::filesystem::path& path) {
  return parse_stream(read_file(path));
}

std::string stream_to_json(const StreamFixture& fixture) {
  json frames = json::array();
  for (const auto& frame : fixture.frames) {
    json dets = json::array();
    for (const auto& d : frame.detections) {
      dets.push_back({{"class_id", d.det.class_id},
                      {"bbox", BoxToJson(d.det.box)},
                      {"class_scores", d.class_scores}});
    }
    json gts = json::array();
    for (const auto& g : fixture.ground_truths) {
      if (g.image_id != frame.frame_index) continue;
      gts.push_back({{"class_id", g.class_id}, {"bbox", BoxToJson(g.box)}});
    }
    frames.push_back({{"frame_index", frame.frame_index},
                      {"detections", std::move(dets)},
                      {"ground_truths", std::move(gts)}});
  }
  return json{{"frames", std::move(frames)}}.dump() + "\n";
}

std::string linked_stream_to_json(std::span<const LinkedFrame> frames) {
  json out = json::array();
  for (const auto& frame : frames) {
    json dets = json::array();
    for (const auto& d : frame.detections) {
      dets.push_back({{"class_id", d.detection.det.class_id},
                      {"bbox", BoxToJson(d.detection.det.box)},
                      {"class_scores", d.detection.class_scores},
                      {"score", d.detection.det.score},
                      {"raw_score", d.raw_score},
                      {"tubelet_id", d.tubelet_id},
                      {"dominant", d.dominant}});
    }
    out.push_back({{"frame_index", frame.frame_index}, {"detections", std::move(dets)}});
  }
  return json{{"frames", std::move(out)}}.dump() + "\n";
}

}  // namespace lrp
