#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracdim/cloud.hpp"
#include "fracdim/dimensions.hpp"
#include "fracdim/errors.hpp"
#include "fracdim/estimate.hpp"
#include "fracdim/hausdorff.hpp"
#include "fracdim/io.hpp"
#include "fracdim/moran.hpp"
#include "fracdim/numbers.hpp"
#include "fracdim/report.hpp"
#include "fracdim/symbolic.hpp"
#include "fracdim/systems.hpp"

#ifndef FRACDIM_VERSION
#define FRACDIM_VERSION "0.0.0"
#endif

namespace {

using namespace fracdim;
using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr double kCheckTol = 1e-9;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fingerprint(const std::string& bytes) {
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", h);
  return buf;
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt_fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

double elapsed_ms(const std::chrono::steady_clock::time_point& t0) {
  const auto dt = std::chrono::steady_clock::now() - t0;
  return std::chrono::duration<double, std::milli>(dt).count();
}

ojson make_document(const char* schema, const std::string& path, const std::string& bytes) {
  ojson doc;
  doc["schema"] = schema;
  doc["input"] = {{"file", fs::path(path).filename().string()}, {"fingerprint", fingerprint(bytes)}};
  doc["tool"] = {{"name", "fracdim"}, {"version", FRACDIM_VERSION}};
  return doc;
}

ojson dim_json(const DimValue& v) {
  ojson j;
  j["value"] = v.value;
  if (v.interval) j["interval"] = {v.interval->lo, v.interval->hi};
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

ojson quantities_json(const CarpetQuantities& q) {
  ojson j;
  j["s1"] = q.horizontal.s;
  j["t1"] = q.horizontal.t;
  j["u1"] = q.horizontal.u;
  j["DA"] = q.horizontal.D;
  if (q.vertical) {
    j["s2"] = q.vertical->s;
    j["t2"] = q.vertical->t;
    j["u2"] = q.vertical->u;
    j["DB"] = q.vertical->D;
  }
  return j;
}

ojson report_json(const DimensionReport& report) {
  ojson j;
  if (report.carpetClass) j["class"] = to_string(*report.carpetClass);
  if (report.similarity) j["similarity"] = *report.similarity;
  if (report.osc) j["osc"] = *report.osc;
  ojson dims;
  dims["lower"] = dim_json(report.lower);
  dims["hausdorff"] = dim_json(report.hausdorff);
  dims["box"] = dim_json(report.box);
  dims["assouad"] = dim_json(report.assouad);
  j["dimensions"] = dims;
  if (report.quantities) j["quantities"] = quantities_json(*report.quantities);
  if (report.dichotomy) {
    ojson d;
    d["kind"] = to_string(report.dichotomy->kind);
    d["description"] = report.dichotomy->description;
    if (!report.dichotomy->violation.empty()) d["violation"] = report.dichotomy->violation;
    j["dichotomy"] = d;
  }
  return j;
}

std::string dim_text(const DimValue& v) {
  std::string out;
  if (v.interval)
    out = "in [" + format_double(v.interval->lo) + ", " + format_double(v.interval->hi) + "]";
  else
    out = "= " + format_double(v.value);
  if (!v.note.empty()) out += "   (" + v.note + ")";
  return out;
}

void print_report(std::ostream& os, const System& system, const DimensionReport& report) {
  os << "system: " << system_kind(system);
  if (report.carpetClass) os << " (" << to_string(*report.carpetClass) << " class)";
  os << "\n";
  if (report.similarity) {
    os << "similarity exponent: " << format_double(*report.similarity) << " (osc: "
       << (report.osc && *report.osc ? "yes" : "no") << ")\n";
  }
  if (report.quantities) {
    const auto& q = *report.quantities;
    os << "quantities: s1=" << format_double(q.horizontal.s) << " t1=" << format_double(q.horizontal.t)
       << " u1=" << format_double(q.horizontal.u) << " DA=" << format_double(q.horizontal.D);
    if (q.vertical) {
      os << " | s2=" << format_double(q.vertical->s) << " t2=" << format_double(q.vertical->t)
         << " u2=" << format_double(q.vertical->u) << " DB=" << format_double(q.vertical->D);
    }
    os << "\n";
  }
  os << "dimensions\n";
  os << "  lower     " << dim_text(report.lower) << "\n";
  os << "  hausdorff " << dim_text(report.hausdorff) << "\n";
  os << "  box       " << dim_text(report.box) << "\n";
  os << "  assouad   " << dim_text(report.assouad) << "\n";
  if (report.dichotomy) {
    os << "dichotomy: " << report.dichotomy->description << " [" << to_string(report.dichotomy->kind)
       << "]";
    if (!report.dichotomy->violation.empty()) os << "  violation: " << report.dichotomy->violation;
    os << "\n";
  }
}

int run_dims(const std::string& path, bool jsonOut, const HausdorffSettings& hs) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string bytes = read_file(path);
  const System system = parse_system(bytes);
  const DimensionReport report = dimension_report(system, hs);
  if (jsonOut) {
    ojson doc = make_document("fracdim-report/1", path, bytes);
    doc["system"] = {{"kind", system_kind(system)}};
    doc["tolerances"] = {{"moran", kMoranTol}, {"hausdorffStall", hs.tol}, {"dichotomy", kCheckTol}};
    doc.update(report_json(report));
    doc["timing_ms"] = elapsed_ms(t0);
    std::cout << doc.dump(2) << "\n";
  } else {
    print_report(std::cout, system, report);
    std::cout << "computed in " << fmt6(elapsed_ms(t0)) << " ms\n";
  }
  return 0;
}

// ---- estimate ----

struct ManifestEntry {
  bool found = false;
  int depth = 0;
  std::string sampling;
  std::vector<double> boxScales;
  std::vector<ScalePair> pairs;
  std::map<std::string, double> tolerance;
  double intervalSlack = 0.05;
};

double json_num(const ojson& j, const char* what) {
  if (j.is_string()) return parse_num(j.get<std::string>()).val;
  if (j.is_number()) return j.get<double>();
  throw input_error(std::string(what) + ": expected a number or rational string");
}

ManifestEntry manifest_entry_for(const std::string& path) {
  ManifestEntry entry;
  const fs::path manifestPath = fs::path(path).parent_path() / "manifest.json";
  std::error_code ec;
  if (!fs::exists(manifestPath, ec)) return entry;
  ojson m;
  try {
    m = ojson::parse(read_file(manifestPath.string()));
  } catch (const nlohmann::json::exception& e) {
    throw input_error("manifest.json: syntax error: " + std::string(e.what()));
  }
  if (!m.contains("fixtures") || !m["fixtures"].is_array()) return entry;
  const std::string file = fs::path(path).filename().string();
  for (const auto& f : m["fixtures"]) {
    if (!f.is_object() || !f.contains("file") || f["file"] != file) continue;
    entry.found = true;
    if (f.contains("depth")) entry.depth = f["depth"].get<int>();
    if (f.contains("sampling")) entry.sampling = f["sampling"].get<std::string>();
    if (f.contains("boxScales"))
      for (const auto& s : f["boxScales"]) entry.boxScales.push_back(json_num(s, "manifest boxScales"));
    if (f.contains("pairs")) {
      for (const auto& p : f["pairs"]) {
        if (!p.is_array() || p.size() != 2)
          throw input_error("manifest pairs: expected [R, r] entries");
        entry.pairs.push_back({json_num(p[0], "manifest pair"), json_num(p[1], "manifest pair")});
      }
    }
    if (f.contains("tolerance"))
      for (const auto& [k, v] : f["tolerance"].items()) entry.tolerance[k] = v.get<double>();
    if (f.contains("intervalSlack")) entry.intervalSlack = f["intervalSlack"].get<double>();
    break;
  }
  return entry;
}

Sampling parse_sampling(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (c != '-' && c != '_') s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "corners") return Sampling::Corners;
  if (s == "fixedpoints") return Sampling::FixedPoints;
  throw input_error("sampling: expected corners or fixed-points, got \"" + raw + "\"");
}

std::vector<double> parse_ladder(const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto b = tok.find_first_not_of(" \t");
    const auto e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    out.push_back(parse_num(tok.substr(b, e - b + 1)).val);
  }
  if (out.empty()) throw input_error("--ladder: no scales given");
  return out;
}

std::size_t system_map_count(const System& system) {
  if (const auto* ifs = std::get_if<SimilarityIFS1D>(&system)) return ifs->maps.size();
  if (const auto* grid = std::get_if<BaranskiCarpet>(&system)) return grid->cells.size();
  return cell_count(Carpet{std::get<LGCarpet>(system)});
}

int auto_depth(const System& system) {
  const double m = static_cast<double>(system_map_count(system));
  const int k = static_cast<int>(std::floor(std::log(1e6) / std::log(m)));
  return std::clamp(k, 1, 24);
}

struct EstimateRow {
  std::string name;
  DimValue exact;
  double estimate = 0.0;
  std::optional<double> tolerance;
  double intervalSlack = 0.05;
  std::string status;
  double difference = 0.0;
};

EstimateRow make_row(const std::string& name, const DimValue& exact, double estimate,
                     const std::map<std::string, double>& tolerance, double intervalSlack) {
  EstimateRow row;
  row.name = name;
  row.exact = exact;
  row.estimate = estimate;
  row.intervalSlack = intervalSlack;
  const auto it = tolerance.find(name);
  if (it != tolerance.end()) row.tolerance = it->second;
  if (exact.interval) {
    row.difference = std::max(0.0, std::max(exact.interval->lo - estimate,
                                            estimate - exact.interval->hi));
    row.status = estimate >= exact.interval->lo - intervalSlack &&
                         estimate <= exact.interval->hi + intervalSlack
                     ? "pass"
                     : "FAIL";
  } else {
    row.difference = std::fabs(estimate - exact.value);
    if (row.tolerance)
      row.status = row.difference <= *row.tolerance ? "pass" : "FAIL";
    else
      row.status = "info";
  }
  return row;
}

std::string exact_text(const DimValue& v) {
  if (v.interval)
    return "[" + fmt6(v.interval->lo) + ", " + fmt6(v.interval->hi) + "]";
  return fmt6(v.value);
}

int run_estimate(const std::string& path, bool jsonOut, int depthFlag, unsigned long long seed,
                 const std::string& ladderFlag, const std::string& samplingFlag) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string bytes = read_file(path);
  const System system = parse_system(bytes);
  const ManifestEntry manifest = manifest_entry_for(path);

  const int depth = depthFlag > 0 ? depthFlag : manifest.depth > 0 ? manifest.depth : auto_depth(system);
  std::string samplingName = !samplingFlag.empty() ? samplingFlag
                             : !manifest.sampling.empty() ? manifest.sampling
                                                          : "corners";
  const Sampling sampling = parse_sampling(samplingName);
  samplingName = sampling == Sampling::Corners ? "corners" : "fixed-points";

  const PointCloud cloud = point_cloud(system, depth, sampling);
  const std::vector<double> boxScales = !ladderFlag.empty() ? parse_ladder(ladderFlag)
                                        : !manifest.boxScales.empty() ? manifest.boxScales
                                                                      : default_box_scales(cloud);
  const std::vector<ScalePair> pairs =
      !manifest.pairs.empty() ? manifest.pairs : default_scale_pairs(cloud);

  CenterPolicy policy;
  policy.seed = seed;

  const DimensionReport report = dimension_report(system);
  const double boxEst = box_estimate(cloud, boxScales);
  const double lowerEst = lower_estimate(cloud, pairs, policy);
  const double assouadEst = assouad_estimate(cloud, pairs, policy);

  std::vector<EstimateRow> rows;
  rows.push_back(make_row("lower", report.lower, lowerEst, manifest.tolerance, manifest.intervalSlack));
  rows.push_back(make_row("box", report.box, boxEst, manifest.tolerance, manifest.intervalSlack));
  rows.push_back(
      make_row("assouad", report.assouad, assouadEst, manifest.tolerance, manifest.intervalSlack));

  if (jsonOut) {
    ojson doc = make_document("fracdim-estimate/1", path, bytes);
    doc["label"] = "finite-scale proxy";
    ojson settings;
    settings["depth"] = depth;
    settings["sampling"] = samplingName;
    settings["seed"] = seed;
    settings["boxScales"] = boxScales;
    ojson pj = ojson::array();
    for (const auto& p : pairs) pj.push_back({p.R, p.r});
    settings["pairs"] = pj;
    doc["settings"] = settings;
    doc["cloud"] = {{"points", cloud.size()}, {"resolution", cloud.resolution}};
    doc["exact"] = report_json(report);
    ojson rj = ojson::array();
    for (const auto& row : rows) {
      ojson r;
      r["dimension"] = row.name;
      r["exact"] = dim_json(row.exact);
      r["estimate"] = row.estimate;
      r["difference"] = row.difference;
      if (row.tolerance) r["tolerance"] = *row.tolerance;
      r["status"] = row.status;
      rj.push_back(r);
    }
    doc["rows"] = rj;
    doc["timing_ms"] = elapsed_ms(t0);
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "fixture: " << fs::path(path).filename().string() << " (" << system_kind(system);
    if (report.carpetClass) std::cout << ", " << to_string(*report.carpetClass) << " class";
    std::cout << ")\n";
    std::cout << "cloud: depth " << depth << ", " << samplingName << " sampling, " << cloud.size()
              << " points, resolution " << fmt6(cloud.resolution) << "\n";
    std::cout << std::left << std::setw(10) << "dimension" << std::setw(22) << "exact"
              << std::setw(12) << "estimate" << std::setw(12) << "|diff|" << std::setw(12)
              << "tolerance" << "status\n";
    for (const auto& row : rows) {
      std::cout << std::left << std::setw(10) << row.name << std::setw(22) << exact_text(row.exact)
                << std::setw(12) << fmt6(row.estimate) << std::setw(12) << fmt6(row.difference)
                << std::setw(12)
                << (row.tolerance ? fmt6(*row.tolerance)
                                  : row.exact.interval ? "+" + fmt6(row.intervalSlack) : "-")
                << row.status << "\n";
    }
    std::cout << "note: estimates are finite-scale proxies; ladders and tolerances are harness "
                 "choices, not convergence claims.\n";
    std::cout << "computed in " << fmt6(elapsed_ms(t0)) << " ms\n";
  }
  return 0;
}

// ---- render ----

struct RectD {
  double x, y, w, h;
};

void check_render_budget(std::size_t maps, int depth) {
  double count = 1.0;
  for (int k = 0; k < depth; ++k) {
    count *= static_cast<double>(maps);
    if (count > static_cast<double>(kWordBudget))
      throw budget_error("render: depth " + std::to_string(depth) + " needs more than " +
                         std::to_string(kWordBudget) + " rectangles");
  }
}

void svg_rect(std::string& out, double x, double y, double w, double h, const char* style) {
  out += "  <rect x=\"" + fmt_fixed6(x) + "\" y=\"" + fmt_fixed6(y) + "\" width=\"" +
         fmt_fixed6(w) + "\" height=\"" + fmt_fixed6(h) + "\" " + style + "/>\n";
}

constexpr const char* kFillStyle =
    "fill=\"#2f6f9f\" fill-opacity=\"0.8\" stroke=\"#1b3a52\" stroke-width=\"0.4\"";
constexpr const char* kFrameStyle = "fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"";

void panel_rects(std::string& out, const std::vector<RectD>& rects, double px, double py,
                 double side) {
  for (const auto& r : rects)
    svg_rect(out, px + r.x * side, py + (1.0 - r.y - r.h) * side, r.w * side, r.h * side,
             kFillStyle);
  svg_rect(out, px, py, side, side, kFrameStyle);
}

void svg_text(std::string& out, double x, double y, const std::string& text) {
  out += "  <text x=\"" + fmt_fixed6(x) + "\" y=\"" + fmt_fixed6(y) +
         "\" font-family=\"sans-serif\" font-size=\"14\" fill=\"#333333\">" + text + "</text>\n";
}

std::vector<RectD> carpet_level(const std::vector<AffineMap2D>& maps, int depth) {
  std::vector<RectD> level{{0.0, 0.0, 1.0, 1.0}};
  for (int k = 0; k < depth; ++k) {
    std::vector<RectD> next;
    next.reserve(level.size() * maps.size());
    for (const auto& r : level)
      for (const auto& m : maps)
        next.push_back({r.x + r.w * m.a.val, r.y + r.h * m.b.val, r.w * m.c.val, r.h * m.d.val});
    level = std::move(next);
  }
  return level;
}

std::string render_carpet(const std::vector<AffineMap2D>& maps, int depth) {
  check_render_budget(maps.size(), depth);
  std::vector<RectD> pattern;
  pattern.reserve(maps.size());
  for (const auto& m : maps) pattern.push_back({m.a.val, m.b.val, m.c.val, m.d.val});
  const std::vector<RectD> attractor = carpet_level(maps, depth);

  std::string out =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"860\" height=\"460\" "
      "viewBox=\"0 0 860 460\">\n";
  svg_rect(out, 0, 0, 860, 460, "fill=\"#ffffff\"");
  svg_text(out, 20, 36, "defining pattern");
  svg_text(out, 440, 36, "depth " + std::to_string(depth) + " union");
  panel_rects(out, pattern, 20, 46, 394);
  panel_rects(out, attractor, 440, 46, 394);
  out += "</svg>\n";
  return out;
}

std::string render_intervals(const SimilarityIFS1D& ifs, int depth) {
  check_render_budget(ifs.maps.size(), depth);
  const double width = 860.0, side = 800.0, rowStep = 34.0, barH = 22.0;
  const double height = 56.0 + rowStep * static_cast<double>(depth + 1);
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt_fixed6(width) +
                    "\" height=\"" + fmt_fixed6(height) + "\" viewBox=\"0 0 " + fmt_fixed6(width) +
                    " " + fmt_fixed6(height) + "\">\n";
  svg_rect(out, 0, 0, width, height, "fill=\"#ffffff\"");
  svg_text(out, 20, 30, "interval pattern by depth");
  std::vector<std::pair<double, double>> level{{0.0, 1.0}};
  for (int k = 0; k <= depth; ++k) {
    const double y = 46.0 + rowStep * static_cast<double>(k);
    svg_text(out, 6, y + barH - 6.0, std::to_string(k));
    for (const auto& [t, r] : level) svg_rect(out, 30 + t * side, y, r * side, barH, kFillStyle);
    if (k == depth) break;
    std::vector<std::pair<double, double>> next;
    next.reserve(level.size() * ifs.maps.size());
    for (const auto& [t, r] : level)
      for (const auto& m : ifs.maps) next.emplace_back(t + r * m.translate.val, r * m.ratio.val);
    level = std::move(next);
  }
  out += "</svg>\n";
  return out;
}

int run_render(const std::string& path, int depth, std::string outPath) {
  const std::string bytes = read_file(path);
  const System system = parse_system(bytes);
  if (depth < 0) throw input_error("render: depth must be nonnegative");
  if (outPath.empty()) outPath = fs::path(path).stem().string() + ".svg";

  std::string svg;
  if (const auto* ifs = std::get_if<SimilarityIFS1D>(&system)) {
    svg = render_intervals(*ifs, depth);
  } else if (const auto* grid = std::get_if<BaranskiCarpet>(&system)) {
    svg = render_carpet(affine_maps(*grid), depth);
  } else {
    svg = render_carpet(affine_maps(std::get<LGCarpet>(system)), depth);
  }

  std::ofstream out(outPath, std::ios::binary);
  if (!out) throw input_error("cannot write file: " + outPath);
  out << svg;
  out.flush();
  if (!out) throw input_error("write failed: " + outPath);
  std::cout << "wrote " << outPath << "\n";
  return 0;
}

// ---- check ----

struct CheckLine {
  std::string name;
  bool ok = false;
  std::string detail;
};

void check_carpet(const Carpet& carpet, bool perturb, std::vector<CheckLine>& lines) {
  const CarpetClass cls = classify(carpet);
  const CarpetQuantities q0 = carpet_quantities(carpet);
  CarpetQuantities q = q0;
  if (perturb) q.horizontal.D += 0.03;

  auto boundsLine = [&](const char* name, const AxisQuantities& a) {
    const bool ok = a.s + a.u <= a.D + kCheckTol && a.D <= a.s + a.t + kCheckTol;
    lines.push_back({name, ok,
                     "s+u " + format_double(a.s + a.u) + " <= D " + format_double(a.D) +
                         " <= s+t " + format_double(a.s + a.t)});
  };
  boundsLine("direction-1 exponent bounds", q.horizontal);
  if (q.vertical) boundsLine("direction-2 exponent bounds", *q.vertical);

  if (cls == CarpetClass::SelfSimilar) {
    const DimensionReport report = dimension_report(carpet);
    const double spread = std::max({report.hausdorff.value, report.box.value, report.assouad.value}) -
                          std::min({report.hausdorff.value, report.box.value, report.lower.value});
    lines.push_back({"equal-ratio carpet: all four dimensions equal", spread <= kCheckTol,
                     "spread " + format_double(spread)});
    return;
  }

  const double lower = lower_dimension(cls, q);
  const double box = box_dimension(cls, q);
  const double assouad = assouad_dimension(cls, q);
  lines.push_back({"ordering lower <= box <= assouad",
                   lower <= box + kCheckTol && box <= assouad + kCheckTol,
                   "lower " + format_double(lower) + ", box " + format_double(box) + ", assouad " +
                       format_double(assouad)});

  DimensionReport r;
  r.lower.value = lower;
  r.box.value = box;
  r.assouad.value = assouad;
  if (cls == CarpetClass::Mixed) {
    r.hausdorff.value = box - lower <= kCheckTol ? box : lower;
  } else if (const auto* grid = std::get_if<BaranskiCarpet>(&carpet)) {
    const BaranskiCarpet oriented = cls == CarpetClass::Vertical ? transpose(*grid) : *grid;
    r.hausdorff.value = hausdorff_dimension_lg(lg_view(oriented));
  } else {
    r.hausdorff.value = hausdorff_dimension_lg(std::get<LGCarpet>(carpet));
  }
  const DichotomyResult dichotomy = dichotomy_check(r, cls);
  lines.push_back({"dichotomy", dichotomy.kind != Dichotomy::Other,
                   dichotomy.violation.empty() ? dichotomy.description + " [" +
                                                     to_string(dichotomy.kind) + "]"
                                               : dichotomy.violation});
  if (cls != CarpetClass::Mixed) {
    const double h = r.hausdorff.value;
    lines.push_back({"hausdorff within [lower, box]",
                     h >= lower - kCheckTol && h <= box + kCheckTol,
                     "hausdorff " + format_double(h) + " in [" + format_double(lower) + ", " +
                         format_double(box) + "]"});
  }

  if (const auto* grid = std::get_if<BaranskiCarpet>(&carpet)) {
    const BaranskiCarpet flipped = transpose(*grid);
    const CarpetQuantities qt = carpet_quantities(Carpet{flipped});
    const bool swapped = qt.vertical && q0.vertical && qt.horizontal.s == q0.vertical->s &&
                         qt.horizontal.t == q0.vertical->t && qt.horizontal.u == q0.vertical->u &&
                         qt.horizontal.D == q0.vertical->D && qt.vertical->s == q0.horizontal.s &&
                         qt.vertical->t == q0.horizontal.t && qt.vertical->u == q0.horizontal.u &&
                         qt.vertical->D == q0.horizontal.D;
    lines.push_back({"transposition swaps the axis quantities exactly", swapped,
                     swapped ? "bit-identical" : "quantities differ"});
    const CarpetClass clsT = classify(flipped);
    const bool dimsEqual = lower_dimension(clsT, qt) == lower_dimension(cls, q0) &&
                           box_dimension(clsT, qt) == box_dimension(cls, q0) &&
                           assouad_dimension(clsT, qt) == assouad_dimension(cls, q0);
    lines.push_back({"transposition preserves lower/box/assouad exactly", dimsEqual,
                     dimsEqual ? "bit-identical" : "values differ"});
  }
}

void check_similarity(const SimilarityIFS1D& ifs, std::vector<CheckLine>& lines) {
  const DimensionReport report = self_similar_report(ifs);
  const double s = report.similarity.value_or(0.0);
  lines.push_back({"similarity exponent finite and nonnegative", std::isfinite(s) && s >= 0.0,
                   "s " + format_double(s)});
  const bool chain = report.lower.value <= report.hausdorff.value + kCheckTol &&
                     report.hausdorff.value <= report.box.value + kCheckTol &&
                     report.box.value <= report.assouad.value + kCheckTol;
  lines.push_back({"ordering lower <= hausdorff <= box <= assouad", chain,
                   "lower " + format_double(report.lower.value) + ", assouad " +
                       format_double(report.assouad.value)});
  if (report.osc && *report.osc) {
    const double spread = report.assouad.value - report.lower.value;
    lines.push_back({"osc: all four dimensions equal the exponent", std::fabs(spread) <= kCheckTol,
                     "spread " + format_double(spread)});
  } else {
    bool wellFormed = true;
    for (const DimValue* v : {&report.lower, &report.hausdorff, &report.box, &report.assouad}) {
      if (!v->interval || v->interval->lo > v->interval->hi + kCheckTol ||
          v->interval->lo < -kCheckTol || v->interval->hi > 1.0 + kCheckTol)
        wellFormed = false;
    }
    lines.push_back({"no osc: bounds are intervals inside [0, 1]", wellFormed,
                     "cap " + format_double(std::min(s, 1.0))});
  }
}

int run_check(const std::string& path) {
  const std::string bytes = read_file(path);
  const System system = parse_system(bytes);
  const bool perturb = std::getenv("FRACDIM_CHECK_PERTURB") != nullptr;

  std::vector<CheckLine> lines;
  lines.push_back({"parse and type invariants", true, "kind " + system_kind(system)});
  if (perturb)
    std::cout << "fault injection: FRACDIM_CHECK_PERTURB set, direction-1 exponent shifted by 0.03\n";

  if (const auto* ifs = std::get_if<SimilarityIFS1D>(&system)) {
    check_similarity(*ifs, lines);
  } else if (const auto* grid = std::get_if<BaranskiCarpet>(&system)) {
    check_carpet(Carpet{*grid}, perturb, lines);
  } else {
    check_carpet(Carpet{std::get<LGCarpet>(system)}, perturb, lines);
  }

  bool allOk = true;
  for (const auto& line : lines) {
    std::cout << (line.ok ? "ok   " : "FAIL ") << line.name;
    if (!line.detail.empty()) std::cout << ": " << line.detail;
    std::cout << "\n";
    allOk = allOk && line.ok;
  }
  if (!allOk) {
    std::cerr << "invariant violation detected\n";
    return 3;
  }
  std::cout << "all checks passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fracdim: exact and empirical dimensions of self-affine carpets and "
               "self-similar sets"};
  app.set_version_flag("--version", FRACDIM_VERSION);
  app.require_subcommand(1);

  std::string path;
  bool jsonOut = false;
  HausdorffSettings hs;
  int depth = 0;
  unsigned long long seed = 1;
  std::string ladder;
  std::string sampling;
  std::string outPath;
  int renderDepth = 4;

  auto* dims = app.add_subcommand("dims", "Closed-form dimension report for a system file");
  dims->add_option("path", path, "system file")->required();
  dims->add_flag("--json", jsonOut, "machine-readable report");
  dims->add_option("--tol", hs.tol, "Hausdorff ascent stall tolerance")->capture_default_str();
  dims->add_option("--restarts", hs.restarts, "Hausdorff optimizer restarts")->capture_default_str();
  dims->add_option("--seed", hs.seed, "optimizer restart seed")->capture_default_str();

  auto* estimate =
      app.add_subcommand("estimate", "Covering-count estimates on a generated point cloud");
  estimate->add_option("path", path, "system file")->required();
  estimate->add_flag("--json", jsonOut, "machine-readable report");
  estimate->add_option("--depth", depth, "word depth for the point cloud (default: manifest or auto)");
  estimate->add_option("--seed", seed, "center sampling seed")->capture_default_str();
  estimate->add_option("--ladder", ladder, "comma-separated box-counting scales, e.g. 1/4,1/8,1/16");
  estimate->add_option("--sampling", sampling, "corners or fixed-points");

  auto* render = app.add_subcommand("render", "Render the defining pattern and a depth-K union");
  render->add_option("path", path, "system file")->required();
  render->add_option("--depth", renderDepth, "iteration depth")->capture_default_str();
  render->add_option("-o,--out", outPath, "output SVG path (default: input stem + .svg)");

  auto* check = app.add_subcommand("check", "Run invariant checks on a system file");
  check->add_option("path", path, "system file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (dims->parsed()) return run_dims(path, jsonOut, hs);
    if (estimate->parsed()) return run_estimate(path, jsonOut, depth, seed, ladder, sampling);
    if (render->parsed()) return run_render(path, renderDepth, outPath);
    if (check->parsed()) return run_check(path);
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const invariant_error& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const numeric_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
