#include "fracdim/report.hpp"

#include <cmath>
#include <initializer_list>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fracdim/errors.hpp"
#include "fracdim/moran.hpp"
#include "fracdim/numbers.hpp"

namespace fracdim {

namespace {

constexpr double kDichotomyTol = 1e-9;

std::string chain_description(std::initializer_list<std::pair<const char*, double>> vals) {
  std::string out;
  double prev = 0.0;
  bool first = true;
  for (const auto& [name, v] : vals) {
    if (!first) out += v - prev > kDichotomyTol ? " < " : " = ";
    out += name;
    prev = v;
    first = false;
  }
  return out;
}

std::string value_listing(std::initializer_list<std::pair<const char*, double>> vals) {
  std::string out;
  for (const auto& [name, v] : vals) {
    if (!out.empty()) out += ", ";
    out += name;
    out += " ";
    out += format_double(v);
  }
  return out;
}

}  // namespace

std::string to_string(Dichotomy kind) {
  switch (kind) {
    case Dichotomy::AllEqual: return "all-equal";
    case Dichotomy::StrictChain: return "strict-chain";
    case Dichotomy::LowerDropsOnly: return "lower-drops-only";
    case Dichotomy::Other: return "other";
  }
  return "other";
}

DichotomyResult dichotomy_check(const DimensionReport& report, CarpetClass cls) {
  DichotomyResult out;
  const double l = report.lower.value;
  const double b = report.box.value;
  const double a = report.assouad.value;

  if (cls == CarpetClass::Mixed) {
    out.description = chain_description({{"lower", l}, {"box", b}, {"assouad", a}});
    if (b < l - kDichotomyTol || a < b - kDichotomyTol) {
      out.kind = Dichotomy::Other;
      out.violation =
          "ordering violated: " + value_listing({{"lower", l}, {"box", b}, {"assouad", a}});
    } else if (b - l > kDichotomyTol) {
      out.kind = Dichotomy::LowerDropsOnly;
    } else if (a - l <= kDichotomyTol) {
      out.kind = Dichotomy::AllEqual;
    } else {
      out.kind = Dichotomy::Other;
      out.violation = "lower and box coincide but assouad separates: " +
                      value_listing({{"lower", l}, {"box", b}, {"assouad", a}});
    }
    return out;
  }

  const double h = report.hausdorff.value;
  out.description =
      chain_description({{"lower", l}, {"hausdorff", h}, {"box", b}, {"assouad", a}});
  if (h < l - kDichotomyTol || b < h - kDichotomyTol || a < b - kDichotomyTol) {
    out.kind = Dichotomy::Other;
    out.violation = "ordering violated: " + value_listing({{"lower", l},
                                                           {"hausdorff", h},
                                                           {"box", b},
                                                           {"assouad", a}});
  } else if (a - l <= kDichotomyTol) {
    out.kind = Dichotomy::AllEqual;
  } else if (h - l > kDichotomyTol && b - h > kDichotomyTol && a - b > kDichotomyTol) {
    out.kind = Dichotomy::StrictChain;
  } else {
    out.kind = Dichotomy::Other;
    out.violation = "partial ties break the dichotomy: " + value_listing({{"lower", l},
                                                                          {"hausdorff", h},
                                                                          {"box", b},
                                                                          {"assouad", a}});
  }
  return out;
}

DimensionReport dimension_report(const Carpet& carpet, const HausdorffSettings& settings) {
  DimensionReport report;
  const CarpetClass cls = classify(carpet);
  report.carpetClass = cls;
  report.quantities = carpet_quantities(carpet);

  if (cls == CarpetClass::SelfSimilar) {
    std::vector<std::pair<double, double>> terms;
    for (const auto& m : affine_maps(carpet)) terms.emplace_back(1.0, m.c.val);
    const double s = solve_moran(make_moran(std::move(terms))).value;
    const double da = report.quantities->horizontal.D;
    if (std::fabs(da - s) > kDichotomyTol)
      throw invariant_error("equal-ratio carpet: grid exponent " + format_double(da) +
                            " disagrees with the similarity exponent " + format_double(s));
    if (report.quantities->vertical) {
      const double db = report.quantities->vertical->D;
      if (std::fabs(db - s) > kDichotomyTol)
        throw invariant_error("equal-ratio carpet: vertical grid exponent " +
                              format_double(db) + " disagrees with the similarity exponent " +
                              format_double(s));
    }
    report.similarity = s;
    report.osc = true;
    DimValue v;
    v.value = s;
    report.lower = report.hausdorff = report.box = report.assouad = v;
    report.dichotomy = dichotomy_check(report, cls);
    return report;
  }

  report.lower.value = lower_dimension(cls, *report.quantities);
  report.box.value = box_dimension(cls, *report.quantities);
  report.assouad.value = assouad_dimension(cls, *report.quantities);

  if (cls == CarpetClass::Mixed) {
    if (report.box.value - report.lower.value <= kDichotomyTol) {
      report.hausdorff.value = report.box.value;
    } else {
      report.hausdorff.value = report.lower.value;
      report.hausdorff.interval = Interval{report.lower.value, report.box.value};
      report.hausdorff.note = "bracketed only: no grid formula pins the mixed-class value";
    }
  } else if (const auto* grid = std::get_if<BaranskiCarpet>(&carpet)) {
    const BaranskiCarpet oriented = cls == CarpetClass::Vertical ? transpose(*grid) : *grid;
    report.hausdorff.value = hausdorff_dimension_lg(lg_view(oriented), settings);
  } else {
    report.hausdorff.value = hausdorff_dimension_lg(std::get<LGCarpet>(carpet), settings);
  }

  report.dichotomy = dichotomy_check(report, cls);
  return report;
}

DimensionReport self_similar_report(const SimilarityIFS1D& ifs) {
  DimensionReport report;
  const double s = similarity_dimension(ifs);
  report.similarity = s;
  report.osc = ifs.osc;
  if (ifs.osc) {
    DimValue v;
    v.value = s;
    report.lower = report.hausdorff = report.box = report.assouad = v;
  } else {
    const double cap = std::min(s, 1.0);
    DimValue bounded;
    bounded.value = cap;
    bounded.interval = Interval{0.0, cap};
    bounded.note = "<= similarity dimension";
    report.lower = report.hausdorff = report.box = bounded;
    DimValue assouad;
    assouad.value = 1.0;
    assouad.interval = Interval{cap, 1.0};
    assouad.note = "overlaps can push the value to 1 while the chain below stays at the bound";
    report.assouad = assouad;
  }
  return report;
}

DimensionReport dimension_report(const System& system, const HausdorffSettings& settings) {
  if (const auto* ifs = std::get_if<SimilarityIFS1D>(&system)) return self_similar_report(*ifs);
  if (const auto* grid = std::get_if<BaranskiCarpet>(&system))
    return dimension_report(Carpet{*grid}, settings);
  return dimension_report(Carpet{std::get<LGCarpet>(system)}, settings);
}

}  // namespace fracdim
