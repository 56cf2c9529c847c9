#pragma once

#include <optional>
#include <string>

#include "fracdim/dimensions.hpp"
#include "fracdim/hausdorff.hpp"
#include "fracdim/systems.hpp"

namespace fracdim {

// A reported dimension: a pinned value, or a value with a certified interval
// when no formula pins it down (the note says why).
struct DimValue {
  double value = 0.0;
  std::optional<Interval> interval;
  std::string note;
  bool exact() const { return !interval.has_value(); }
};

enum class Dichotomy { AllEqual, StrictChain, LowerDropsOnly, Other };

std::string to_string(Dichotomy kind);

// kind is the classification at 1e-9 slack; description spells the observed
// configuration ("lower < box = assouad"); violation is set only for Other,
// which signals an implementation bug rather than a property of the input.
struct DichotomyResult {
  Dichotomy kind = Dichotomy::Other;
  std::string description;
  std::string violation;
};

struct DimensionReport {
  std::optional<CarpetClass> carpetClass;       // carpets only
  std::optional<double> similarity;             // self-similar systems only
  std::optional<bool> osc;                      // self-similar systems only
  DimValue lower;
  DimValue hausdorff;
  DimValue box;
  DimValue assouad;
  std::optional<CarpetQuantities> quantities;   // carpets only
  std::optional<DichotomyResult> dichotomy;     // carpets only
};

// Closed-form dimensions of a carpet. Horizontal and vertical classes pin all
// four values (Hausdorff through the column-carpet optimizer, transposing
// first for the vertical class); the mixed class brackets Hausdorff by
// [lower, box]; equal-ratio carpets reduce to Hutchinson's formula.
DimensionReport dimension_report(const Carpet& carpet, const HausdorffSettings& settings = {});

// Hutchinson exponent s of a 1-D system. With the open set condition all four
// dimensions equal s. Without it the report keeps bounds: lower, Hausdorff
// and box carry the interval [0, min(s,1)]; Assouad carries [min(s,1), 1],
// since overlaps can push it to 1 while the others stay at or below s.
DimensionReport self_similar_report(const SimilarityIFS1D& ifs);

DimensionReport dimension_report(const System& system, const HausdorffSettings& settings = {});

// Horizontal/vertical/self-similar classes must come out all-equal or
// all-strict; any class must satisfy lower < box or all-equal. Violations are
// returned, not thrown, so harnesses can collect them.
DichotomyResult dichotomy_check(const DimensionReport& report, CarpetClass cls);

}  // namespace fracdim
