#pragma once

#include <utility>
#include <vector>

#include "fracdim/systems.hpp"

namespace fracdim {

inline constexpr double kMoranTol = 1e-12;

struct MoranTerm {
  double weight;
  double ratio;
  double logRatio;
};

// Strictly decreasing evaluator s -> sum of weight * ratio^s. The root solvers
// look for the value 1.
struct MoranEquation {
  std::vector<MoranTerm> terms;
  double lowerBracket = 0.0;
  // upperBracket <= lowerBracket means: derive the default bracket and widen
  // until the evaluator straddles 1.
  double upperBracket = 0.0;

  double evaluate(double s) const;
  double derivative(double s) const;
};

struct MoranRoot {
  double value = 0.0;
  // Set when the weight sum is below 1 already at s = 0, so no nonnegative
  // root exists; the clamped value 0 is returned instead.
  bool degenerate = false;
};

// Builds an equation from (weight, ratio) pairs. Terms are sorted by
// (ratio, weight) so equal multisets evaluate with identical arithmetic.
MoranEquation make_moran(std::vector<std::pair<double, double>> weightRatio);

// Bisection with bracket-safeguarded Newton refinement. Throws numeric_error
// when an explicit bracket does not straddle 1.
MoranRoot solve_moran(const MoranEquation& eq, double tol = kMoranTol);

// Unique s >= 0 with sum of ratio_i^s = 1; 0 for a single map.
double similarity_dimension(const SimilarityIFS1D& ifs);

}  // namespace fracdim
