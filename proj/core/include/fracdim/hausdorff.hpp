#pragma once

#include <vector>

#include "fracdim/systems.hpp"

namespace fracdim {

struct HausdorffSettings {
  int restarts = 16;
  int maxIterations = 5000;
  // Ascent stall tolerance: stop when successive objective values differ by
  // less than this.
  double tol = 1e-12;
  unsigned long long seed = 1;
};

// Maximizes, over probability vectors p on the cells with column masses
// q_i = sum_j p_ij,
//   sum p ln(q_i/p) / sum p ln(1/d)  +  sum q_i ln q_i / sum q_i ln c_i
// (0 ln 0 = 0) and returns the maximum: the Hausdorff dimension of a
// column carpet. Throws numeric_error when no restart converges; the
// message carries the best value found.
double hausdorff_dimension_lg(const LGCarpet& carpet, const HausdorffSettings& settings = {});

// Objective value for an explicit cell distribution in affine_maps order.
// Exposed so tests can verify the optimum by finite differences.
double lg_objective(const LGCarpet& carpet, const std::vector<double>& p);

// The maximizing distribution, same order as affine_maps.
std::vector<double> lg_maximizer(const LGCarpet& carpet, const HausdorffSettings& settings = {});

}  // namespace fracdim
