#pragma once

#include <optional>

#include "fracdim/moran.hpp"
#include "fracdim/systems.hpp"

namespace fracdim {

enum class Axis { Horizontal, Vertical };

// Per-direction quantities: s = projection box dimension, t/u = max/min slice
// dimension, D = the grid exponent solving sum c^s d^(D-s) = 1 over the cells
// (with the roles of c and d swapped for the vertical direction).
struct AxisQuantities {
  double s = 0.0;
  double t = 0.0;
  double u = 0.0;
  double D = 0.0;
};

struct CarpetQuantities {
  AxisQuantities horizontal;
  // Present for grid carpets; column carpets define direction-1 quantities only.
  std::optional<AxisQuantities> vertical;
};

// One similarity map per occupied column (Horizontal) or occupied row
// (Vertical, grid carpets only); osc holds by the grid structure.
SimilarityIFS1D projection_ifs(const Carpet& carpet, Axis axis);

// direction 1: the system of cell heights in mapIndex's column (vertical
// slice); direction 2: cell widths in mapIndex's row (grid carpets only).
// mapIndex follows the affine_maps order.
SimilarityIFS1D slice_ifs(const Carpet& carpet, int direction, int mapIndex);

CarpetQuantities carpet_quantities(const Carpet& carpet);

// Carpet theorems. All three reject self-similar-class carpets, whose report
// comes from Hutchinson's formula instead.
double assouad_dimension(const Carpet& carpet);
double lower_dimension(const Carpet& carpet);
double box_dimension(const Carpet& carpet);

double assouad_dimension(CarpetClass cls, const CarpetQuantities& q);
double lower_dimension(CarpetClass cls, const CarpetQuantities& q);
double box_dimension(CarpetClass cls, const CarpetQuantities& q);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// (lower, Assouad) pair of an abstract set, the currency of the product and
// union bound arithmetic.
struct DimPair {
  double lower = 0.0;
  double assouad = 0.0;
};

struct ProductBounds {
  Interval lowerInterval;
  Interval assouadInterval;
};

ProductBounds product_bounds(const DimPair& x, const DimPair& y);

// Lower dimension of the n-fold product X^n: exactly n times the factor's.
double self_product_lower(const DimPair& x, int n);

// Bounds on the lower dimension of a union; a positive separation collapses
// the interval to min of the parts.
Interval union_bounds(const DimPair& x, const DimPair& y, bool separated);

}  // namespace fracdim
