#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracdim/cloud.hpp"

namespace fracdim {

// Origin-anchored mesh of side r: the set of cells holding at least one
// cloud point. yCell is 0 for 1-D clouds.
struct CoveringGrid {
  double cellSize = 0.0;
  std::vector<std::pair<long long, long long>> occupied;
};

CoveringGrid covering_grid(const PointCloud& cloud, double r);
std::size_t covering_count(const PointCloud& cloud, double r);

// Least-squares slope of log N_r against log(1/r) over a ladder of at least
// three scales, all at or above the cloud resolution.
double box_estimate(const PointCloud& cloud, const std::vector<double>& scales);

struct ScalePair {
  double R = 0.0;
  double r = 0.0;
};

struct ScalePairStat {
  double R = 0.0;
  double r = 0.0;
  std::size_t value = 0;   // extremal covering count of B(center, R) over centers
  double exponent = 0.0;   // log(value) / log(R/r)
};

// Centers are all cloud points up to maxCenters, otherwise a seeded sample
// of maxCenters points plus the lexicographic extremes.
struct CenterPolicy {
  std::size_t maxCenters = 4096;
  unsigned long long seed = 1;
};

// Balls are max-metric (axis-aligned squares). sup=true takes the largest
// count over centers per pair, sup=false the smallest.
std::vector<ScalePairStat> scale_pair_stats(const PointCloud& cloud,
                                            const std::vector<ScalePair>& pairs, bool sup,
                                            const CenterPolicy& policy = {});

// Finite-scale proxies: max (respectively min) exponent over the pairs.
// Convergence to the true limiting dimensions at any finite scale is not
// guaranteed; tolerances are a harness choice.
double assouad_estimate(const PointCloud& cloud, const std::vector<ScalePair>& pairs,
                        const CenterPolicy& policy = {});
double lower_estimate(const PointCloud& cloud, const std::vector<ScalePair>& pairs,
                      const CenterPolicy& policy = {});

// Dyadic ladder from 1/4 down to the resolution (a short geometric ladder
// when fewer than three dyadic scales fit).
std::vector<double> default_box_scales(const PointCloud& cloud);

// R in {2^-2..2^-5}, r = R * 2^-j for j in {2..6}, clipped at the resolution.
std::vector<ScalePair> default_scale_pairs(const PointCloud& cloud);

struct EstimatorFixture {
  std::string name;
  PointCloud cloud;
  std::vector<double> boxScales;
  std::vector<ScalePair> pairs;
  std::optional<double> exactBox;
  double boxTolerance = 0.05;
};

struct PropertyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct PropertyReport {
  std::vector<PropertyCheck> checks;
  bool all_passed() const;
};

// Cross-checks the estimators against the bound arithmetic: per-fixture
// ordering lower <= box <= assouad (+0.05) and box accuracy, a separated
// union of the first two 1-D fixtures against the min rule, and the product
// of the first 1-D fixture with itself against additivity and the product
// intervals. Failures are collected, never thrown.
PropertyReport property_suite(const std::vector<EstimatorFixture>& fixtures);

}  // namespace fracdim
