#include "fracdim/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fracdim/dimensions.hpp"
#include "fracdim/errors.hpp"
#include "fracdim/numbers.hpp"

namespace fracdim {

namespace {

long long cell_of(double x, double r) {
  return static_cast<long long>(std::floor(x / r));
}

// Points regrouped by mesh cell so a ball query touches only the cells in
// its bounding box: full-inside cells count by span arithmetic, boundary
// cells by scanning their points.
struct CellSpan {
  long long cy = 0;
  std::size_t ptBegin = 0;
  std::size_t ptEnd = 0;
};

struct Stripe {
  long long cx = 0;
  std::size_t cellBegin = 0;
  std::size_t cellEnd = 0;
};

struct CellIndex {
  double r = 0.0;
  std::vector<double> px, py;
  std::vector<CellSpan> cells;
  std::vector<Stripe> stripes;
};

CellIndex build_cell_index(const PointCloud& cloud, double r) {
  CellIndex idx;
  idx.r = r;
  const std::size_t n = cloud.size();
  std::vector<std::pair<long long, long long>> keys(n);
  for (std::size_t i = 0; i < n; ++i) {
    keys[i].first = cell_of(cloud.xs[i], r);
    keys[i].second = cloud.dimension == 2 ? cell_of(cloud.ys[i], r) : 0;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });

  idx.px.resize(n);
  idx.py.resize(n);
  for (std::size_t rank = 0; rank < n; ++rank) {
    const std::size_t i = order[rank];
    idx.px[rank] = cloud.xs[i];
    idx.py[rank] = cloud.dimension == 2 ? cloud.ys[i] : 0.0;
  }
  for (std::size_t rank = 0; rank < n;) {
    const auto key = keys[order[rank]];
    std::size_t end = rank;
    while (end < n && keys[order[end]] == key) ++end;
    idx.cells.push_back({key.second, rank, end});
    rank = end;
  }
  for (std::size_t c = 0; c < idx.cells.size();) {
    const long long cx = keys[order[idx.cells[c].ptBegin]].first;
    std::size_t end = c;
    while (end < idx.cells.size() && keys[order[idx.cells[end].ptBegin]].first == cx) ++end;
    idx.stripes.push_back({cx, c, end});
    c = end;
  }
  return idx;
}

bool cell_hits_ball(const CellIndex& idx, const CellSpan& cell, double xlo, double xhi,
                    double ylo, double yhi) {
  for (std::size_t k = cell.ptBegin; k < cell.ptEnd; ++k) {
    if (idx.px[k] >= xlo && idx.px[k] <= xhi && idx.py[k] >= ylo && idx.py[k] <= yhi)
      return true;
  }
  return false;
}

// Distinct occupied r-cells meeting the closed max-metric ball B((x,y), R).
std::size_t ball_covering_count(const CellIndex& idx, double x, double y, double R) {
  const double r = idx.r;
  const double xlo = x - R, xhi = x + R;
  const double ylo = y - R, yhi = y + R;
  const long long sxlo = cell_of(xlo, r), sxhi = cell_of(xhi, r);
  const long long sylo = cell_of(ylo, r), syhi = cell_of(yhi, r);

  auto sfirst = std::lower_bound(idx.stripes.begin(), idx.stripes.end(), sxlo,
                                 [](const Stripe& s, long long v) { return s.cx < v; });
  auto slast = std::upper_bound(sfirst, idx.stripes.end(), sxhi,
                                [](long long v, const Stripe& s) { return v < s.cx; });

  std::size_t count = 0;
  for (auto s = sfirst; s != slast; ++s) {
    const bool xFull =
        static_cast<double>(s->cx) * r >= xlo && static_cast<double>(s->cx + 1) * r <= xhi;
    const auto cellsBegin = idx.cells.begin() + static_cast<std::ptrdiff_t>(s->cellBegin);
    const auto cellsEnd = idx.cells.begin() + static_cast<std::ptrdiff_t>(s->cellEnd);
    auto cfirst = std::lower_bound(cellsBegin, cellsEnd, sylo,
                                   [](const CellSpan& c, long long v) { return c.cy < v; });
    auto clast = std::upper_bound(cfirst, cellsEnd, syhi,
                                  [](long long v, const CellSpan& c) { return v < c.cy; });
    if (xFull) {
      auto fullFirst = std::partition_point(cfirst, clast, [&](const CellSpan& c) {
        return static_cast<double>(c.cy) * r < ylo;
      });
      auto fullLast = std::partition_point(fullFirst, clast, [&](const CellSpan& c) {
        return static_cast<double>(c.cy + 1) * r <= yhi;
      });
      count += static_cast<std::size_t>(fullLast - fullFirst);
      for (auto c = cfirst; c != fullFirst; ++c)
        if (cell_hits_ball(idx, *c, xlo, xhi, ylo, yhi)) ++count;
      for (auto c = fullLast; c != clast; ++c)
        if (cell_hits_ball(idx, *c, xlo, xhi, ylo, yhi)) ++count;
    } else {
      for (auto c = cfirst; c != clast; ++c)
        if (cell_hits_ball(idx, *c, xlo, xhi, ylo, yhi)) ++count;
    }
  }
  return count;
}

std::vector<std::size_t> pick_centers(std::size_t n, const CenterPolicy& policy) {
  std::vector<std::size_t> centers;
  if (n <= policy.maxCenters) {
    centers.resize(n);
    std::iota(centers.begin(), centers.end(), std::size_t{0});
    return centers;
  }
  std::mt19937_64 rng(policy.seed);
  centers.reserve(policy.maxCenters + 2);
  for (std::size_t k = 0; k < policy.maxCenters; ++k)
    centers.push_back(static_cast<std::size_t>(rng() % n));
  centers.push_back(0);
  centers.push_back(n - 1);
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
  return centers;
}

void check_pair_scales(const PointCloud& cloud, const ScalePair& p) {
  if (!(p.r > 0.0) || !(p.R > p.r))
    throw input_error("scale pair stats: need R > r > 0, got R=" + format_double(p.R) +
                      " r=" + format_double(p.r));
  if (p.r < cloud.resolution)
    throw input_error("scale pair stats: small scale " + format_double(p.r) +
                      " is below the cloud resolution " + format_double(cloud.resolution));
}

double extremal_exponent(const std::vector<ScalePairStat>& stats, bool sup) {
  double best = stats.front().exponent;
  for (const auto& st : stats) best = sup ? std::max(best, st.exponent) : std::min(best, st.exponent);
  return best;
}

}  // namespace

CoveringGrid covering_grid(const PointCloud& cloud, double r) {
  if (!(r > 0.0)) throw input_error("covering grid: scale must be positive");
  if (cloud.size() == 0) throw input_error("covering grid: empty cloud");
  CoveringGrid grid;
  grid.cellSize = r;
  grid.occupied.reserve(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    grid.occupied.emplace_back(cell_of(cloud.xs[i], r),
                               cloud.dimension == 2 ? cell_of(cloud.ys[i], r) : 0);
  }
  std::sort(grid.occupied.begin(), grid.occupied.end());
  grid.occupied.erase(std::unique(grid.occupied.begin(), grid.occupied.end()),
                      grid.occupied.end());
  return grid;
}

std::size_t covering_count(const PointCloud& cloud, double r) {
  return covering_grid(cloud, r).occupied.size();
}

double box_estimate(const PointCloud& cloud, const std::vector<double>& scales) {
  if (cloud.size() == 0) throw input_error("box estimate: empty cloud");
  if (scales.size() < 3) throw input_error("box estimate: need at least three scales");
  for (double r : scales) {
    if (!(r > 0.0)) throw input_error("box estimate: scales must be positive");
    if (r < cloud.resolution)
      throw input_error("box estimate: scale " + format_double(r) +
                        " is below the cloud resolution " + format_double(cloud.resolution));
  }
  std::vector<double> distinct(scales);
  std::sort(distinct.begin(), distinct.end());
  if (std::adjacent_find(distinct.begin(), distinct.end()) != distinct.end())
    throw input_error("box estimate: scales must be distinct");
  const double n = static_cast<double>(scales.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (double r : scales) {
    const double x = -std::log(r);
    const double y = std::log(static_cast<double>(covering_count(cloud, r)));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (!(denom > 0.0)) throw input_error("box estimate: scales must span more than one value");
  return (n * sxy - sx * sy) / denom;
}

std::vector<ScalePairStat> scale_pair_stats(const PointCloud& cloud,
                                            const std::vector<ScalePair>& pairs, bool sup,
                                            const CenterPolicy& policy) {
  if (cloud.size() == 0) throw input_error("scale pair stats: empty cloud");
  if (pairs.empty()) throw input_error("scale pair stats: no scale pairs");
  for (const auto& p : pairs) check_pair_scales(cloud, p);

  const auto centers = pick_centers(cloud.size(), policy);

  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pairs[a].r < pairs[b].r; });

  std::vector<ScalePairStat> stats(pairs.size());
  CellIndex idx;
  double indexedScale = -1.0;
  for (std::size_t oi : order) {
    const auto& p = pairs[oi];
    if (p.r != indexedScale) {
      idx = build_cell_index(cloud, p.r);
      indexedScale = p.r;
    }
    std::size_t best = 0;
    bool first = true;
    for (std::size_t ci : centers) {
      const double x = cloud.xs[ci];
      const double y = cloud.dimension == 2 ? cloud.ys[ci] : 0.0;
      const std::size_t cnt = ball_covering_count(idx, x, y, p.R);
      if (first || (sup ? cnt > best : cnt < best)) {
        best = cnt;
        first = false;
      }
    }
    stats[oi].R = p.R;
    stats[oi].r = p.r;
    stats[oi].value = best;
    stats[oi].exponent = std::log(static_cast<double>(best)) / std::log(p.R / p.r);
  }
  return stats;
}

double assouad_estimate(const PointCloud& cloud, const std::vector<ScalePair>& pairs,
                        const CenterPolicy& policy) {
  return extremal_exponent(scale_pair_stats(cloud, pairs, true, policy), true);
}

double lower_estimate(const PointCloud& cloud, const std::vector<ScalePair>& pairs,
                      const CenterPolicy& policy) {
  return extremal_exponent(scale_pair_stats(cloud, pairs, false, policy), false);
}

std::vector<double> default_box_scales(const PointCloud& cloud) {
  const double res = cloud.resolution;
  if (res >= 0.45)
    throw input_error("default scales: cloud resolution " + format_double(res) +
                      " leaves no room for a ladder; deepen the cloud");
  std::vector<double> scales;
  for (double r = 0.25; r >= res && scales.size() < 12; r *= 0.5) scales.push_back(r);
  if (scales.size() < 3) {
    scales.clear();
    const double top = 0.5;
    const double step = std::pow(res / top, 1.0 / 5.0);
    double r = top;
    for (int i = 0; i <= 5; ++i) {
      scales.push_back(std::max(r, res));
      r *= step;
    }
  }
  return scales;
}

std::vector<ScalePair> default_scale_pairs(const PointCloud& cloud) {
  std::vector<ScalePair> out;
  for (int i = 2; i <= 5; ++i) {
    const double R = std::ldexp(1.0, -i);
    for (int j = 2; j <= 6; ++j) {
      const double r = std::ldexp(1.0, -i - j);
      if (r >= cloud.resolution) out.push_back({R, r});
    }
  }
  if (out.empty())
    throw input_error("default scales: no scale pair clears the cloud resolution " +
                      format_double(cloud.resolution) + "; deepen the cloud");
  return out;
}

bool PropertyReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

namespace {

PointCloud thin_cloud(const PointCloud& cloud, std::size_t target) {
  if (cloud.size() <= target) return cloud;
  PointCloud out;
  out.dimension = cloud.dimension;
  out.resolution = cloud.resolution;
  const std::size_t stride = (cloud.size() + target - 1) / target;
  for (std::size_t i = 0; i < cloud.size(); i += stride) {
    out.xs.push_back(cloud.xs[i]);
    if (cloud.dimension == 2) out.ys.push_back(cloud.ys[i]);
  }
  if ((cloud.size() - 1) % stride != 0) {
    out.xs.push_back(cloud.xs.back());
    if (cloud.dimension == 2) out.ys.push_back(cloud.ys.back());
  }
  return out;
}

void union_checks(const EstimatorFixture& fa, const EstimatorFixture& fb,
                  std::vector<PropertyCheck>& checks) {
  PropertyCheck check;
  check.name = "union of " + fa.name + " and " + fb.name + ": lower matches min of parts";
  try {
    const PointCloud a = scale_shift_cloud(fa.cloud, 0.4, 0.0);
    const PointCloud b = scale_shift_cloud(fb.cloud, 0.4, 0.6);
    const PointCloud u = merge_clouds(a, b);
    std::vector<ScalePair> pairs;
    for (int i = 3; i <= 5; ++i) {
      for (int j = 2; j <= 6; ++j) {
        const double r = std::ldexp(1.0, -i - j);
        if (r >= u.resolution) pairs.push_back({std::ldexp(1.0, -i), r});
      }
    }
    if (pairs.empty()) {
      check.detail = "no scale pair clears the scaled resolution";
    } else {
      const double lu = lower_estimate(u, pairs);
      const double la = lower_estimate(a, pairs);
      const double lb = lower_estimate(b, pairs);
      const double expected = std::min(la, lb);
      check.passed = std::fabs(lu - expected) <= 0.05;
      check.detail = "union " + format_double(lu) + ", parts " + format_double(la) + " and " +
                     format_double(lb);
    }
  } catch (const std::exception& e) {
    check.detail = e.what();
  }
  checks.push_back(std::move(check));
}

void product_checks(const EstimatorFixture& fa, std::vector<PropertyCheck>& checks) {
  PropertyCheck additivity;
  additivity.name = "product of " + fa.name + " with itself: box doubles";
  PropertyCheck lowerBound;
  lowerBound.name = "product of " + fa.name + " with itself: lower within predicted interval";
  PropertyCheck assouadBound;
  assouadBound.name = "product of " + fa.name + " with itself: assouad within predicted interval";
  try {
    const PointCloud base = thin_cloud(fa.cloud, 1024);
    const PointCloud prod = product_cloud(base, base);

    const auto scales = default_box_scales(prod);
    const double boxPart = box_estimate(base, scales);
    const double boxProd = box_estimate(prod, scales);
    additivity.passed = std::fabs(boxProd - 2.0 * boxPart) <= 0.08;
    additivity.detail =
        "product " + format_double(boxProd) + ", part " + format_double(boxPart);

    std::vector<ScalePair> pairs;
    for (const auto& p : fa.pairs)
      if (p.r >= prod.resolution) pairs.push_back(p);
    if (pairs.empty()) {
      lowerBound.detail = "no scale pair clears the product resolution";
      assouadBound.detail = lowerBound.detail;
    } else {
      CenterPolicy policy;
      policy.maxCenters = 512;
      const double plo = lower_estimate(prod, pairs, policy);
      const double phi = assouad_estimate(prod, pairs, policy);
      const double blo = lower_estimate(base, pairs, policy);
      const double bhi = assouad_estimate(base, pairs, policy);
      const auto bounds = product_bounds({blo, bhi}, {blo, bhi});
      const double slack = 0.1;
      lowerBound.passed = plo >= bounds.lowerInterval.lo - slack &&
                          plo <= bounds.lowerInterval.hi + slack;
      lowerBound.detail = "estimate " + format_double(plo) + ", interval [" +
                          format_double(bounds.lowerInterval.lo) + ", " +
                          format_double(bounds.lowerInterval.hi) + "]";
      assouadBound.passed = phi >= bounds.assouadInterval.lo - slack &&
                            phi <= bounds.assouadInterval.hi + slack;
      assouadBound.detail = "estimate " + format_double(phi) + ", interval [" +
                            format_double(bounds.assouadInterval.lo) + ", " +
                            format_double(bounds.assouadInterval.hi) + "]";
    }
  } catch (const std::exception& e) {
    additivity.detail = additivity.detail.empty() ? e.what() : additivity.detail;
    lowerBound.detail = lowerBound.detail.empty() ? e.what() : lowerBound.detail;
    assouadBound.detail = assouadBound.detail.empty() ? e.what() : assouadBound.detail;
  }
  checks.push_back(std::move(additivity));
  checks.push_back(std::move(lowerBound));
  checks.push_back(std::move(assouadBound));
}

}  // namespace

PropertyReport property_suite(const std::vector<EstimatorFixture>& fixtures) {
  PropertyReport report;
  std::vector<const EstimatorFixture*> oneD;

  for (const auto& f : fixtures) {
    PropertyCheck ordering;
    ordering.name = f.name + ": lower <= box <= assouad";
    try {
      const double box = box_estimate(f.cloud, f.boxScales);
      const double lo = lower_estimate(f.cloud, f.pairs);
      const double hi = assouad_estimate(f.cloud, f.pairs);
      ordering.passed = lo <= box + 0.05 && box <= hi + 0.05;
      ordering.detail = "lower " + format_double(lo) + ", box " + format_double(box) +
                        ", assouad " + format_double(hi);
      report.checks.push_back(std::move(ordering));
      if (f.exactBox) {
        PropertyCheck accuracy;
        accuracy.name = f.name + ": box estimate near exact value";
        accuracy.passed = std::fabs(box - *f.exactBox) <= f.boxTolerance;
        accuracy.detail = "estimate " + format_double(box) + ", exact " +
                          format_double(*f.exactBox) + ", tolerance " +
                          format_double(f.boxTolerance);
        report.checks.push_back(std::move(accuracy));
      }
      if (f.cloud.dimension == 1) oneD.push_back(&f);
    } catch (const std::exception& e) {
      ordering.detail = e.what();
      report.checks.push_back(std::move(ordering));
    }
  }

  if (oneD.size() >= 2) union_checks(*oneD[0], *oneD[1], report.checks);
  if (!oneD.empty()) product_checks(*oneD[0], report.checks);
  return report;
}

}  // namespace fracdim
