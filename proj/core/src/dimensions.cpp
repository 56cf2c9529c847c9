#include "fracdim/dimensions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "fracdim/errors.hpp"

namespace fracdim {

namespace {

double ratios_dimension(const std::vector<double>& ratios) {
  if (ratios.size() <= 1) return 0.0;
  std::vector<std::pair<double, double>> terms;
  terms.reserve(ratios.size());
  for (double r : ratios) terms.emplace_back(1.0, r);
  return solve_moran(make_moran(std::move(terms))).value;
}

struct ColumnData {
  double width = 0.0;
  std::vector<double> heights;
};

std::vector<ColumnData> column_view(const BaranskiCarpet& carpet) {
  std::map<int, ColumnData> byColumn;
  for (const auto& [i, j] : carpet.cells) {
    ColumnData& cd = byColumn[i];
    cd.width = carpet.columnWidths[i].val;
    cd.heights.push_back(carpet.rowHeights[j].val);
  }
  std::vector<ColumnData> out;
  out.reserve(byColumn.size());
  for (auto& [i, cd] : byColumn) out.push_back(std::move(cd));
  return out;
}

std::vector<ColumnData> column_view(const LGCarpet& carpet) {
  std::vector<ColumnData> out;
  for (const LGColumn& col : carpet.columns) {
    if (col.cells.empty()) continue;
    ColumnData cd;
    cd.width = col.width.val;
    cd.heights.reserve(col.cells.size());
    for (const LGCell& cell : col.cells) cd.heights.push_back(cell.height.val);
    out.push_back(std::move(cd));
  }
  return out;
}

AxisQuantities axis_quantities(const std::vector<ColumnData>& cols) {
  AxisQuantities q;
  std::vector<double> widths;
  widths.reserve(cols.size());
  for (const ColumnData& cd : cols) widths.push_back(cd.width);
  q.s = ratios_dimension(widths);
  bool first = true;
  for (const ColumnData& cd : cols) {
    double dim = ratios_dimension(cd.heights);
    if (first) {
      q.t = q.u = dim;
      first = false;
    } else {
      q.t = std::max(q.t, dim);
      q.u = std::min(q.u, dim);
    }
  }
  std::vector<std::pair<double, double>> terms;
  for (const ColumnData& cd : cols) {
    double logWidth = std::log(cd.width);
    for (double h : cd.heights)
      terms.emplace_back(std::exp(q.s * (logWidth - std::log(h))), h);
  }
  q.D = solve_moran(make_moran(std::move(terms))).value;
  return q;
}

}  // namespace

SimilarityIFS1D projection_ifs(const Carpet& carpet, Axis axis) {
  if (const auto* b = std::get_if<BaranskiCarpet>(&carpet)) {
    const BaranskiCarpet grid = axis == Axis::Horizontal ? *b : transpose(*b);
    std::vector<Num> offsets = prefix_offsets(grid.columnWidths);
    std::vector<SimilarityMap1D> maps;
    for (int i : occupied_columns(grid)) maps.push_back({grid.columnWidths[i], offsets[i]});
    return make_similarity_ifs(std::move(maps));
  }
  if (axis == Axis::Vertical)
    throw input_error(
        "vertical projection of a column carpet is not available (no induced grid system)");
  const auto& lg = std::get<LGCarpet>(carpet);
  std::vector<Num> widths;
  widths.reserve(lg.columns.size());
  for (const LGColumn& col : lg.columns) widths.push_back(col.width);
  std::vector<Num> offsets = prefix_offsets(widths);
  std::vector<SimilarityMap1D> maps;
  for (std::size_t i = 0; i < lg.columns.size(); ++i)
    if (!lg.columns[i].cells.empty()) maps.push_back({lg.columns[i].width, offsets[i]});
  return make_similarity_ifs(std::move(maps));
}

SimilarityIFS1D slice_ifs(const Carpet& carpet, int direction, int mapIndex) {
  if (direction != 1 && direction != 2)
    throw input_error("slice direction must be 1 or 2");
  if (const auto* b = std::get_if<BaranskiCarpet>(&carpet)) {
    if (mapIndex < 0 || static_cast<std::size_t>(mapIndex) >= b->cells.size())
      throw input_error("map index out of range");
    auto [ci, rj] = b->cells[mapIndex];
    std::vector<SimilarityMap1D> maps;
    if (direction == 1) {
      std::vector<Num> rowOff = prefix_offsets(b->rowHeights);
      for (const auto& [i, j] : b->cells)
        if (i == ci) maps.push_back({b->rowHeights[j], rowOff[j]});
    } else {
      std::vector<Num> colOff = prefix_offsets(b->columnWidths);
      for (const auto& [i, j] : b->cells)
        if (j == rj) maps.push_back({b->columnWidths[i], colOff[i]});
    }
    return make_similarity_ifs(std::move(maps));
  }
  const auto& lg = std::get<LGCarpet>(carpet);
  if (direction == 2)
    throw input_error("direction-2 slices of a column carpet are not supported");
  if (mapIndex < 0) throw input_error("map index out of range");
  std::size_t idx = static_cast<std::size_t>(mapIndex);
  for (const LGColumn& col : lg.columns) {
    if (idx < col.cells.size()) {
      std::vector<SimilarityMap1D> maps;
      maps.reserve(col.cells.size());
      for (const LGCell& cell : col.cells) maps.push_back({cell.height, cell.offset});
      return make_similarity_ifs(std::move(maps));
    }
    idx -= col.cells.size();
  }
  throw input_error("map index out of range");
}

CarpetQuantities carpet_quantities(const Carpet& carpet) {
  CarpetQuantities q;
  if (const auto* b = std::get_if<BaranskiCarpet>(&carpet)) {
    q.horizontal = axis_quantities(column_view(*b));
    q.vertical = axis_quantities(column_view(transpose(*b)));
  } else {
    q.horizontal = axis_quantities(column_view(std::get<LGCarpet>(carpet)));
  }
  return q;
}

namespace {

void reject_self_similar(CarpetClass cls) {
  if (cls == CarpetClass::SelfSimilar)
    throw input_error(
        "self-similar class: the carpet theorems do not apply, use the self-similar report");
}

const AxisQuantities& vertical_or_fail(const CarpetQuantities& q) {
  if (!q.vertical)
    throw invariant_error("vertical quantities requested for a column carpet");
  return *q.vertical;
}

}  // namespace

double assouad_dimension(CarpetClass cls, const CarpetQuantities& q) {
  reject_self_similar(cls);
  switch (cls) {
    case CarpetClass::Horizontal: return q.horizontal.s + q.horizontal.t;
    case CarpetClass::Vertical: {
      const AxisQuantities& v = vertical_or_fail(q);
      return v.s + v.t;
    }
    default: {
      const AxisQuantities& v = vertical_or_fail(q);
      return std::max(q.horizontal.s + q.horizontal.t, v.s + v.t);
    }
  }
}

double lower_dimension(CarpetClass cls, const CarpetQuantities& q) {
  reject_self_similar(cls);
  switch (cls) {
    case CarpetClass::Horizontal: return q.horizontal.s + q.horizontal.u;
    case CarpetClass::Vertical: {
      const AxisQuantities& v = vertical_or_fail(q);
      return v.s + v.u;
    }
    default: {
      const AxisQuantities& v = vertical_or_fail(q);
      return std::min(q.horizontal.s + q.horizontal.u, v.s + v.u);
    }
  }
}

double box_dimension(CarpetClass cls, const CarpetQuantities& q) {
  reject_self_similar(cls);
  if (q.vertical) return std::max(q.horizontal.D, q.vertical->D);
  return q.horizontal.D;
}

double assouad_dimension(const Carpet& carpet) {
  return assouad_dimension(classify(carpet), carpet_quantities(carpet));
}

double lower_dimension(const Carpet& carpet) {
  return lower_dimension(classify(carpet), carpet_quantities(carpet));
}

double box_dimension(const Carpet& carpet) {
  return box_dimension(classify(carpet), carpet_quantities(carpet));
}

namespace {

void check_pair(const DimPair& p, const char* name) {
  if (!(p.lower >= 0.0) || !(p.assouad >= p.lower))
    throw input_error(std::string(name) + ": requires 0 <= lower <= assouad");
}

}  // namespace

ProductBounds product_bounds(const DimPair& x, const DimPair& y) {
  check_pair(x, "x");
  check_pair(y, "y");
  ProductBounds out;
  out.lowerInterval = {x.lower + y.lower, x.lower + y.assouad};
  out.assouadInterval = {x.lower + y.assouad, x.assouad + y.assouad};
  return out;
}

double self_product_lower(const DimPair& x, int n) {
  check_pair(x, "x");
  if (n < 1) throw input_error("n: power must be at least 1");
  return static_cast<double>(n) * x.lower;
}

Interval union_bounds(const DimPair& x, const DimPair& y, bool separated) {
  check_pair(x, "x");
  check_pair(y, "y");
  double lo = std::min(x.lower, y.lower);
  if (separated) return {lo, lo};
  return {lo, std::max(x.lower, y.assouad)};
}

}  // namespace fracdim
