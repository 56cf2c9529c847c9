#include "fracdim/systems.hpp"

#include <algorithm>
#include <set>

#include "fracdim/errors.hpp"

namespace fracdim {

namespace {

const Num kZero = num_of(0LL, 1LL);
const Num kOne = num_of(1LL, 1LL);

void check_unit_open(const Num& v, const std::string& path) {
  if (num_cmp(v, kZero) <= 0 || num_cmp(v, kOne) >= 0)
    throw input_error(path + ": value " + format_num(v) + " must lie in (0,1)");
}

void check_sum_one(const std::vector<Num>& values, const std::string& path) {
  Num sum = kZero;
  for (const Num& v : values) sum = sum + v;
  if (!num_eq(sum, kOne))
    throw input_error(path + ": widths sum != 1 (got " + format_num(sum) + ")");
}

}  // namespace

std::string to_string(CarpetClass cls) {
  switch (cls) {
    case CarpetClass::Horizontal: return "horizontal";
    case CarpetClass::Vertical: return "vertical";
    case CarpetClass::Mixed: return "mixed";
    case CarpetClass::SelfSimilar: return "self-similar";
  }
  return "unknown";
}

SimilarityIFS1D make_similarity_ifs(std::vector<SimilarityMap1D> maps) {
  if (maps.empty()) throw input_error("maps: at least one map required");
  for (std::size_t k = 0; k < maps.size(); ++k) {
    const std::string path = "maps[" + std::to_string(k) + "]";
    check_unit_open(maps[k].ratio, path + ".ratio");
    if (num_cmp(maps[k].translate, kZero) < 0)
      throw input_error(path + ".translate: negative translation");
    if (num_cmp(maps[k].translate + maps[k].ratio, kOne) > 0)
      throw input_error(path + ": image interval exceeds [0,1]");
  }
  std::vector<std::size_t> order(maps.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return maps[x].translate.val < maps[y].translate.val;
  });
  bool osc = true;
  for (std::size_t k = 0; k + 1 < order.size(); ++k) {
    const SimilarityMap1D& lo = maps[order[k]];
    const SimilarityMap1D& hi = maps[order[k + 1]];
    if (!num_le(lo.translate + lo.ratio, hi.translate)) {
      osc = false;
      break;
    }
  }
  SimilarityIFS1D ifs;
  ifs.maps = std::move(maps);
  ifs.osc = osc;
  return ifs;
}

BaranskiCarpet make_baranski(std::vector<Num> widths, std::vector<Num> heights,
                             std::vector<std::pair<int, int>> cells) {
  for (std::size_t i = 0; i < widths.size(); ++i)
    check_unit_open(widths[i], "columns[" + std::to_string(i) + "]");
  for (std::size_t j = 0; j < heights.size(); ++j)
    check_unit_open(heights[j], "rows[" + std::to_string(j) + "]");
  check_sum_one(widths, "columns");
  check_sum_one(heights, "rows");
  if (cells.size() < 2) throw input_error("cells: at least 2 cells required");
  std::set<std::pair<int, int>> seen;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const std::string path = "cells[" + std::to_string(k) + "]";
    auto [i, j] = cells[k];
    if (i < 0 || static_cast<std::size_t>(i) >= widths.size())
      throw input_error(path + ": column index " + std::to_string(i) + " out of range");
    if (j < 0 || static_cast<std::size_t>(j) >= heights.size())
      throw input_error(path + ": row index " + std::to_string(j) + " out of range");
    if (!seen.insert(cells[k]).second)
      throw input_error(path + ": duplicate cell (" + std::to_string(i) + "," +
                        std::to_string(j) + ")");
  }
  BaranskiCarpet carpet;
  carpet.columnWidths = std::move(widths);
  carpet.rowHeights = std::move(heights);
  carpet.cells = std::move(cells);
  return carpet;
}

LGCarpet make_lg(std::vector<LGColumn> columns) {
  std::vector<Num> widths;
  widths.reserve(columns.size());
  for (const LGColumn& col : columns) widths.push_back(col.width);
  for (std::size_t i = 0; i < columns.size(); ++i)
    check_unit_open(widths[i], "columns[" + std::to_string(i) + "].width");
  check_sum_one(widths, "columns");
  std::size_t total = 0;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    const LGColumn& col = columns[i];
    const std::string cpath = "columns[" + std::to_string(i) + "]";
    for (std::size_t k = 0; k < col.cells.size(); ++k) {
      const LGCell& cell = col.cells[k];
      const std::string path = cpath + ".cells[" + std::to_string(k) + "]";
      if (num_cmp(cell.height, kZero) <= 0 || num_cmp(cell.height, kOne) >= 0)
        throw input_error(path + ".height: value " + format_num(cell.height) +
                          " must lie in (0,1)");
      if (num_cmp(cell.offset, kZero) < 0)
        throw input_error(path + ".offset: negative offset");
      if (num_cmp(cell.offset + cell.height, kOne) > 0)
        throw input_error(path + ": cell extends above the unit square");
      if (num_cmp(cell.height, col.width) > 0)
        throw input_error(path + ": cell height " + format_num(cell.height) +
                          " exceeds column width " + format_num(col.width));
    }
    std::vector<std::size_t> order(col.cells.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return col.cells[x].offset.val < col.cells[y].offset.val;
    });
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
      const LGCell& lo = col.cells[order[k]];
      const LGCell& hi = col.cells[order[k + 1]];
      if (!num_le(lo.offset + lo.height, hi.offset))
        throw input_error(cpath + ": overlapping cells at offsets " +
                          format_num(lo.offset) + " and " + format_num(hi.offset));
    }
    total += col.cells.size();
  }
  if (total < 2) throw input_error("columns: at least 2 cells required in total");
  LGCarpet carpet;
  carpet.columns = std::move(columns);
  return carpet;
}

namespace {

CarpetClass classify_pairs(const std::vector<std::pair<Num, Num>>& cd) {
  bool wider = false;   // some c > d
  bool taller = false;  // some d > c
  for (const auto& [c, d] : cd) {
    int cmp = num_cmp(c, d);
    if (cmp > 0) wider = true;
    if (cmp < 0) taller = true;
  }
  if (wider && taller) return CarpetClass::Mixed;
  if (wider) return CarpetClass::Horizontal;
  if (taller) return CarpetClass::Vertical;
  return CarpetClass::SelfSimilar;
}

}  // namespace

CarpetClass classify(const BaranskiCarpet& carpet) {
  std::vector<std::pair<Num, Num>> cd;
  cd.reserve(carpet.cells.size());
  for (const auto& [i, j] : carpet.cells)
    cd.emplace_back(carpet.columnWidths[i], carpet.rowHeights[j]);
  return classify_pairs(cd);
}

CarpetClass classify(const LGCarpet& carpet) {
  std::vector<std::pair<Num, Num>> cd;
  for (const LGColumn& col : carpet.columns)
    for (const LGCell& cell : col.cells) cd.emplace_back(col.width, cell.height);
  return classify_pairs(cd);
}

CarpetClass classify(const Carpet& carpet) {
  return std::visit([](const auto& c) { return classify(c); }, carpet);
}

BaranskiCarpet transpose(const BaranskiCarpet& carpet) {
  BaranskiCarpet out;
  out.columnWidths = carpet.rowHeights;
  out.rowHeights = carpet.columnWidths;
  out.cells.reserve(carpet.cells.size());
  for (const auto& [i, j] : carpet.cells) out.cells.emplace_back(j, i);
  return out;
}

std::vector<Num> prefix_offsets(const std::vector<Num>& lengths) {
  std::vector<Num> offsets;
  offsets.reserve(lengths.size());
  Num acc = kZero;
  for (const Num& len : lengths) {
    offsets.push_back(acc);
    acc = acc + len;
  }
  return offsets;
}

std::vector<AffineMap2D> affine_maps(const BaranskiCarpet& carpet) {
  std::vector<Num> colOff = prefix_offsets(carpet.columnWidths);
  std::vector<Num> rowOff = prefix_offsets(carpet.rowHeights);
  std::vector<AffineMap2D> maps;
  maps.reserve(carpet.cells.size());
  for (const auto& [i, j] : carpet.cells)
    maps.push_back({carpet.columnWidths[i], carpet.rowHeights[j], colOff[i], rowOff[j]});
  return maps;
}

std::vector<AffineMap2D> affine_maps(const LGCarpet& carpet) {
  std::vector<Num> widths;
  widths.reserve(carpet.columns.size());
  for (const LGColumn& col : carpet.columns) widths.push_back(col.width);
  std::vector<Num> colOff = prefix_offsets(widths);
  std::vector<AffineMap2D> maps;
  for (std::size_t i = 0; i < carpet.columns.size(); ++i)
    for (const LGCell& cell : carpet.columns[i].cells)
      maps.push_back({carpet.columns[i].width, cell.height, colOff[i], cell.offset});
  return maps;
}

std::vector<AffineMap2D> affine_maps(const Carpet& carpet) {
  return std::visit([](const auto& c) { return affine_maps(c); }, carpet);
}

LGCarpet lg_view(const BaranskiCarpet& carpet) {
  std::vector<Num> rowOff = prefix_offsets(carpet.rowHeights);
  std::vector<LGColumn> columns(carpet.columnWidths.size());
  for (std::size_t i = 0; i < columns.size(); ++i)
    columns[i].width = carpet.columnWidths[i];
  std::vector<std::pair<int, int>> cells = carpet.cells;
  std::sort(cells.begin(), cells.end());
  for (const auto& [i, j] : cells) {
    if (num_cmp(carpet.rowHeights[j], carpet.columnWidths[i]) > 0)
      throw input_error("carpet has a cell taller than its column; no column view");
    columns[i].cells.push_back({carpet.rowHeights[j], rowOff[j]});
  }
  return make_lg(std::move(columns));
}

std::vector<int> occupied_columns(const BaranskiCarpet& carpet) {
  std::set<int> idx;
  for (const auto& [i, j] : carpet.cells) idx.insert(i);
  return std::vector<int>(idx.begin(), idx.end());
}

std::vector<int> occupied_rows(const BaranskiCarpet& carpet) {
  std::set<int> idx;
  for (const auto& [i, j] : carpet.cells) idx.insert(j);
  return std::vector<int>(idx.begin(), idx.end());
}

std::size_t cell_count(const Carpet& carpet) {
  if (const auto* b = std::get_if<BaranskiCarpet>(&carpet)) return b->cells.size();
  const auto& lg = std::get<LGCarpet>(carpet);
  std::size_t total = 0;
  for (const LGColumn& col : lg.columns) total += col.cells.size();
  return total;
}

}  // namespace fracdim
