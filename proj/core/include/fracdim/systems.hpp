#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fracdim/numbers.hpp"

namespace fracdim {

struct SimilarityMap1D {
  Num ratio;      // in (0,1)
  Num translate;  // image [translate, translate+ratio] inside [0,1]
};

struct SimilarityIFS1D {
  std::vector<SimilarityMap1D> maps;
  // True when the open image intervals are pairwise disjoint. This is the
  // sufficient separation condition under which Hutchinson's formula is exact.
  bool osc = false;
};

// Diagonal affine map (x,y) -> (c*x + a, d*y + b).
struct AffineMap2D {
  Num c;
  Num d;
  Num a;
  Num b;
};

// Full grid carpet: the unit square is sliced into columns and rows whose
// widths/heights each sum to 1; a subset of the grid cells is selected.
struct BaranskiCarpet {
  std::vector<Num> columnWidths;
  std::vector<Num> rowHeights;
  std::vector<std::pair<int, int>> cells;  // (column, row), 0-based
};

struct LGCell {
  Num height;
  Num offset;  // vertical placement within [0, 1-height]
};

// Column of a Lalley-Gatzouras carpet: full-height strip of the given width,
// sliced horizontally into cells no taller than the column is wide.
struct LGColumn {
  Num width;
  std::vector<LGCell> cells;
};

struct LGCarpet {
  std::vector<LGColumn> columns;  // laid out left to right, widths sum to 1
};

enum class CarpetClass { Horizontal, Vertical, Mixed, SelfSimilar };

std::string to_string(CarpetClass cls);

using Carpet = std::variant<BaranskiCarpet, LGCarpet>;
using System = std::variant<SimilarityIFS1D, BaranskiCarpet, LGCarpet>;

// Validating constructors. Throw input_error with a field path on violation.
SimilarityIFS1D make_similarity_ifs(std::vector<SimilarityMap1D> maps);
BaranskiCarpet make_baranski(std::vector<Num> widths, std::vector<Num> heights,
                             std::vector<std::pair<int, int>> cells);
LGCarpet make_lg(std::vector<LGColumn> columns);

// Horizontal iff every map has c >= d and some map has c > d; Vertical
// symmetric; SelfSimilar iff c = d throughout; Mixed otherwise. Comparisons
// are exact for rational inputs and tolerant (1e-12 relative) otherwise.
CarpetClass classify(const BaranskiCarpet& carpet);
CarpetClass classify(const LGCarpet& carpet);
CarpetClass classify(const Carpet& carpet);

// Swap the roles of the axes: columns become rows and vice versa.
BaranskiCarpet transpose(const BaranskiCarpet& carpet);

// Derived affine maps, one per selected cell. Baranski: in cells order.
// LG: columns left to right, cells in list order within each column.
std::vector<AffineMap2D> affine_maps(const BaranskiCarpet& carpet);
std::vector<AffineMap2D> affine_maps(const LGCarpet& carpet);
std::vector<AffineMap2D> affine_maps(const Carpet& carpet);

// Column-structured view of a Baranski carpet whose cells are all at least
// as wide as tall (horizontal or self-similar class). Columns with no cells
// are kept so the widths still partition [0,1].
LGCarpet lg_view(const BaranskiCarpet& carpet);

// offsets[i] = lengths[0] + ... + lengths[i-1]; exact when inputs are exact.
std::vector<Num> prefix_offsets(const std::vector<Num>& lengths);

std::vector<int> occupied_columns(const BaranskiCarpet& carpet);
std::vector<int> occupied_rows(const BaranskiCarpet& carpet);

std::size_t cell_count(const Carpet& carpet);

}  // namespace fracdim
