#include "fracdim/io.hpp"

#include <utility>

#include <json.hpp>

#include "fracdim/errors.hpp"

namespace fracdim {

namespace {

using json = nlohmann::ordered_json;

Num read_num(const json& v, const std::string& path) {
  if (v.is_string()) {
    try {
      return parse_num(v.get<std::string>());
    } catch (const input_error& e) {
      throw input_error(path + ": " + e.what());
    }
  }
  if (v.is_number()) return num_of(v.get<double>());
  throw input_error(path + ": expected a number or a rational string");
}

const json& read_array(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) throw input_error(path + key + ": missing");
  const json& v = obj[key];
  if (!v.is_array()) throw input_error(path + key + ": expected an array");
  return v;
}

std::vector<Num> read_num_array(const json& obj, const std::string& key) {
  const json& arr = read_array(obj, key, "");
  std::vector<Num> out;
  out.reserve(arr.size());
  for (std::size_t k = 0; k < arr.size(); ++k)
    out.push_back(read_num(arr[k], key + "[" + std::to_string(k) + "]"));
  return out;
}

System parse_baranski(const json& doc) {
  std::vector<Num> widths = read_num_array(doc, "columns");
  std::vector<Num> heights = read_num_array(doc, "rows");
  const json& cellsArr = read_array(doc, "cells", "");
  std::vector<std::pair<int, int>> cells;
  cells.reserve(cellsArr.size());
  for (std::size_t k = 0; k < cellsArr.size(); ++k) {
    const std::string path = "cells[" + std::to_string(k) + "]";
    const json& c = cellsArr[k];
    if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() ||
        !c[1].is_number_integer())
      throw input_error(path + ": expected a [column,row] index pair");
    cells.emplace_back(c[0].get<int>(), c[1].get<int>());
  }
  return make_baranski(std::move(widths), std::move(heights), std::move(cells));
}

System parse_lg(const json& doc) {
  const json& colsArr = read_array(doc, "columns", "");
  std::vector<LGColumn> columns;
  columns.reserve(colsArr.size());
  for (std::size_t i = 0; i < colsArr.size(); ++i) {
    const std::string cpath = "columns[" + std::to_string(i) + "]";
    const json& c = colsArr[i];
    if (!c.is_object()) throw input_error(cpath + ": expected an object");
    if (!c.contains("width")) throw input_error(cpath + ".width: missing");
    LGColumn col;
    col.width = read_num(c["width"], cpath + ".width");
    const json& cellsArr = read_array(c, "cells", cpath + ".");
    for (std::size_t k = 0; k < cellsArr.size(); ++k) {
      const std::string path = cpath + ".cells[" + std::to_string(k) + "]";
      const json& cell = cellsArr[k];
      if (!cell.is_object() || !cell.contains("height") || !cell.contains("offset"))
        throw input_error(path + ": expected {\"height\": h, \"offset\": o}");
      col.cells.push_back({read_num(cell["height"], path + ".height"),
                           read_num(cell["offset"], path + ".offset")});
    }
    columns.push_back(std::move(col));
  }
  return make_lg(std::move(columns));
}

System parse_similarity(const json& doc) {
  const json& mapsArr = read_array(doc, "maps", "");
  std::vector<SimilarityMap1D> maps;
  maps.reserve(mapsArr.size());
  for (std::size_t k = 0; k < mapsArr.size(); ++k) {
    const std::string path = "maps[" + std::to_string(k) + "]";
    const json& m = mapsArr[k];
    if (!m.is_object() || !m.contains("ratio") || !m.contains("translate"))
      throw input_error(path + ": expected {\"ratio\": r, \"translate\": t}");
    maps.push_back({read_num(m["ratio"], path + ".ratio"),
                    read_num(m["translate"], path + ".translate")});
  }
  return make_similarity_ifs(std::move(maps));
}

json num_to_json(const Num& n) {
  if (n.is_exact()) return json(format_num(n));
  return json(n.val);
}

}  // namespace

System parse_system(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error(std::string("syntax error: ") + e.what());
  }
  if (!doc.is_object()) throw input_error("document: expected a JSON object");
  if (!doc.contains("kind") || !doc["kind"].is_string())
    throw input_error("kind: missing or not a string");
  const std::string kind = doc["kind"].get<std::string>();
  if (kind == "baranski") return parse_baranski(doc);
  if (kind == "lalley-gatzouras") return parse_lg(doc);
  if (kind == "selfsimilar1d") return parse_similarity(doc);
  throw input_error("kind: unknown system kind '" + kind + "'");
}

std::string render_system(const System& system) {
  json doc;
  doc["kind"] = system_kind(system);
  if (const auto* b = std::get_if<BaranskiCarpet>(&system)) {
    json cols = json::array();
    for (const Num& w : b->columnWidths) cols.push_back(num_to_json(w));
    json rows = json::array();
    for (const Num& h : b->rowHeights) rows.push_back(num_to_json(h));
    json cells = json::array();
    for (const auto& [i, j] : b->cells) cells.push_back(json::array({i, j}));
    doc["columns"] = std::move(cols);
    doc["rows"] = std::move(rows);
    doc["cells"] = std::move(cells);
  } else if (const auto* lg = std::get_if<LGCarpet>(&system)) {
    json cols = json::array();
    for (const LGColumn& col : lg->columns) {
      json c;
      c["width"] = num_to_json(col.width);
      json cells = json::array();
      for (const LGCell& cell : col.cells) {
        json e;
        e["height"] = num_to_json(cell.height);
        e["offset"] = num_to_json(cell.offset);
        cells.push_back(std::move(e));
      }
      c["cells"] = std::move(cells);
      cols.push_back(std::move(c));
    }
    doc["columns"] = std::move(cols);
  } else {
    const auto& ifs = std::get<SimilarityIFS1D>(system);
    json maps = json::array();
    for (const SimilarityMap1D& m : ifs.maps) {
      json e;
      e["ratio"] = num_to_json(m.ratio);
      e["translate"] = num_to_json(m.translate);
      maps.push_back(std::move(e));
    }
    doc["maps"] = std::move(maps);
  }
  return doc.dump(2) + "\n";
}

std::string system_kind(const System& system) {
  if (std::holds_alternative<BaranskiCarpet>(system)) return "baranski";
  if (std::holds_alternative<LGCarpet>(system)) return "lalley-gatzouras";
  return "selfsimilar1d";
}

}  // namespace fracdim
