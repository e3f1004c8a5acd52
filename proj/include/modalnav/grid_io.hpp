#pragma once

// Plain-text grid format shared by heightmaps and costmap exports:
//
//   rows cols resolution origin_x origin_y
//   v(0,0) v(0,1) ... v(0,cols-1)
//   ...                                     (rows lines)
//
// Values are decimal meters (or costs); the token `nan` marks an unobserved
// cell. Writers emit 6 decimal places.

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "modalnav/errors.hpp"
#include "modalnav/grid.hpp"

namespace modalnav {

inline constexpr double kDefaultPriorVariance = 0.01;

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

inline bool is_blank(std::string_view line) { return split_ws(line).empty(); }

inline bool parse_double(std::string_view tok, double& out) {
  if (tok == "nan" || tok == "NaN" || tok == "NAN") {
    out = std::numeric_limits<double>::quiet_NaN();
    return true;
  }
  const char* first = tok.data();
  if (!tok.empty() && tok.front() == '+') ++first;
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last && std::isfinite(out);
}

inline bool parse_int(std::string_view tok, int& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size();
}

inline std::string format_fixed6(double v) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) v = 0.0;  // no "-0.000000"
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

}  // namespace detail

struct GridText {
  GridMeta meta;
  Grid<double> values;
};

inline GridText parse_grid_text(std::istream& in, const std::string& source = "<stream>") {
  std::string line;
  std::size_t lineno = 0;

  // Header: first non-blank line.
  std::vector<std::string_view> tok;
  while (std::getline(in, line)) {
    ++lineno;
    if (!detail::is_blank(line)) {
      tok = detail::split_ws(line);
      break;
    }
  }
  if (tok.empty()) throw ParseError(source, lineno, "missing header");
  if (tok.size() != 5) {
    throw ParseError(source, lineno, "header must be `rows cols resolution origin_x origin_y`");
  }
  int rows = 0;
  int cols = 0;
  double res = 0.0;
  double ox = 0.0;
  double oy = 0.0;
  if (!detail::parse_int(tok[0], rows) || rows <= 0) throw ParseError(source, lineno, "bad row count");
  if (!detail::parse_int(tok[1], cols) || cols <= 0) throw ParseError(source, lineno, "bad column count");
  if (!detail::parse_double(tok[2], res) || !(res > 0.0)) throw ParseError(source, lineno, "bad resolution");
  if (!detail::parse_double(tok[3], ox) || !detail::parse_double(tok[4], oy) || std::isnan(ox) ||
      std::isnan(oy)) {
    throw ParseError(source, lineno, "bad origin");
  }

  GridText out{GridMeta::from_cells(rows, cols, res, {ox, oy}), {}};
  out.values = Grid<double>(out.meta, 0.0);

  int row = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::is_blank(line)) continue;
    if (row >= rows) {
      throw ParseError(source, lineno, "more data rows than the header's " + std::to_string(rows));
    }
    const auto cells = detail::split_ws(line);
    if (static_cast<int>(cells.size()) != cols) {
      throw ParseError(source, lineno,
                       "expected " + std::to_string(cols) + " values, found " + std::to_string(cells.size()));
    }
    for (int c = 0; c < cols; ++c) {
      double v = 0.0;
      if (!detail::parse_double(cells[c], v)) {
        throw ParseError(source, lineno, "non-numeric cell `" + std::string(cells[c]) + "`");
      }
      out.values[{row, c}] = v;
    }
    ++row;
  }
  if (row != rows) {
    throw ParseError(source, lineno,
                     "header declares " + std::to_string(rows) + " rows, found " + std::to_string(row));
  }
  return out;
}

inline void write_grid_text(std::ostream& out, const Grid<double>& values) {
  const GridMeta& m = values.meta();
  out << m.rows() << ' ' << m.cols() << ' ' << detail::format_fixed6(m.resolution()) << ' '
      << detail::format_fixed6(m.origin().x) << ' ' << detail::format_fixed6(m.origin().y) << '\n';
  std::string row_text;
  for (int r = 0; r < m.rows(); ++r) {
    row_text.clear();
    for (int c = 0; c < m.cols(); ++c) {
      if (c) row_text += ' ';
      row_text += detail::format_fixed6(values[{r, c}]);
    }
    out << row_text << '\n';
  }
}

inline ElevationGrid heightmap_from_text(const GridText& text, double prior_variance = kDefaultPriorVariance) {
  if (!(prior_variance >= 0.0)) throw InvalidArgument("prior variance must be non-negative");
  ElevationGrid grid(text.meta);
  for (std::size_t i = 0; i < text.meta.size(); ++i) {
    const CellIndex idx = text.meta.unlinear(i);
    const double h = text.values[idx];
    if (!std::isnan(h)) grid.set(idx, h, prior_variance);
  }
  return grid;
}

inline ElevationGrid parse_heightmap(std::istream& in, const std::string& source = "<stream>",
                                     double prior_variance = kDefaultPriorVariance) {
  return heightmap_from_text(parse_grid_text(in, source), prior_variance);
}

inline ElevationGrid load_heightmap(const std::string& path, double prior_variance = kDefaultPriorVariance) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open heightmap `" + path + "`");
  return parse_heightmap(in, path, prior_variance);
}

inline void write_heightmap(std::ostream& out, const ElevationGrid& grid) { write_grid_text(out, grid.heights()); }

inline std::string serialize_heightmap(const ElevationGrid& grid) {
  std::ostringstream os;
  write_heightmap(os, grid);
  return os.str();
}

inline void save_heightmap(const std::string& path, const ElevationGrid& grid) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write `" + path + "`");
  write_heightmap(out, grid);
  if (!out) throw IoError("write failed for `" + path + "`");
}

}  // namespace modalnav
