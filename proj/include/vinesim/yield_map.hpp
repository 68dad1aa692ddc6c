#pragma once

#include <charconv>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "vinesim/error.hpp"
#include "vinesim/field.hpp"

namespace vinesim {

/// Square-celled yield grid. Grid row 0 is the northernmost (largest Y) band
/// of cells; column 0 is the westernmost (smallest X). grid_origin is the
/// south-west corner in field Cartesian coordinates.
struct YieldMap {
  double cell_size = 1.0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;  // row-major, rows * cols
  Point2 grid_origin{};

  double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }

  Point2 cell_center(std::size_t i, std::size_t j) const {
    return {grid_origin.x + (static_cast<double>(j) + 0.5) * cell_size,
            grid_origin.y + (static_cast<double>(rows - i) - 0.5) * cell_size};
  }
};

struct ZoneEpicenter {
  std::size_t id = 0;
  FieldPoint center;
  std::size_t cell_count = 0;
  Point2 centroid{};  // unsnapped mean of member cell centers
};

enum class Connectivity { Four, Eight };

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace detail

/// Parses a yield grid: one grid row per line, comma-separated numbers.
/// A leading "#cell_size=<meters>" line overrides cell_size; blank lines are
/// skipped.
inline YieldMap load_yield_map(std::istream& in, double cell_size, Point2 grid_origin = {}) {
  YieldMap map;
  map.grid_origin = grid_origin;
  std::string line;
  std::size_t line_no = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = detail::trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      constexpr std::string_view key = "#cell_size=";
      if (first_content && text.starts_with(key)) {
        double v = 0.0;
        if (!detail::parse_double(text.substr(key.size()), v))
          throw InputFormatError("unparseable cell_size header", line_no);
        cell_size = v;
      }
      first_content = false;
      continue;
    }
    first_content = false;

    std::vector<double> row;
    std::size_t start = 0;
    for (std::size_t col = 1;; ++col) {
      const auto comma = text.find(',', start);
      const auto field = text.substr(start, comma == std::string_view::npos ? text.size() - start
                                                                             : comma - start);
      double v = 0.0;
      if (!detail::parse_double(field, v))
        throw InputFormatError("unparseable cell '" + std::string(detail::trim(field)) + "'",
                               line_no, col);
      row.push_back(v);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (map.rows == 0) {
      map.cols = row.size();
    } else if (row.size() != map.cols) {
      throw InputFormatError("grid row " + std::to_string(map.rows) + " has " +
                                 std::to_string(row.size()) + " cells, expected " +
                                 std::to_string(map.cols),
                             line_no, std::min(row.size(), map.cols) + 1);
    }
    map.values.insert(map.values.end(), row.begin(), row.end());
    ++map.rows;
  }
  if (!(cell_size > 0.0)) throw InputFormatError("cell_size must be positive");
  if (map.rows == 0) throw InputFormatError("yield grid is empty");
  map.cell_size = cell_size;
  return map;
}

inline YieldMap load_yield_map_file(const std::string& path, double cell_size, Point2 grid_origin = {}) {
  std::ifstream in(path);
  if (!in) throw InputFormatError("cannot open yield map '" + path + "'");
  return load_yield_map(in, cell_size, grid_origin);
}

inline YieldMap parse_yield_map(std::string_view text, double cell_size, Point2 grid_origin = {}) {
  std::istringstream in{std::string(text)};
  return load_yield_map(in, cell_size, grid_origin);
}

/// Replaces ordinal class labels by numeric yields. Cells whose value is not
/// a key of the table are left untouched.
inline YieldMap remap_classes(YieldMap map, const std::map<long, double>& class_values) {
  for (double& v : map.values) {
    const double r = std::round(v);
    if (r != v) continue;
    if (auto it = class_values.find(static_cast<long>(r)); it != class_values.end()) v = it->second;
  }
  return map;
}

/// Groups cells with value <= threshold into connected components and
/// returns one epicenter per component, ordered by (row, x).
inline std::vector<ZoneEpicenter> extract_low_yield_zones(const YieldMap& map, double threshold,
                                                          const FieldGeometry& field,
                                                          Connectivity conn = Connectivity::Four) {
  const std::size_t n = map.rows * map.cols;
  std::vector<int> label(n, -1);
  std::vector<ZoneEpicenter> zones;
  std::vector<std::size_t> stack;

  for (std::size_t seed = 0; seed < n; ++seed) {
    if (label[seed] >= 0 || !(map.values[seed] <= threshold)) continue;
    const int id = static_cast<int>(zones.size());
    double sx = 0.0, sy = 0.0;
    std::size_t count = 0;
    label[seed] = id;
    stack.assign(1, seed);
    while (!stack.empty()) {
      const std::size_t cell = stack.back();
      stack.pop_back();
      const std::size_t i = cell / map.cols, j = cell % map.cols;
      const Point2 c = map.cell_center(i, j);
      sx += c.x;
      sy += c.y;
      ++count;
      for (int di = -1; di <= 1; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          if (conn == Connectivity::Four && di != 0 && dj != 0) continue;
          const auto ni = static_cast<std::ptrdiff_t>(i) + di;
          const auto nj = static_cast<std::ptrdiff_t>(j) + dj;
          if (ni < 0 || nj < 0 || ni >= static_cast<std::ptrdiff_t>(map.rows) ||
              nj >= static_cast<std::ptrdiff_t>(map.cols))
            continue;
          const std::size_t next = static_cast<std::size_t>(ni) * map.cols + static_cast<std::size_t>(nj);
          if (label[next] >= 0 || !(map.values[next] <= threshold)) continue;
          label[next] = id;
          stack.push_back(next);
        }
      }
    }
    ZoneEpicenter z;
    z.cell_count = count;
    z.centroid = {sx / static_cast<double>(count), sy / static_cast<double>(count)};
    z.center = field.nearest_point(z.centroid);
    zones.push_back(z);
  }

  std::stable_sort(zones.begin(), zones.end(),
                   [](const ZoneEpicenter& a, const ZoneEpicenter& b) { return a.center < b.center; });
  for (std::size_t k = 0; k < zones.size(); ++k) zones[k].id = k;
  return zones;
}

}  // namespace vinesim
