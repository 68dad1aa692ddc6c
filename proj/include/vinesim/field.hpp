#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "vinesim/error.hpp"
#include "vinesim/random.hpp"

namespace vinesim {

// Ten acres in square meters.
inline constexpr double kTenAcresM2 = 40468.564224;

// Cartesian point in meters. X runs across rows, Y along rows.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

// Location on the field: row index plus along-row offset in meters.
struct FieldPoint {
  int row = 0;
  double x = 0.0;

  friend auto operator<=>(const FieldPoint&, const FieldPoint&) = default;
};

enum class Side { Left, Right };
enum class Difficulty { Easy, Difficult };

struct Spot {
  FieldPoint location;
  Side side = Side::Left;
  Difficulty difficulty = Difficulty::Easy;

  friend bool operator==(const Spot&, const Spot&) = default;
};

/// Row-structured vineyard. Row r lies on the line X = origin.x + r * row_spacing
/// and runs from Y = origin.y to Y = origin.y + row_length. Headlands sit at
/// both row ends (x = 0 and x = row_length).
class FieldGeometry {
 public:
  FieldGeometry(int num_rows, double row_length, double row_spacing, Point2 origin = {})
      : num_rows_(num_rows), row_length_(row_length), row_spacing_(row_spacing), origin_(origin) {
    if (num_rows < 1) throw InvalidGeometry("num_rows must be >= 1");
    if (!(row_length > 0.0) || !std::isfinite(row_length))
      throw InvalidGeometry("row_length must be positive");
    if (!(row_spacing > 0.0) || !std::isfinite(row_spacing))
      throw InvalidGeometry("row_spacing must be positive");
  }

  int num_rows() const noexcept { return num_rows_; }
  double row_length() const noexcept { return row_length_; }
  double row_spacing() const noexcept { return row_spacing_; }
  Point2 origin() const noexcept { return origin_; }

  // num_rows * row_length * row_spacing.
  double area() const noexcept { return num_rows_ * row_length_ * row_spacing_; }

  bool contains(const FieldPoint& p) const noexcept {
    return p.row >= 0 && p.row < num_rows_ && p.x >= 0.0 && p.x <= row_length_;
  }

  void require(const FieldPoint& p) const {
    if (!contains(p))
      throw DomainError("point (row " + std::to_string(p.row) + ", x " + std::to_string(p.x) +
                        ") lies outside the field");
  }

  Point2 to_cartesian(const FieldPoint& p) const noexcept {
    return {origin_.x + p.row * row_spacing_, origin_.y + p.x};
  }

  /// Continuous row coordinate of a Cartesian point (not rounded or clamped).
  double row_coordinate(const Point2& c) const noexcept { return (c.x - origin_.x) / row_spacing_; }

  /// Nearest valid field point: nearest row, x clamped onto the row.
  FieldPoint nearest_point(const Point2& c) const noexcept {
    const double r = std::round(row_coordinate(c));
    const int row = static_cast<int>(std::clamp(r, 0.0, static_cast<double>(num_rows_ - 1)));
    return {row, std::clamp(c.y - origin_.y, 0.0, row_length_)};
  }

  friend bool operator==(const FieldGeometry&, const FieldGeometry&) = default;

 private:
  int num_rows_;
  double row_length_;
  double row_spacing_;
  Point2 origin_;
};

inline FieldGeometry build_field(int num_rows, double row_length, double row_spacing) {
  return FieldGeometry(num_rows, row_length, row_spacing);
}

/// Spacing that makes num_rows * row_length cover exactly ten acres.
inline double ten_acre_spacing(int num_rows, double row_length) {
  if (num_rows < 1 || !(row_length > 0.0)) throw InvalidGeometry("cannot derive spacing");
  return kTenAcresM2 / (num_rows * row_length);
}

// The reference vineyard: 52 rows averaging 227 m.
inline FieldGeometry preset_52x227() { return {52, 227.0, ten_acre_spacing(52, 227.0)}; }

// The 75 x 200 m grid also quoted for the simulated vineyard.
inline FieldGeometry preset_75x200() { return {75, 200.0, ten_acre_spacing(75, 200.0)}; }

inline FieldGeometry field_preset(std::string_view name) {
  if (name == "52x227") return preset_52x227();
  if (name == "75x200") return preset_75x200();
  throw ConfigError("unknown field preset '" + std::string(name) + "' (expected 52x227 or 75x200)");
}

/// Uniformly scattered infected spots.
///
/// Row, along-row offset in [0, row_length) and side are uniform; difficulty
/// is Difficult with probability p_difficult. The draw order per spot is
/// row, x, side, difficulty, so the sequence is a pure function of the
/// arguments.
inline std::vector<Spot> generate_spots(const FieldGeometry& field, std::size_t n, double p_difficult,
                                        std::uint64_t seed) {
  if (!(p_difficult >= 0.0 && p_difficult <= 1.0))
    throw DomainError("p_difficult must lie in [0, 1]");
  Rng rng(seed);
  std::vector<Spot> spots;
  spots.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Spot s;
    s.location.row = static_cast<int>(rng.below(static_cast<std::uint64_t>(field.num_rows())));
    s.location.x = rng.uniform(0.0, field.row_length());
    s.side = rng.bernoulli(0.5) ? Side::Right : Side::Left;
    s.difficulty = rng.bernoulli(p_difficult) ? Difficulty::Difficult : Difficulty::Easy;
    spots.push_back(s);
  }
  return spots;
}

inline std::string_view to_string(Side s) { return s == Side::Left ? "left" : "right"; }
inline std::string_view to_string(Difficulty d) { return d == Difficulty::Easy ? "easy" : "difficult"; }

inline Side parse_side(std::string_view s) {
  if (s == "left" || s == "Left" || s == "L") return Side::Left;
  if (s == "right" || s == "Right" || s == "R") return Side::Right;
  throw InputFormatError("unknown side '" + std::string(s) + "'");
}

inline Difficulty parse_difficulty(std::string_view s) {
  if (s == "easy" || s == "Easy") return Difficulty::Easy;
  if (s == "difficult" || s == "Difficult") return Difficulty::Difficult;
  throw InputFormatError("unknown difficulty '" + std::string(s) + "'");
}

}  // namespace vinesim
