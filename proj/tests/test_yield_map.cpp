#include <gtest/gtest.h>

#include "oracles.hpp"
#include "vinesim/random.hpp"
#include "vinesim/yield_map.hpp"

using namespace vinesim;

TEST(LoadYieldMap, EchoesGrid) {
  const auto m = parse_yield_map("1,2\n3,4\n", 26.0);
  EXPECT_EQ(m.rows, 2u);
  EXPECT_EQ(m.cols, 2u);
  EXPECT_DOUBLE_EQ(m.cell_size, 26.0);
  EXPECT_EQ(m.values, (std::vector<double>{1, 2, 3, 4}));
}

TEST(LoadYieldMap, HeaderOverridesCellSize) {
  const auto m = parse_yield_map("#cell_size=13.5\n1,2\n", 26.0);
  EXPECT_DOUBLE_EQ(m.cell_size, 13.5);
  EXPECT_EQ(m.rows, 1u);
}

TEST(LoadYieldMap, RaggedRowNamesTheRow) {
  try {
    parse_yield_map("1,2,3\n4,5\n6,7,8\n", 26.0);
    FAIL() << "expected InputFormatError";
  } catch (const InputFormatError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("grid row 1"), std::string::npos) << e.what();
  }
}

TEST(LoadYieldMap, UnparseableCellLocated) {
  try {
    parse_yield_map("1,2\n3,x\n", 26.0);
    FAIL() << "expected InputFormatError";
  } catch (const InputFormatError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 2u);
  }
  EXPECT_THROW(parse_yield_map("1,,2\n", 26.0), InputFormatError);
}

TEST(LoadYieldMap, RejectsBadCellSizeAndEmpty) {
  EXPECT_THROW(parse_yield_map("1,2\n", 0.0), InputFormatError);
  EXPECT_THROW(parse_yield_map("#cell_size=-2\n1,2\n", 26.0), InputFormatError);
  EXPECT_THROW(parse_yield_map("\n\n", 26.0), InputFormatError);
}

TEST(LoadYieldMap, UniformZeroGrid) {
  std::string text;
  for (int i = 0; i < 10; ++i) text += "0,0,0,0,0,0,0,0,0,0\n";
  const auto m = parse_yield_map(text, 26.0);
  EXPECT_EQ(m.rows, 10u);
  EXPECT_EQ(m.cols, 10u);
  for (double v : m.values) EXPECT_EQ(v, 0.0);
}

TEST(RemapClasses, ReplacesOnlyListedClasses) {
  auto m = parse_yield_map("1,2\n3,4.5\n", 1.0);
  m = remap_classes(m, {{1, 10.0}, {3, 30.0}});
  EXPECT_EQ(m.values, (std::vector<double>{10.0, 2.0, 30.0, 4.5}));
}

namespace {

// 10 rows of 100 m, 2 m apart: field spans X in [0, 18], Y in [0, 100].
FieldGeometry small_field() { return {10, 100.0, 2.0}; }

}  // namespace

TEST(LowYieldZones, NoneBelowThreshold) {
  const auto m = parse_yield_map("5,5\n5,5\n", 4.0);
  EXPECT_TRUE(extract_low_yield_zones(m, 1.0, small_field()).empty());
}

TEST(LowYieldZones, SingleCellSnapsToNearestRow) {
  // 3 x 3 grid of 4 m cells; qualifying cell at grid (0, 2): center X = 10, Y = 10.
  const auto m = parse_yield_map("5,5,0\n5,5,5\n5,5,5\n", 4.0);
  const auto zones = extract_low_yield_zones(m, 1.0, small_field());
  ASSERT_EQ(zones.size(), 1u);
  EXPECT_EQ(zones[0].cell_count, 1u);
  EXPECT_DOUBLE_EQ(zones[0].centroid.x, 10.0);
  EXPECT_DOUBLE_EQ(zones[0].centroid.y, 10.0);
  EXPECT_EQ(zones[0].center, (FieldPoint{5, 10.0}));
}

TEST(LowYieldZones, LShapedComponent) {
  // Cells (0,0), (1,0), (1,1) of a 2 x 2 grid with 4 m cells; grid origin (1, 0).
  // Centers: (3, 6), (3, 2), (7, 2) -> centroid (13/3, 10/3).
  // Row coordinate 13/3 / 2 = 2.1667 -> row 2.
  const auto m = parse_yield_map("0,9\n0,0\n", 4.0, {1.0, 0.0});
  const auto zones = extract_low_yield_zones(m, 0.5, small_field());
  ASSERT_EQ(zones.size(), 1u);
  EXPECT_EQ(zones[0].cell_count, 3u);
  EXPECT_NEAR(zones[0].centroid.x, 13.0 / 3.0, 1e-12);
  EXPECT_NEAR(zones[0].centroid.y, 10.0 / 3.0, 1e-12);
  EXPECT_EQ(zones[0].center.row, 2);
  EXPECT_NEAR(zones[0].center.x, 10.0 / 3.0, 1e-12);
}

TEST(LowYieldZones, DiagonalCellsSeparateUnderFourConnectivity) {
  const auto m = parse_yield_map("0,9\n9,0\n", 4.0);
  EXPECT_EQ(extract_low_yield_zones(m, 0.0, small_field()).size(), 2u);
  EXPECT_EQ(extract_low_yield_zones(m, 0.0, small_field(), Connectivity::Eight).size(), 1u);
}

TEST(LowYieldZones, OrderedByRowThenX) {
  const auto m = parse_yield_map("0,9,9,0\n9,9,9,9\n0,9,9,9\n", 4.0);
  const auto zones = extract_low_yield_zones(m, 0.0, small_field());
  ASSERT_EQ(zones.size(), 3u);
  for (std::size_t k = 0; k < zones.size(); ++k) {
    EXPECT_EQ(zones[k].id, k);
    if (k) {
      EXPECT_LT(zones[k - 1].center, zones[k].center);
    }
  }
}

// Property: zone count equals an independent union-find component count, and
// every snapped row is within half a row spacing of the centroid.
TEST(LowYieldZones, MatchesUnionFindOracle) {
  const FieldGeometry field(40, 120.0, 3.0);
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng.below(12), cols = 1 + rng.below(12);
    YieldMap m;
    m.cell_size = 3.0 + rng.uniform() * 6.0;
    m.rows = rows;
    m.cols = cols;
    m.grid_origin = {rng.uniform() * 5.0, rng.uniform() * 5.0};
    std::vector<bool> mask(rows * cols);
    for (std::size_t c = 0; c < rows * cols; ++c) {
      m.values.push_back(static_cast<double>(rng.below(4)));
      mask[c] = m.values.back() <= 1.0;
    }
    for (bool eight : {false, true}) {
      const auto zones =
          extract_low_yield_zones(m, 1.0, field, eight ? Connectivity::Eight : Connectivity::Four);
      ASSERT_EQ(zones.size(), oracle::count_components(mask, rows, cols, eight)) << "trial " << trial;
      std::size_t cells = 0;
      for (const auto& z : zones) {
        cells += z.cell_count;
        ASSERT_GE(z.cell_count, 1u);
        ASSERT_TRUE(field.contains(z.center));
        const double gap = std::abs(field.to_cartesian(z.center).x - z.centroid.x);
        ASSERT_LE(gap, field.row_spacing() / 2 + 1e-9);
      }
      EXPECT_EQ(cells, static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true)));
    }
  }
}
