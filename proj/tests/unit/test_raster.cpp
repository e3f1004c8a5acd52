#include <random>
#include <set>

#include <gtest/gtest.h>

#include "modalnav/raster.hpp"
#include "oracle/raster_oracle.hpp"

using namespace modalnav;

namespace {

std::set<CellIndex> cells_of(const std::vector<CellVisit>& visits) {
  std::set<CellIndex> out;
  for (const auto& v : visits) out.insert(v.cell);
  return out;
}

}  // namespace

TEST(Raster, SingleCell) {
  const auto m = GridMeta::from_cells(4, 4, 1.0);
  const auto v = traverse_segment({0.2, 0.3}, {0.7, 0.9}, m);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].cell, (CellIndex{2, 2}));
  EXPECT_DOUBLE_EQ(v[0].t_in, 0.0);
  EXPECT_DOUBLE_EQ(v[0].t_out, 1.0);
}

TEST(Raster, ExactDiagonalSkipsSideCells) {
  const auto m = GridMeta::from_cells(4, 4, 1.0);
  const auto v = traverse_segment(grid_to_world({0, 0}, m), grid_to_world({3, 3}, m), m);
  ASSERT_EQ(v.size(), 4u);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(v[i].cell, (CellIndex{i, i}));
}

TEST(Raster, ShallowLineVisitsEveryCrossedCell) {
  const auto m = GridMeta::from_cells(3, 6, 1.0);
  const auto v = traverse_segment(grid_to_world({0, 0}, m), grid_to_world({1, 5}, m), m);
  const std::set<CellIndex> expected{{0, 0}, {0, 1}, {0, 2}, {1, 3}, {1, 4}, {1, 5}};
  EXPECT_EQ(cells_of(v), expected);
  for (std::size_t i = 1; i < v.size(); ++i) EXPECT_DOUBLE_EQ(v[i].t_in, v[i - 1].t_out);
  EXPECT_DOUBLE_EQ(v.back().t_out, 1.0);
}

TEST(RasterProperties, MatchesClippingOracle) {
  std::mt19937 rng(47);
  std::uniform_real_distribution<double> coord(-4.999, 4.999);
  const auto m = GridMeta::from_cells(20, 20, 0.5);
  for (int trial = 0; trial < 500; ++trial) {
    const Vec2 a{coord(rng), coord(rng)}, b{coord(rng), coord(rng)};
    EXPECT_EQ(cells_of(traverse_segment(a, b, m)), oracle::crossed_cells(a, b, m));
  }
  std::uniform_int_distribution<int> cell(0, 19);
  for (int trial = 0; trial < 500; ++trial) {
    const Vec2 a = grid_to_world({cell(rng), cell(rng)}, m);
    const Vec2 b = grid_to_world({cell(rng), cell(rng)}, m);
    EXPECT_EQ(cells_of(traverse_segment(a, b, m)), oracle::crossed_cells(a, b, m));
  }
}

TEST(RasterProperties, VisitsAreContiguousAndOrdered) {
  std::mt19937 rng(53);
  std::uniform_real_distribution<double> coord(-2.999, 2.999);
  const auto m = GridMeta::from_cells(30, 30, 0.2);
  for (int trial = 0; trial < 300; ++trial) {
    const auto v = traverse_segment({coord(rng), coord(rng)}, {coord(rng), coord(rng)}, m);
    ASSERT_FALSE(v.empty());
    EXPECT_DOUBLE_EQ(v.front().t_in, 0.0);
    EXPECT_DOUBLE_EQ(v.back().t_out, 1.0);
    for (std::size_t i = 1; i < v.size(); ++i) {
      EXPECT_LE(std::abs(v[i].cell.row - v[i - 1].cell.row), 1);
      EXPECT_LE(std::abs(v[i].cell.col - v[i - 1].cell.col), 1);
      EXPECT_LE(v[i].t_in, v[i].t_out);
    }
  }
}
