#include <random>

#include <gtest/gtest.h>

#include "modalnav/postprocess.hpp"
#include "support/worlds.hpp"

using namespace modalnav;

namespace {

ModalWaypoint g(double x, double y, double z = 0.0) { return {x, y, z, Locomotion::Ground}; }
ModalWaypoint a(double x, double y, double z) { return {x, y, z, Locomotion::Aerial}; }

struct Flat {
  ElevationGrid elev;
  ModalCostmap costmap;
};

// Unit cells; cell (r, c) is centered at (r - n/2 + 0.5, c - n/2 + 0.5).
Flat flat(int n, double res = 1.0) {
  const auto meta = GridMeta::from_cells(n, n, res);
  Flat f{ElevationGrid(meta), {Grid<double>(meta, 0.0), 60.0, 0, {}}};
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) f.elev.set({r, c}, 0.0, 0.01);
  return f;
}

ModalPath path_of(std::vector<ModalWaypoint> w) { return {std::move(w), 0.0}; }

}  // namespace

TEST(Partition, RunLengthOverFlags) {
  const auto p = partition_path(path_of({g(0, 0), g(1, 0), a(2, 0, 1), a(3, 0, 1), g(4, 0)}));
  ASSERT_EQ(p.segments.size(), 3u);
  EXPECT_EQ(p.segments[0].waypoints.size(), 2u);
  EXPECT_EQ(p.segments[1].waypoints.size(), 2u);
  EXPECT_EQ(p.segments[2].waypoints.size(), 1u);
  EXPECT_EQ(p.segments[1].mode, Locomotion::Aerial);
  EXPECT_EQ(p.boundaries, (std::vector<std::size_t>{1, 3, 4}));
  EXPECT_EQ(p.segments[2].first_index, 4u);
}

TEST(Partition, SingleModeAndSingleWaypoint) {
  EXPECT_EQ(partition_path(path_of({g(0, 0), g(1, 0), g(2, 0)})).segments.size(), 1u);
  const auto one = partition_path(path_of({g(0, 0)}));
  ASSERT_EQ(one.segments.size(), 1u);
  EXPECT_EQ(one.segments[0].waypoints.size(), 1u);
  EXPECT_TRUE(partition_path(path_of({})).segments.empty());
  EXPECT_EQ(count_segments(path_of({a(0, 0, 1), g(1, 0), a(2, 0, 1)}), Locomotion::Aerial), 2u);
}

TEST(ClearEdge, FlatGroundAlwaysClear) {
  auto f = flat(8);
  EXPECT_TRUE(clear_edge(g(-3.5, -3.5), g(3.5, 2.5), f.costmap, f.elev, {}));
  EXPECT_THROW(clear_edge(g(0, 0), a(1, 1, 1), f.costmap, f.elev, {}), InvalidArgument);
}

TEST(ClearEdge, GroundBlockedByObstacleCell) {
  auto f = flat(8);
  f.costmap.cost[{4, 4}] = 60.02;
  EXPECT_FALSE(clear_edge(g(-3.5, 0.5), g(3.5, 0.5), f.costmap, f.elev, {}));
  EXPECT_TRUE(clear_edge(g(-3.5, 1.5), g(3.5, 1.5), f.costmap, f.elev, {}));
}

TEST(ClearEdge, AerialBoundaryIsInclusive) {
  auto f = flat(6);
  for (int c = 0; c < 6; ++c) f.elev.set({3, c}, 1.5, 0.01);
  PlannerParams p;
  p.clearance = 0.5;
  EXPECT_TRUE(clear_edge(a(-2.5, 0.5, 2.0), a(2.5, 0.5, 2.0), f.costmap, f.elev, p));
  EXPECT_FALSE(clear_edge(a(-2.5, 0.5, 1.99), a(2.5, 0.5, 1.99), f.costmap, f.elev, p));
}

TEST(ClearEdge, AerialLeavingTheMapFails) {
  auto f = flat(4);
  EXPECT_FALSE(clear_edge(a(-1.5, 0.0, 3.0), a(5.0, 0.0, 3.0), f.costmap, f.elev, {}));
}

TEST(Prune, CollinearTriple) {
  auto f = flat(6);
  const auto out = prune_partition({g(0.5, 0.5), g(1.5, 1.5), g(2.5, 2.5)}, f.costmap, f.elev, {});
  EXPECT_EQ(out, (std::vector<ModalWaypoint>{g(0.5, 0.5), g(2.5, 2.5)}));
}

TEST(Prune, BlockedShortcutKeepsCorner) {
  auto f = flat(6);
  // The shortcut from the first to the last waypoint crosses cell (4,4),
  // centered at (1.5, 1.5); the L-shaped route does not.
  f.costmap.cost[{4, 4}] = 60.02;
  const std::vector<ModalWaypoint> seg{g(0.5, 0.5), g(2.5, 0.5), g(2.5, 1.5)};
  EXPECT_EQ(prune_partition(seg, f.costmap, f.elev, {}), seg);
  f.costmap.cost[{4, 4}] = 0.0;
  EXPECT_EQ(prune_partition(seg, f.costmap, f.elev, {}).size(), 2u);
}

TEST(Prune, ShortSegmentsUnchanged) {
  auto f = flat(4);
  const std::vector<ModalWaypoint> two{g(0.5, 0.5), g(1.5, 1.5)};
  EXPECT_EQ(prune_partition(two, f.costmap, f.elev, {}), two);
  EXPECT_EQ(prune_partition({g(0.5, 0.5)}, f.costmap, f.elev, {}).size(), 1u);
}

TEST(Prune, AerialCollinearityIsThreeDimensional) {
  auto f = flat(8);
  PlannerParams p;
  p.clearance = 0.0;
  // Straight in xy but climbing then level: not collinear in xyz, yet the
  // direct edge still clears the flat ground.
  const std::vector<ModalWaypoint> seg{a(-2.5, 0.5, 0.0), a(-1.5, 0.5, 1.0), a(0.5, 0.5, 1.0)};
  EXPECT_FALSE(detail::collinear_between(seg[0], seg[1], seg[2]));
  EXPECT_EQ(prune_partition(seg, f.costmap, f.elev, p).size(), 2u);
  EXPECT_TRUE(detail::collinear_between(a(0, 0, 0), a(1, 1, 1), a(2, 2, 2)));
  EXPECT_FALSE(detail::collinear_between(g(0, 0), g(2, 0), g(1, 0)));  // doubles back
}

TEST(Postprocess, KeepsTransitionsAndPrunesRuns) {
  auto f = flat(10);
  const auto path = path_of({g(-4.5, 0.5), g(-3.5, 0.5), g(-2.5, 0.5), a(-1.5, 0.5, 1.0), a(-0.5, 0.5, 1.0),
                             a(0.5, 0.5, 1.0), g(1.5, 0.5), g(2.5, 0.5), g(3.5, 0.5)});
  const auto out = postprocess_path(path, f.costmap, f.elev, {});
  EXPECT_EQ(out.waypoints, (std::vector<ModalWaypoint>{g(-4.5, 0.5), g(-2.5, 0.5), a(-1.5, 0.5, 1.0),
                                                       a(0.5, 0.5, 1.0), g(1.5, 0.5), g(3.5, 0.5)}));
  EXPECT_NEAR(path_length(out), path_length(path), 1e-12);
}

TEST(PostprocessProperties, PrunedPathsOfPlannedRoutes) {
  std::mt19937 rng(59);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    auto w = gen::terrain_world(rng, 30, 30);
    PlannerParams p;
    ModalPath raw;
    try {
      raw = plan(w.costmap, w.elev, w.start, w.goal, p);
    } catch (const NoPathError&) {
      continue;
    }
    ++checked;
    const auto out = postprocess_path(raw, w.costmap, w.elev, p);
    const auto before = partition_path(raw);
    const auto after = partition_path(out);
    ASSERT_EQ(before.segments.size(), after.segments.size());
    for (std::size_t s = 0; s < before.segments.size(); ++s) {
      EXPECT_EQ(before.segments[s].mode, after.segments[s].mode);
      EXPECT_EQ(before.segments[s].waypoints.front(), after.segments[s].waypoints.front());
      EXPECT_EQ(before.segments[s].waypoints.back(), after.segments[s].waypoints.back());
    }
    EXPECT_LE(out.size(), raw.size());
    std::size_t j = 0;
    for (const auto& wp : out.waypoints) {
      while (j < raw.size() && !(raw.waypoints[j] == wp)) ++j;
      EXPECT_LT(j, raw.size()) << "pruned path invented a waypoint";
    }
    for (std::size_t i = 1; i < out.size(); ++i) {
      if (out.waypoints[i].flag != out.waypoints[i - 1].flag) continue;
      EXPECT_TRUE(clear_edge(out.waypoints[i - 1], out.waypoints[i], w.costmap, w.elev, p));
    }
    EXPECT_LE(path_length(out), path_length(raw) + 1e-9);
  }
  EXPECT_GT(checked, 20);
}
