#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "modalnav/costmap.hpp"
#include "modalnav/errors.hpp"
#include "modalnav/grid.hpp"

namespace modalnav {

enum class Locomotion { Ground, Aerial };

inline char flag_char(Locomotion m) { return m == Locomotion::Ground ? 'G' : 'A'; }
inline const char* mode_name(Locomotion m) { return m == Locomotion::Ground ? "ground" : "aerial"; }

struct ModalWaypoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  Locomotion flag = Locomotion::Ground;

  Vec3 position() const { return {x, y, z}; }
  Vec2 xy() const { return {x, y}; }

  friend bool operator==(const ModalWaypoint&, const ModalWaypoint&) = default;
};

struct ModalPath {
  std::vector<ModalWaypoint> waypoints;
  double total_g = 0.0;  // accumulated search cost, not energy

  bool empty() const noexcept { return waypoints.empty(); }
  std::size_t size() const noexcept { return waypoints.size(); }
};

struct PlannerParams {
  double clearance = 0.5;           // m above the footprint max for aerial waypoints
  double aerial_extra_cost = 0.0;   // flat surcharge per aerial step
  std::optional<double> goal_threshold;  // m; defaults to one cell diagonal
  double energy_ratio = kDefaultModeEnergyRatio;  // cells at or above are aerial-only
  int connectivity = 8;
  bool aerial_enabled = true;       // false: aerial-only cells are impassable

  double goal_threshold_for(const GridMeta& meta) const {
    return goal_threshold.value_or(meta.resolution() * std::sqrt(2.0));
  }

  void validate() const {
    if (!(clearance >= 0.0)) throw InvalidArgument("clearance must be non-negative");
    if (!(aerial_extra_cost >= 0.0)) throw InvalidArgument("aerial extra cost must be non-negative");
    if (goal_threshold && !(*goal_threshold >= 0.0)) throw InvalidArgument("goal threshold must be non-negative");
    if (!(energy_ratio > 0.0)) throw InvalidArgument("mode energy ratio must be positive");
    if (connectivity != 4 && connectivity != 8) throw InvalidArgument("connectivity must be 4 or 8");
  }
};

/// Euclidean distance in the horizontal plane.
inline double heuristic(const Vec2& a, const Vec2& b) {
  return std::sqrt((b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y));
}

struct CellOffset {
  int dr;
  int dc;
};

inline std::span<const CellOffset> neighbor_offsets(int connectivity) {
  // Fixed order; part of the deterministic tie-breaking.
  static constexpr CellOffset kEight[] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1},
                                          {0, 1},   {1, -1}, {1, 0},  {1, 1}};
  static constexpr CellOffset kFour[] = {{-1, 0}, {0, -1}, {0, 1}, {1, 0}};
  if (connectivity == 4) return kFour;
  return kEight;
}

struct StepCost {
  double g_increment = 0.0;
  Locomotion flag = Locomotion::Ground;
  double z = 0.0;
};

/// Cost of moving from `current` into the adjacent cell `neighbor`.
///
/// Aerial-only neighbors (cost >= L_e) fly at footprint max + clearance and pay
///   h(c, n) + c_n * de + cle_a + c_n,  de = round(|e_c - e_n| / res);
/// ground neighbors pay h(c, n) + c_n at the cell elevation.
inline StepCost step_cost(CellIndex current, CellIndex neighbor, const ModalCostmap& costmap,
                          const ElevationGrid& elev, const PlannerParams& params) {
  const GridMeta& meta = elev.meta();
  const double c_n = costmap.at(neighbor);
  const double e_n = elev.height(neighbor);
  const double e_c = elev.height(current);
  const double step = heuristic(grid_to_world(current, meta), grid_to_world(neighbor, meta));

  if (c_n >= params.energy_ratio) {
    const double de = std::round(std::abs(e_c - e_n) / meta.resolution());
    return {step + c_n * de + params.aerial_extra_cost + c_n, Locomotion::Aerial,
            max_elevation_footprint(elev, neighbor) + params.clearance};
  }
  return {step + c_n, Locomotion::Ground, e_n};
}

namespace detail {

inline void check_plan_inputs(const ModalCostmap& costmap, const ElevationGrid& elev) {
  if (!(costmap.meta() == elev.meta())) {
    throw DimensionError("costmap and elevation grids differ in geometry");
  }
}

}  // namespace detail

/// Best-first search over grid cells, f = g + h. Returns the cheapest path
/// under step_cost from the start cell to any cell whose center lies within
/// the goal threshold of `goal`.
inline ModalPath plan(const ModalCostmap& costmap, const ElevationGrid& elev, const Vec2& start,
                      const Vec2& goal, const PlannerParams& params = {}) {
  params.validate();
  detail::check_plan_inputs(costmap, elev);
  const GridMeta& meta = elev.meta();
  const CellIndex start_cell = world_to_grid(start, meta);
  world_to_grid(goal, meta);  // bounds check only; the goal test is metric

  if (!elev.observed(start_cell)) {
    throw InvalidArgument("start cell " + to_string(start_cell) + " is unobserved");
  }
  if (costmap.at(start_cell) >= params.energy_ratio) {
    throw InvalidArgument("start cell " + to_string(start_cell) + " is not ground-traversable");
  }

  const double threshold = params.goal_threshold_for(meta);
  // Distance to the goal region rather than the goal point. Identical to the
  // plain Euclidean heuristic when the threshold is zero; keeps the first
  // goal-region node popped optimal otherwise.
  auto h_goal = [&](CellIndex c) {
    return std::max(0.0, heuristic(grid_to_world(c, meta), goal) - threshold);
  };
  auto in_goal = [&](CellIndex c) { return heuristic(grid_to_world(c, meta), goal) <= threshold + 1e-12; };

  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  const std::size_t n_cells = meta.size();
  std::vector<double> g(n_cells, kInf);
  std::vector<std::size_t> came_from(n_cells, kNone);
  std::vector<Locomotion> node_flag(n_cells, Locomotion::Ground);
  std::vector<double> node_z(n_cells, 0.0);
  std::vector<bool> closed(n_cells, false);

  // (f, h, row, col): lower f, then lower h, then lexicographic cell.
  using Entry = std::tuple<double, double, int, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;

  const std::size_t s = meta.linear(start_cell);
  g[s] = 0.0;
  node_z[s] = elev.height(start_cell);
  open.emplace(h_goal(start_cell), h_goal(start_cell), start_cell.row, start_cell.col);

  const auto offsets = neighbor_offsets(params.connectivity);
  while (!open.empty()) {
    const auto [f, h, row, col] = open.top();
    open.pop();
    const CellIndex c{row, col};
    const std::size_t ci = meta.linear(c);
    if (closed[ci]) continue;
    closed[ci] = true;

    if (in_goal(c)) {
      std::vector<std::size_t> chain;
      for (std::size_t i = ci; i != kNone; i = came_from[i]) chain.push_back(i);
      std::reverse(chain.begin(), chain.end());
      ModalPath path;
      path.total_g = g[ci];
      path.waypoints.reserve(chain.size());
      for (std::size_t i : chain) {
        const Vec2 w = grid_to_world(meta.unlinear(i), meta);
        path.waypoints.push_back({w.x, w.y, node_z[i], node_flag[i]});
      }
      return path;
    }

    for (const auto& off : offsets) {
      const CellIndex n{c.row + off.dr, c.col + off.dc};
      if (!meta.contains(n)) continue;
      const std::size_t ni = meta.linear(n);
      if (closed[ni] || !elev.observed(n)) continue;
      if (!params.aerial_enabled && costmap.at(n) >= params.energy_ratio) continue;

      const StepCost sc = step_cost(c, n, costmap, elev, params);
      const double g_n = g[ci] + sc.g_increment;
      if (g_n < g[ni]) {
        g[ni] = g_n;
        came_from[ni] = ci;
        node_flag[ni] = sc.flag;
        node_z[ni] = sc.z;
        const double hn = h_goal(n);
        open.emplace(g_n + hn, hn, n.row, n.col);
      }
    }
  }
  throw NoPathError("no path from (" + std::to_string(start.x) + ", " + std::to_string(start.y) + ") to (" +
                    std::to_string(goal.x) + ", " + std::to_string(goal.y) + ")");
}

/// Cell under each waypoint, for callers that need to revisit the grid.
inline std::vector<CellIndex> path_cells(const ModalPath& path, const GridMeta& meta) {
  std::vector<CellIndex> out;
  out.reserve(path.size());
  for (const auto& w : path.waypoints) out.push_back(world_to_grid(w.xy(), meta));
  return out;
}

}  // namespace modalnav
