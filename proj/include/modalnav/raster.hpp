#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "modalnav/grid.hpp"

namespace modalnav {

/// A cell crossed by a segment, with the parameter interval [t_in, t_out]
/// (0 at the start point, 1 at the end) spent inside it.
struct CellVisit {
  CellIndex cell;
  double t_in = 0.0;
  double t_out = 0.0;
};

/// Supercover traversal of the segment a -> b: every cell whose interior the
/// segment passes through, in order. A crossing exactly through a grid corner
/// steps diagonally; the two side cells are only touched at a point.
inline std::vector<CellVisit> traverse_segment(const Vec2& a, const Vec2& b, const GridMeta& meta) {
  constexpr double kSnap = 1e-9;  // cells
  const Vec2 ua = world_to_cell_coords(a, meta);
  const Vec2 ub = world_to_cell_coords(b, meta);

  CellIndex cell{static_cast<int>(std::floor(ua.x + kSnap)), static_cast<int>(std::floor(ua.y + kSnap))};
  const CellIndex last{static_cast<int>(std::floor(ub.x + kSnap)), static_cast<int>(std::floor(ub.y + kSnap))};

  const double du = ub.x - ua.x;
  const double dv = ub.y - ua.y;
  const int step_r = du > 0 ? 1 : (du < 0 ? -1 : 0);
  const int step_c = dv > 0 ? 1 : (dv < 0 ? -1 : 0);
  constexpr double kInf = std::numeric_limits<double>::infinity();

  double t_max_r = kInf;
  double t_delta_r = kInf;
  if (step_r != 0) {
    const double boundary = step_r > 0 ? cell.row + 1.0 : static_cast<double>(cell.row);
    t_max_r = (boundary - ua.x) / du;
    t_delta_r = 1.0 / std::abs(du);
  }
  double t_max_c = kInf;
  double t_delta_c = kInf;
  if (step_c != 0) {
    const double boundary = step_c > 0 ? cell.col + 1.0 : static_cast<double>(cell.col);
    t_max_c = (boundary - ua.y) / dv;
    t_delta_c = 1.0 / std::abs(dv);
  }
  const double length_cells = std::hypot(du, dv);
  const double tie = length_cells > 0.0 ? kSnap / length_cells : 0.0;

  std::vector<CellVisit> visits;
  double t = 0.0;
  // Bounded by the Manhattan distance between the end cells.
  const int max_steps = std::abs(last.row - cell.row) + std::abs(last.col - cell.col) + 2;
  for (int guard = 0; guard <= max_steps; ++guard) {
    if (cell == last) {
      visits.push_back({cell, t, 1.0});
      break;
    }
    const double t_next = std::min(t_max_r, t_max_c);
    if (t_next >= 1.0 - tie) {
      // Numerical end: the remaining part of the segment stays in this cell.
      visits.push_back({cell, t, 1.0});
      break;
    }
    visits.push_back({cell, t, t_next});
    if (std::abs(t_max_r - t_max_c) <= tie) {
      cell.row += step_r;
      cell.col += step_c;
      t_max_r += t_delta_r;
      t_max_c += t_delta_c;
    } else if (t_max_r < t_max_c) {
      cell.row += step_r;
      t_max_r += t_delta_r;
    } else {
      cell.col += step_c;
      t_max_c += t_delta_c;
    }
    t = t_next;
  }
  return visits;
}

}  // namespace modalnav
