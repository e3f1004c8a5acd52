#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "modalnav/costmap.hpp"
#include "modalnav/errors.hpp"
#include "modalnav/grid.hpp"
#include "modalnav/planner.hpp"
#include "modalnav/raster.hpp"

namespace modalnav {

/// Maximal run of same-mode waypoints.
struct PathSegment {
  Locomotion mode = Locomotion::Ground;
  std::size_t first_index = 0;  // position of waypoints.front() in the source path
  std::vector<ModalWaypoint> waypoints;
};

struct PathPartition {
  std::vector<PathSegment> segments;
  // Index of the last waypoint of each segment (k_1 .. k_n).
  std::vector<std::size_t> boundaries;
};

inline PathPartition partition_path(const ModalPath& path) {
  PathPartition out;
  for (std::size_t i = 0; i < path.waypoints.size(); ++i) {
    const auto& w = path.waypoints[i];
    if (out.segments.empty() || out.segments.back().mode != w.flag) {
      if (!out.segments.empty()) out.boundaries.push_back(i - 1);
      out.segments.push_back({w.flag, i, {}});
    }
    out.segments.back().waypoints.push_back(w);
  }
  if (!out.segments.empty()) out.boundaries.push_back(path.waypoints.size() - 1);
  return out;
}

inline std::size_t count_segments(const ModalPath& path, Locomotion mode) {
  const auto part = partition_path(path);
  return static_cast<std::size_t>(
      std::count_if(part.segments.begin(), part.segments.end(), [&](const PathSegment& s) { return s.mode == mode; }));
}

/// Whether a same-mode edge can be followed directly. Ground edges must stay
/// on ground-traversable cells; aerial edges, with z interpolated linearly,
/// must clear footprint max + clearance over every crossed cell (boundary
/// inclusive, within `tolerance`).
inline bool clear_edge(const ModalWaypoint& a, const ModalWaypoint& b, const ModalCostmap& costmap,
                       const ElevationGrid& elev, const PlannerParams& params, double tolerance = 1e-9) {
  if (a.flag != b.flag) throw InvalidArgument("clear_edge expects waypoints of the same mode");
  const GridMeta& meta = elev.meta();
  const auto visits = traverse_segment(a.xy(), b.xy(), meta);

  if (a.flag == Locomotion::Ground) {
    for (const auto& v : visits) {
      if (!meta.contains(v.cell) || costmap.at(v.cell) >= params.energy_ratio) return false;
    }
    return true;
  }

  const Vec2 ua = world_to_cell_coords(a.xy(), meta);
  const Vec2 ub = world_to_cell_coords(b.xy(), meta);
  const double du = ub.x - ua.x;
  const double dv = ub.y - ua.y;
  const double len2 = du * du + dv * dv;
  for (const auto& v : visits) {
    if (!meta.contains(v.cell)) return false;
    // Altitude where the edge passes closest to the cell center.
    double z = std::min(a.z, b.z);
    if (len2 > 0.0) {
      const double t_center = ((v.cell.row + 0.5 - ua.x) * du + (v.cell.col + 0.5 - ua.y) * dv) / len2;
      const double t = std::clamp(t_center, v.t_in, v.t_out);
      z = a.z + t * (b.z - a.z);
    }
    double required = 0.0;
    try {
      required = max_elevation_footprint(elev, v.cell) + params.clearance;
    } catch (const UnobservedCellError&) {
      return false;
    }
    if (z < required - tolerance) return false;
  }
  return true;
}

namespace detail {

// Collinear with b lying between a and c: cross-product magnitude below
// 1e-9 (xy for ground, xyz for aerial).
inline bool collinear_between(const ModalWaypoint& a, const ModalWaypoint& b, const ModalWaypoint& c) {
  constexpr double kTol = 1e-9;
  const double ux = b.x - a.x, uy = b.y - a.y;
  const double vx = c.x - b.x, vy = c.y - b.y;
  double cross2 = 0.0;
  double dot = ux * vx + uy * vy;
  if (a.flag == Locomotion::Ground) {
    const double cz = ux * vy - uy * vx;
    cross2 = cz * cz;
  } else {
    const double uz = b.z - a.z, vz = c.z - b.z;
    const double cx = uy * vz - uz * vy;
    const double cy = uz * vx - ux * vz;
    const double cz = ux * vy - uy * vx;
    cross2 = cx * cx + cy * cy + cz * cz;
    dot += uz * vz;
  }
  return cross2 < kTol * kTol && dot >= 0.0;
}

}  // namespace detail

/// Removes redundant waypoints of one same-mode segment, walking back from the
/// tail. While an earlier waypoint still sees the running anchor (collinear,
/// or clear_edge holds), the waypoint in between is dropped; when it does not,
/// the previous waypoint is kept and becomes the new anchor. The first and last
/// waypoints are always kept.
inline std::vector<ModalWaypoint> prune_partition(const std::vector<ModalWaypoint>& segment,
                                                  const ModalCostmap& costmap, const ElevationGrid& elev,
                                                  const PlannerParams& params) {
  if (segment.size() <= 2) return segment;
  const std::size_t n = segment.size() - 1;

  std::vector<ModalWaypoint> kept{segment[n]};
  std::size_t anchor = n;
  for (std::size_t k = n - 1; k-- > 0;) {
    // segment[k + 1] sees the anchor here.
    if (detail::collinear_between(segment[k], segment[k + 1], segment[anchor])) continue;
    if (clear_edge(segment[k], segment[anchor], costmap, elev, params)) continue;
    kept.push_back(segment[k + 1]);
    anchor = k + 1;
  }
  kept.push_back(segment.front());
  std::reverse(kept.begin(), kept.end());
  return kept;
}

/// Partition by mode, prune each partition, and stitch the result back.
inline ModalPath postprocess_path(const ModalPath& path, const ModalCostmap& costmap, const ElevationGrid& elev,
                                  const PlannerParams& params) {
  ModalPath out;
  out.total_g = path.total_g;
  for (const auto& seg : partition_path(path).segments) {
    const auto pruned = prune_partition(seg.waypoints, costmap, elev, params);
    out.waypoints.insert(out.waypoints.end(), pruned.begin(), pruned.end());
  }
  return out;
}

/// Geometric (3D) length of the polyline.
inline double path_length(const ModalPath& path) {
  double total = 0.0;
  for (std::size_t i = 1; i < path.waypoints.size(); ++i) {
    total += distance(path.waypoints[i - 1].position(), path.waypoints[i].position());
  }
  return total;
}

}  // namespace modalnav
