#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "modalnav/costmap.hpp"
#include "modalnav/errors.hpp"
#include "modalnav/grid.hpp"
#include "modalnav/planner.hpp"

namespace modalnav {

/// Power/velocity model of the robot. Defaults: 1 W ground and 60 W aerial
/// travel at 1 m/s, 30 W over a 5 s morph.
struct EnergyModel {
  double drive_power = 1.0;    // W
  double drive_speed = 1.0;    // m/s
  double fly_power = 60.0;     // W
  double fly_speed = 1.0;      // m/s
  double morph_power = 30.0;   // W
  double morph_duration = 5.0; // s

  void validate() const {
    if (!(drive_power > 0.0 && drive_speed > 0.0 && fly_power > 0.0 && fly_speed > 0.0)) {
      throw InvalidArgument("travel powers and speeds must be positive");
    }
    if (!(morph_power >= 0.0 && morph_duration >= 0.0)) {
      throw InvalidArgument("morph power and duration must be non-negative");
    }
  }
};

inline double drive_cost_per_meter(const EnergyModel& m) { return m.drive_power / m.drive_speed; }
inline double fly_cost_per_meter(const EnergyModel& m) { return m.fly_power / m.fly_speed; }
// Constant power over the morph duration.
inline double morph_cost(const EnergyModel& m) { return m.morph_power * m.morph_duration; }

struct PlanMetrics {
  double energy = 0.0;  // J
  double time = 0.0;    // s
  double length = 0.0;  // m
  int morph_count = 0;
  double ground_length = 0.0;
  double aerial_length = 0.0;
};

/// A leg is flown when either end is an aerial waypoint (take-off and landing
/// legs included).
inline Locomotion leg_mode(const ModalWaypoint& from, const ModalWaypoint& to) {
  return (from.flag == Locomotion::Aerial || to.flag == Locomotion::Aerial) ? Locomotion::Aerial
                                                                             : Locomotion::Ground;
}

inline int count_mode_changes(const ModalPath& path) {
  int n = 0;
  for (std::size_t i = 1; i < path.waypoints.size(); ++i) {
    if (path.waypoints[i].flag != path.waypoints[i - 1].flag) ++n;
  }
  return n;
}

inline PlanMetrics plan_metrics(const ModalPath& path, const EnergyModel& model = {}) {
  model.validate();
  PlanMetrics out;
  for (std::size_t i = 1; i < path.waypoints.size(); ++i) {
    const auto& a = path.waypoints[i - 1];
    const auto& b = path.waypoints[i];
    const double d = distance(a.position(), b.position());
    if (leg_mode(a, b) == Locomotion::Aerial) {
      out.aerial_length += d;
    } else {
      out.ground_length += d;
    }
  }
  out.morph_count = count_mode_changes(path);
  out.length = out.ground_length + out.aerial_length;
  out.energy = out.ground_length * drive_cost_per_meter(model) + out.aerial_length * fly_cost_per_meter(model) +
               out.morph_count * morph_cost(model);
  out.time = out.ground_length / model.drive_speed + out.aerial_length / model.fly_speed +
             out.morph_count * model.morph_duration;
  return out;
}

/// Drone-only comparator: climb to the highest observed terrain plus
/// clearance, fly straight over the goal, descend.
inline PlanMetrics drone_baseline(const ElevationGrid& elev, const Vec2& start, const Vec2& goal,
                                  const EnergyModel& model = {}, double clearance = 0.5) {
  model.validate();
  if (!(clearance >= 0.0)) throw InvalidArgument("clearance must be non-negative");
  const GridMeta& meta = elev.meta();
  const CellIndex s = world_to_grid(start, meta);
  const CellIndex g = world_to_grid(goal, meta);
  const auto top = elev.max_height();
  if (!top) throw UnobservedCellError("elevation map has no observed cells");
  const double cruise = *top + clearance;
  const double start_z = elev.try_height(s).value_or(*top);
  const double goal_z = elev.try_height(g).value_or(*top);

  PlanMetrics out;
  const double climb = cruise - start_z;
  const double descent = cruise - goal_z;
  out.aerial_length = climb + heuristic(start, goal) + descent;
  out.length = out.aerial_length;
  out.energy = out.length * fly_cost_per_meter(model);
  out.time = out.length / model.fly_speed;
  return out;
}

}  // namespace modalnav
