#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "modalnav/energy.hpp"
#include "modalnav/errors.hpp"
#include "modalnav/planner.hpp"

namespace modalnav {

enum class RobotMode { Ground, Aerial, Morphing };

inline const char* to_string(RobotMode m) {
  switch (m) {
    case RobotMode::Ground: return "ground";
    case RobotMode::Aerial: return "aerial";
    case RobotMode::Morphing: return "morphing";
  }
  return "?";
}

inline RobotMode robot_mode(Locomotion m) { return m == Locomotion::Ground ? RobotMode::Ground : RobotMode::Aerial; }

struct RobotState {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double theta = 0.0;  // rad
  RobotMode mode = RobotMode::Ground;
  double morph_remaining = 0.0;  // s, while morphing
  double odometer = 0.0;         // m
  double clock = 0.0;            // s
  double energy_spent = 0.0;     // J

  Vec2 xy() const { return {x, y}; }
  Vec3 position() const { return {x, y, z}; }
};

enum class TraceEventKind { SegmentStart, WaypointReached, MorphStart, MorphEnd, PathComplete };

inline const char* to_string(TraceEventKind k) {
  switch (k) {
    case TraceEventKind::SegmentStart: return "SEGMENT_START";
    case TraceEventKind::WaypointReached: return "WAYPOINT_REACHED";
    case TraceEventKind::MorphStart: return "MORPH_START";
    case TraceEventKind::MorphEnd: return "MORPH_END";
    case TraceEventKind::PathComplete: return "PATH_COMPLETE";
  }
  return "?";
}

struct TraceEvent {
  double timestamp = 0.0;
  RobotState state;
  TraceEventKind kind = TraceEventKind::SegmentStart;
  std::size_t waypoint = 0;  // waypoint the event refers to
};

struct ExecutionTrace {
  std::vector<TraceEvent> events;
  RobotState final_state;

  bool complete() const { return !events.empty() && events.back().kind == TraceEventKind::PathComplete; }
};

class ExecutionError : public Error {
 public:
  ExecutionError(std::string message, ExecutionTrace partial)
      : Error(std::move(message)), partial_(std::move(partial)) {}

  const ExecutionTrace& partial_trace() const noexcept { return partial_; }

 private:
  ExecutionTrace partial_;
};

struct ControlGains {
  double k_v = 2.0;                // 1/s
  double k_omega = 2.0;            // 1/s
  double max_angular_speed = 2.0;  // rad/s
};

struct VelocityCommand {
  double v = 0.0;      // m/s
  double omega = 0.0;  // rad/s
};

struct WheelCommand {
  double left = 0.0;   // rad/s
  double right = 0.0;  // rad/s
};

inline double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * std::numbers::pi);
  return a;
}

/// Proportional heading/speed law for the differential drive. Forward speed is
/// held at zero while the target is at or beyond 90 degrees off the heading.
inline VelocityCommand diff_drive_control(const RobotState& state, const Vec2& target, const ControlGains& gains,
                                          double max_speed) {
  const double dx = target.x - state.x;
  const double dy = target.y - state.y;
  const double dist = std::hypot(dx, dy);
  if (dist < 1e-12) return {};
  const double err = wrap_angle(std::atan2(dy, dx) - state.theta);
  VelocityCommand cmd;
  cmd.omega = std::clamp(gains.k_omega * err, -gains.max_angular_speed, gains.max_angular_speed);
  cmd.v = std::abs(err) >= std::numbers::pi / 2.0 ? 0.0 : std::min(max_speed, gains.k_v * dist);
  return cmd;
}

inline WheelCommand wheel_commands(double v, double omega, double wheelbase, double wheel_radius) {
  return {(v - omega * wheelbase / 2.0) / wheel_radius, (v + omega * wheelbase / 2.0) / wheel_radius};
}

struct ExecutorParams {
  double dt = 0.02;                 // s (50 Hz)
  ControlGains gains;
  double waypoint_tolerance = 0.1;  // m
  double stall_timeout = 10.0;      // s without progress
  double wheelbase = 0.4;           // m
  double wheel_radius = 0.1;        // m

  void validate() const {
    if (!(dt > 0.0)) throw InvalidArgument("executor time step must be positive");
    if (!(waypoint_tolerance > 0.0)) throw InvalidArgument("waypoint tolerance must be positive");
    if (!(stall_timeout > 0.0)) throw InvalidArgument("stall timeout must be positive");
    if (!(wheelbase > 0.0 && wheel_radius > 0.0)) throw InvalidArgument("wheel geometry must be positive");
    if (!(gains.k_v > 0.0 && gains.k_omega > 0.0 && gains.max_angular_speed > 0.0)) {
      throw InvalidArgument("controller gains must be positive");
    }
  }
};

namespace detail {

class Simulation {
 public:
  Simulation(const ModalPath& path, const EnergyModel& model, const ExecutorParams& params)
      : path_(path), model_(model), params_(params) {}

  ExecutionTrace run() {
    const auto& wps = path_.waypoints;
    if (wps.empty()) return trace_;

    const auto& first = wps.front();
    state_.x = first.x;
    state_.y = first.y;
    state_.z = first.z;
    state_.mode = robot_mode(first.flag);
    for (std::size_t i = 1; i < wps.size(); ++i) {
      if (heuristic(first.xy(), wps[i].xy()) > 1e-9) {
        state_.theta = std::atan2(wps[i].y - first.y, wps[i].x - first.x);
        break;
      }
    }

    emit(TraceEventKind::SegmentStart, 0);
    for (std::size_t k = 0; k + 1 < wps.size(); ++k) {
      const RobotMode needed = robot_mode(leg_mode(wps[k], wps[k + 1]));
      if (state_.mode != needed) {
        morph(needed, k);
        emit(TraceEventKind::SegmentStart, k);
      }
      if (needed == RobotMode::Ground) {
        drive_to(wps[k], wps[k + 1], k + 1);
      } else {
        fly_to(wps[k + 1]);
      }
      emit(TraceEventKind::WaypointReached, k + 1);

      // Landed on a ground waypoint.
      if (wps[k + 1].flag == Locomotion::Ground && state_.mode == RobotMode::Aerial) {
        morph(RobotMode::Ground, k + 1);
        if (k + 2 < wps.size()) emit(TraceEventKind::SegmentStart, k + 1);
      }
    }
    emit(TraceEventKind::PathComplete, wps.size() - 1);
    trace_.final_state = state_;
    return trace_;
  }

 private:
  void emit(TraceEventKind kind, std::size_t waypoint) {
    trace_.events.push_back({state_.clock, state_, kind, waypoint});
  }

  [[noreturn]] void fail(const std::string& why) {
    trace_.final_state = state_;
    throw ExecutionError(why, trace_);
  }

  void morph(RobotMode to, std::size_t waypoint) {
    const double start = state_.clock;
    state_.mode = RobotMode::Morphing;
    state_.morph_remaining = model_.morph_duration;
    emit(TraceEventKind::MorphStart, waypoint);
    while (state_.morph_remaining > 0.0) {
      const double step = std::min(params_.dt, state_.morph_remaining);
      state_.morph_remaining -= step;
      state_.energy_spent += model_.morph_power * step;
      state_.clock += step;
    }
    state_.morph_remaining = 0.0;
    state_.clock = start + model_.morph_duration;
    state_.mode = to;
    emit(TraceEventKind::MorphEnd, waypoint);
  }

  void drive_to(const ModalWaypoint& from, const ModalWaypoint& target, std::size_t index) {
    const double dt = params_.dt;
    const double leg = heuristic(from.xy(), target.xy());
    double best = heuristic(state_.xy(), target.xy());
    double last_progress = state_.clock;
    while (true) {
      const double dist = heuristic(state_.xy(), target.xy());
      if (dist <= params_.waypoint_tolerance) return;
      if (dist < best - 1e-6) {
        best = dist;
        last_progress = state_.clock;
      } else if (state_.clock - last_progress > params_.stall_timeout) {
        fail("ground follower stalled before waypoint " + std::to_string(index));
      }
      const VelocityCommand cmd = diff_drive_control(state_, target.xy(), params_.gains, model_.drive_speed);
      state_.x += cmd.v * std::cos(state_.theta) * dt;
      state_.y += cmd.v * std::sin(state_.theta) * dt;
      state_.theta = wrap_angle(state_.theta + cmd.omega * dt);
      // Height follows the terrain profile of the leg.
      const double progress = leg > 0.0 ? std::clamp(1.0 - heuristic(state_.xy(), target.xy()) / leg, 0.0, 1.0) : 1.0;
      state_.z = from.z + progress * (target.z - from.z);
      state_.odometer += cmd.v * dt;
      if (cmd.v != 0.0 || cmd.omega != 0.0) state_.energy_spent += model_.drive_power * dt;
      state_.clock += dt;
    }
  }

  // Constant-speed straight line; the last step is shortened to land exactly.
  void fly_to(const ModalWaypoint& target) {
    const Vec3 goal = target.position();
    while (true) {
      const double dist = distance(state_.position(), goal);
      if (dist <= 1e-12) return;
      const double step = std::min(model_.fly_speed * params_.dt, dist);
      const double frac = step / dist;
      const double dx = goal.x - state_.x;
      const double dy = goal.y - state_.y;
      if (std::hypot(dx, dy) > 1e-12) state_.theta = std::atan2(dy, dx);
      state_.x += dx * frac;
      state_.y += dy * frac;
      state_.z += (goal.z - state_.z) * frac;
      if (step == dist) {
        state_.x = goal.x;
        state_.y = goal.y;
        state_.z = goal.z;
      }
      const double elapsed = step / model_.fly_speed;
      state_.odometer += step;
      state_.energy_spent += model_.fly_power * elapsed;
      state_.clock += elapsed;
    }
  }

  const ModalPath& path_;
  const EnergyModel& model_;
  const ExecutorParams& params_;
  RobotState state_;
  ExecutionTrace trace_;
};

}  // namespace detail

/// Steps the robot through the mode-tagged waypoints. Ground legs run the
/// differential-drive P-law with unicycle integration; aerial legs follow a
/// straight line at fly speed; every mode change dwells for the morph duration.
inline ExecutionTrace execute(const ModalPath& path, const EnergyModel& model = {},
                              const ExecutorParams& params = {}) {
  model.validate();
  params.validate();
  return detail::Simulation(path, model, params).run();
}

}  // namespace modalnav
