#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "modalnav/costmap.hpp"
#include "modalnav/energy.hpp"
#include "modalnav/errors.hpp"
#include "modalnav/executor.hpp"
#include "modalnav/grid.hpp"
#include "modalnav/grid_io.hpp"
#include "modalnav/perception.hpp"
#include "modalnav/planner.hpp"

namespace modalnav {

struct ScenarioConfig {
  std::string name = "scenario";
  std::string heightmap;                // path
  std::optional<std::string> points;    // optional point stream fused into the map
  Vec2 start;
  Vec2 goal;
  std::string output_dir = ".";
  double prior_variance = kDefaultPriorVariance;
  int inflation_radius = kDefaultInflationRadius;
  TraversabilityParams traversability;
  PlannerParams planner;  // planner.energy_ratio doubles as the costmap L_e
  EnergyModel energy;
  ExecutorParams executor;
  bool waypoint_tolerance_set = false;  // otherwise one grid cell
  int render_scale = 4;
};

/// Flat `key = value` document. '#' starts a comment line.
class KeyValues {
 public:
  static KeyValues parse(std::istream& in, const std::string& source = "<stream>") {
    KeyValues kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const std::string t = trim(line);
      if (t.empty() || t.front() == '#') continue;
      const auto eq = t.find('=');
      if (eq == std::string::npos) throw ParseError(source, lineno, "expected `key = value`");
      const std::string key = trim(t.substr(0, eq));
      if (key.empty()) throw ParseError(source, lineno, "empty key");
      kv.set(key, trim(t.substr(eq + 1)));
    }
    return kv;
  }

  /// Applies a `key=value` override.
  void set_assignment(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw InvalidArgument("override `" + assignment + "` is not key=value");
    const std::string key = trim(assignment.substr(0, eq));
    if (key.empty()) throw InvalidArgument("override `" + assignment + "` has an empty key");
    set(key, trim(assignment.substr(eq + 1)));
  }

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, std::string>& values() const noexcept { return values_; }

  std::optional<std::string> get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
  }

 private:
  std::map<std::string, std::string> values_;
};

namespace detail {

inline double config_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  if (!parse_double(v, out) || std::isnan(out)) throw InvalidArgument("config `" + key + "`: `" + v + "` is not a number");
  return out;
}

inline int config_int(const std::string& key, const std::string& v) {
  int out = 0;
  if (!parse_int(v, out)) throw InvalidArgument("config `" + key + "`: `" + v + "` is not an integer");
  return out;
}

inline bool config_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw InvalidArgument("config `" + key + "`: `" + v + "` is not a boolean");
}

inline Vec2 config_vec2(const std::string& key, const std::string& v) {
  const auto tok = split_ws(v);
  Vec2 out;
  if (tok.size() != 2 || !parse_double(tok[0], out.x) || !parse_double(tok[1], out.y) || std::isnan(out.x) ||
      std::isnan(out.y)) {
    throw InvalidArgument("config `" + key + "`: expected `x y`, got `" + v + "`");
  }
  return out;
}

inline std::string resolve_path(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path fp(p);
  if (fp.is_absolute() || base.empty()) return fp.lexically_normal().string();
  return (base / fp).lexically_normal().string();
}

}  // namespace detail

/// Builds a scenario from key/value pairs. Relative file paths resolve against
/// `base_dir`. Unknown keys are rejected.
inline ScenarioConfig scenario_from_keys(const KeyValues& kv, const std::filesystem::path& base_dir = {}) {
  using namespace detail;
  ScenarioConfig c;
  bool have_start = false, have_goal = false;
  for (const auto& [key, v] : kv.values()) {
    if (key == "name") c.name = v;
    else if (key == "heightmap") c.heightmap = resolve_path(base_dir, v);
    else if (key == "points") c.points = resolve_path(base_dir, v);
    else if (key == "output_dir") c.output_dir = resolve_path(base_dir, v);
    else if (key == "start") { c.start = config_vec2(key, v); have_start = true; }
    else if (key == "goal") { c.goal = config_vec2(key, v); have_goal = true; }
    else if (key == "heightmap.prior_variance") c.prior_variance = config_double(key, v);
    else if (key == "costmap.energy_ratio") c.planner.energy_ratio = config_double(key, v);
    else if (key == "costmap.inflation_radius") c.inflation_radius = config_int(key, v);
    else if (key == "traversability.max_slope") c.traversability.max_slope = config_double(key, v);
    else if (key == "traversability.max_step") c.traversability.max_step = config_double(key, v);
    else if (key == "traversability.slope_weight") c.traversability.slope_weight = config_double(key, v);
    else if (key == "traversability.step_weight") c.traversability.step_weight = config_double(key, v);
    else if (key == "traversability.window") c.traversability.window = config_int(key, v);
    else if (key == "planner.clearance") c.planner.clearance = config_double(key, v);
    else if (key == "planner.aerial_extra_cost") c.planner.aerial_extra_cost = config_double(key, v);
    else if (key == "planner.goal_threshold") c.planner.goal_threshold = config_double(key, v);
    else if (key == "planner.connectivity") c.planner.connectivity = config_int(key, v);
    else if (key == "planner.aerial_enabled") c.planner.aerial_enabled = config_bool(key, v);
    else if (key == "energy.drive_power") c.energy.drive_power = config_double(key, v);
    else if (key == "energy.drive_speed") c.energy.drive_speed = config_double(key, v);
    else if (key == "energy.fly_power") c.energy.fly_power = config_double(key, v);
    else if (key == "energy.fly_speed") c.energy.fly_speed = config_double(key, v);
    else if (key == "energy.morph_power") c.energy.morph_power = config_double(key, v);
    else if (key == "energy.morph_duration") c.energy.morph_duration = config_double(key, v);
    else if (key == "executor.dt") c.executor.dt = config_double(key, v);
    else if (key == "executor.k_v") c.executor.gains.k_v = config_double(key, v);
    else if (key == "executor.k_omega") c.executor.gains.k_omega = config_double(key, v);
    else if (key == "executor.max_angular_speed") c.executor.gains.max_angular_speed = config_double(key, v);
    else if (key == "executor.waypoint_tolerance") {
      c.executor.waypoint_tolerance = config_double(key, v);
      c.waypoint_tolerance_set = true;
    }
    else if (key == "executor.stall_timeout") c.executor.stall_timeout = config_double(key, v);
    else if (key == "executor.wheelbase") c.executor.wheelbase = config_double(key, v);
    else if (key == "executor.wheel_radius") c.executor.wheel_radius = config_double(key, v);
    else if (key == "render.scale") c.render_scale = config_int(key, v);
    else throw InvalidArgument("unknown config key `" + key + "`");
  }
  if (c.heightmap.empty()) throw InvalidArgument("config is missing `heightmap`");
  if (!have_start) throw InvalidArgument("config is missing `start`");
  if (!have_goal) throw InvalidArgument("config is missing `goal`");
  if (!(c.prior_variance > 0.0)) throw InvalidArgument("heightmap.prior_variance must be positive");
  if (c.inflation_radius < 0) throw InvalidArgument("costmap.inflation_radius must be non-negative");
  if (c.render_scale < 1) throw InvalidArgument("render.scale must be >= 1");
  c.traversability.validate();
  c.planner.validate();
  c.energy.validate();
  if (c.waypoint_tolerance_set) c.executor.validate();
  return c;
}

/// Reads a config file and applies `overrides` (each `key=value`) on top.
inline ScenarioConfig load_scenario_config(const std::string& file, const std::vector<std::string>& overrides = {}) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open config `" + file + "`");
  KeyValues kv = KeyValues::parse(in, file);
  for (const auto& o : overrides) kv.set_assignment(o);
  return scenario_from_keys(kv, std::filesystem::path(file).parent_path());
}

}  // namespace modalnav
