#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "modalnav/config.hpp"
#include "modalnav/costmap.hpp"
#include "modalnav/energy.hpp"
#include "modalnav/errors.hpp"
#include "modalnav/executor.hpp"
#include "modalnav/grid_io.hpp"
#include "modalnav/path_io.hpp"
#include "modalnav/perception.hpp"
#include "modalnav/planner.hpp"
#include "modalnav/postprocess.hpp"
#include "modalnav/render.hpp"

namespace modalnav {

struct RunOptions {
  bool execute = true;
  bool write_files = true;
};

struct ScenarioReport {
  ScenarioConfig config;
  ElevationGrid elevation;
  TraversabilityGrid traversability;
  ModalCostmap costmap;
  ModalPath raw_path;
  ModalPath path;  // pruned
  PlanMetrics m4;
  PlanMetrics drone;
  std::optional<ExecutionTrace> trace;
  std::vector<std::string> files;  // outputs written, in order
};

namespace detail {

// Tags any library error escaping `fn` with the pipeline stage name.
template <typename Fn>
auto run_stage(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (Error& e) {
    if (e.stage().empty()) e.set_stage(name);
    throw;
  } catch (const std::filesystem::filesystem_error& e) {
    IoError io(e.what());
    io.set_stage(name);
    throw io;
  }
}

inline void write_text_file(const std::filesystem::path& file, const std::string& body) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw IoError("cannot write `" + file.string() + "`");
  out << body;
  if (!out) throw IoError("write failed for `" + file.string() + "`");
}

}  // namespace detail

inline std::string metrics_csv(const std::string& scenario, const PlanMetrics& m4, const PlanMetrics& drone) {
  std::ostringstream out;
  write_metrics_csv_header(out);
  write_metrics_csv_row(out, scenario, "m4", m4);
  write_metrics_csv_row(out, scenario, "drone", drone);
  return out.str();
}

/// load -> fuse -> traversability -> costmap -> plan -> prune -> metrics ->
/// drone baseline -> execute -> write. Errors carry the failing stage name.
inline ScenarioReport run_scenario(const ScenarioConfig& config, const RunOptions& options = {}) {
  ScenarioReport rep;
  rep.config = config;

  rep.elevation = detail::run_stage("load", [&] { return load_heightmap(config.heightmap, config.prior_variance); });
  if (config.points) {
    detail::run_stage("fuse", [&] {
      fuse_points(rep.elevation, load_points(*config.points));
      return 0;
    });
  }
  rep.traversability =
      detail::run_stage("traversability", [&] { return compute_traversability(rep.elevation, config.traversability); });
  rep.costmap = detail::run_stage("costmap", [&] {
    return generate_costmap(rep.elevation, rep.traversability, config.planner.energy_ratio, config.inflation_radius);
  });
  rep.raw_path = detail::run_stage(
      "plan", [&] { return plan(rep.costmap, rep.elevation, config.start, config.goal, config.planner); });
  rep.path = detail::run_stage(
      "postprocess", [&] { return postprocess_path(rep.raw_path, rep.costmap, rep.elevation, config.planner); });
  rep.m4 = detail::run_stage("metrics", [&] { return plan_metrics(rep.path, config.energy); });
  rep.drone = detail::run_stage("baseline", [&] {
    return drone_baseline(rep.elevation, config.start, config.goal, config.energy, config.planner.clearance);
  });

  if (options.execute) {
    ExecutorParams ex = config.executor;
    if (!config.waypoint_tolerance_set) ex.waypoint_tolerance = rep.elevation.meta().resolution();
    rep.trace = detail::run_stage("execute", [&] { return execute(rep.path, config.energy, ex); });
  }

  if (options.write_files) {
    detail::run_stage("write", [&] {
      namespace fs = std::filesystem;
      const fs::path dir(config.output_dir);
      fs::create_directories(dir);
      auto emit = [&](const std::string& file, const std::string& body) {
        detail::write_text_file(dir / file, body);
        rep.files.push_back((dir / file).string());
      };
      std::ostringstream path_txt;
      write_path_text(path_txt, rep.path);
      emit("path.txt", path_txt.str());
      emit("path.json", path_to_json(rep.path).dump(2) + "\n");
      std::ostringstream cost_txt;
      write_grid_text(cost_txt, rep.costmap.cost);
      emit("costmap.txt", cost_txt.str());
      emit("metrics.csv", metrics_csv(config.name, rep.m4, rep.drone));
      if (rep.trace) {
        std::ostringstream trace_csv;
        write_trace_csv(trace_csv, *rep.trace);
        emit("trace.csv", trace_csv.str());
      }
      emit("costmap.ppm", encode_ppm(render_costmap(rep.costmap, &rep.path, config.render_scale)));
      return 0;
    });
  }
  return rep;
}

/// Moves waypoints lying within `tolerance` metres of a cell center exactly
/// onto it, undoing the rounding of the text export.
inline ModalPath snap_to_cell_centers(ModalPath path, const GridMeta& meta, double tolerance = 1e-5) {
  for (auto& w : path.waypoints) {
    const Vec2 u = world_to_cell_coords(w.xy(), meta);
    const CellIndex c{static_cast<int>(std::floor(u.x)), static_cast<int>(std::floor(u.y))};
    if (!meta.contains(c)) continue;
    const Vec2 center = grid_to_world(c, meta);
    if (heuristic(center, w.xy()) <= tolerance) {
      w.x = center.x;
      w.y = center.y;
    }
  }
  return path;
}

/// Checks a path against the maps it was planned on: every waypoint inside
/// the grid, flags agreeing with the costmap, ground waypoints on the surface,
/// aerial waypoints above footprint + clearance, and every same-mode edge
/// passing clear_edge. Returns human-readable problems; empty means valid.
inline std::vector<std::string> validate_path(const ModalPath& path, const ModalCostmap& costmap,
                                              const ElevationGrid& elev, const PlannerParams& params,
                                              double tolerance = 1e-6) {
  std::vector<std::string> problems;
  if (path.empty()) {
    problems.push_back("path is empty");
    return problems;
  }
  const GridMeta& meta = elev.meta();
  bool all_inside = true;
  for (std::size_t i = 0; i < path.waypoints.size(); ++i) {
    const auto& w = path.waypoints[i];
    const std::string at = "waypoint " + std::to_string(i);
    CellIndex c;
    try {
      c = world_to_grid(w.xy(), meta);
    } catch (const BoundsError&) {
      problems.push_back(at + " lies outside the map");
      all_inside = false;
      continue;
    }
    const bool aerial_cell = costmap.at(c) >= params.energy_ratio;
    if (aerial_cell != (w.flag == Locomotion::Aerial)) {
      problems.push_back(at + " is flagged " + mode_name(w.flag) + " on a " +
                         (aerial_cell ? "aerial-only" : "ground") + " cell");
    }
    if (w.flag == Locomotion::Ground) {
      const auto h = elev.try_height(c);
      if (!h) {
        problems.push_back(at + " sits on an unobserved cell");
      } else if (std::abs(*h - w.z) > tolerance) {
        problems.push_back(at + " height differs from the terrain");
      }
    } else {
      try {
        if (w.z < max_elevation_footprint(elev, c) + params.clearance - tolerance) {
          problems.push_back(at + " flies below footprint + clearance");
        }
      } catch (const UnobservedCellError&) {
        problems.push_back(at + " flies over an unobserved footprint");
      }
    }
  }
  if (!all_inside) return problems;
  for (std::size_t i = 1; i < path.waypoints.size(); ++i) {
    const auto& a = path.waypoints[i - 1];
    const auto& b = path.waypoints[i];
    if (a.flag != b.flag) continue;
    if (!clear_edge(a, b, costmap, elev, params, tolerance)) {
      problems.push_back("edge " + std::to_string(i - 1) + "-" + std::to_string(i) + " fails clear_edge");
    }
  }
  return problems;
}

}  // namespace modalnav
