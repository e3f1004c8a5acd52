#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "modalnav/modalnav.hpp"

namespace {

namespace mn = modalnav;

constexpr int kExitOk = 0;
constexpr int kExitNoPath = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInvalid = 3;

struct ConfigArgs {
  std::string file;
  std::vector<std::string> overrides;
};

void add_config_args(CLI::App* cmd, ConfigArgs& args) {
  cmd->add_option("config", args.file, "scenario config (key = value)")->required();
  cmd->add_option("--set", args.overrides, "override a config entry, key=value")->allow_extra_args(false);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

void print_metrics_table(const std::string& scenario, const mn::PlanMetrics& m4, const mn::PlanMetrics& drone) {
  std::printf("%-12s %-6s %12s %10s %10s %7s\n", "scenario", "agent", "energy [J]", "time [s]", "length [m]",
              "morphs");
  std::printf("%-12s %-6s %12.2f %10.2f %10.2f %7d\n", scenario.c_str(), "m4", m4.energy, m4.time, m4.length,
              m4.morph_count);
  std::printf("%-12s %-6s %12.2f %10.2f %10.2f %7d\n", scenario.c_str(), "drone", drone.energy, drone.time,
              drone.length, drone.morph_count);
  if (drone.energy > 0.0) std::printf("energy ratio m4/drone: %s\n", fmt("%.4f", m4.energy / drone.energy).c_str());
}

void print_outputs(const mn::ScenarioReport& rep) {
  for (const auto& f : rep.files) std::printf("wrote %s\n", f.c_str());
}

int cmd_plan(const ConfigArgs& args) {
  const auto cfg = mn::load_scenario_config(args.file, args.overrides);
  const auto rep = mn::run_scenario(cfg, {.execute = false, .write_files = true});
  std::printf("%s: %zu waypoints (%zu before pruning), %zu aerial segment(s), %d morph(s), energy %.2f J\n",
              cfg.name.c_str(), rep.path.size(), rep.raw_path.size(),
              mn::count_segments(rep.path, mn::Locomotion::Aerial), rep.m4.morph_count, rep.m4.energy);
  print_outputs(rep);
  return kExitOk;
}

int cmd_simulate(const ConfigArgs& args) {
  const auto cfg = mn::load_scenario_config(args.file, args.overrides);
  const auto rep = mn::run_scenario(cfg);
  const auto& fin = rep.trace->final_state;
  std::printf("%s: executed %zu waypoints in %.2f s, %.2f J (plan: %.2f s, %.2f J)\n", cfg.name.c_str(),
              rep.path.size(), fin.clock, fin.energy_spent, rep.m4.time, rep.m4.energy);
  print_outputs(rep);
  return kExitOk;
}

int cmd_compare(const ConfigArgs& args, bool csv) {
  const auto cfg = mn::load_scenario_config(args.file, args.overrides);
  const auto rep = mn::run_scenario(cfg, {.execute = false, .write_files = false});
  if (csv) {
    std::cout << mn::metrics_csv(cfg.name, rep.m4, rep.drone);
  } else {
    print_metrics_table(cfg.name, rep.m4, rep.drone);
  }
  return kExitOk;
}

int cmd_costmap(const ConfigArgs& args, const std::string& out, int loops, double rate) {
  const auto cfg = mn::load_scenario_config(args.file, args.overrides);
  if (loops < 1) throw mn::InvalidArgument("--loop must be >= 1");
  if (!(rate > 0.0)) throw mn::InvalidArgument("--rate must be positive");
  const auto period = std::chrono::duration<double>(1.0 / rate);
  for (int i = 0; i < loops; ++i) {
    const auto tick = std::chrono::steady_clock::now();
    auto elev = mn::load_heightmap(cfg.heightmap, cfg.prior_variance);
    if (cfg.points) mn::fuse_points(elev, mn::load_points(*cfg.points));
    const auto trav = mn::compute_traversability(elev, cfg.traversability);
    const auto cm = mn::generate_costmap(elev, trav, cfg.planner.energy_ratio, cfg.inflation_radius);
    mn::save_costmap(out, cm);
    std::printf("published %s (%d/%d)\n", out.c_str(), i + 1, loops);
    std::fflush(stdout);
    if (i + 1 < loops) std::this_thread::sleep_until(tick + period);
  }
  return kExitOk;
}

int cmd_render(const std::string& costmap_file, const std::string& path_file, const std::string& out,
               double energy_ratio, int scale) {
  const auto cm = mn::load_costmap(costmap_file, energy_ratio);
  const auto path = mn::load_path_text(path_file);
  mn::save_ppm(out, mn::render_costmap(cm, &path, scale));
  std::printf("wrote %s\n", out.c_str());
  return kExitOk;
}

int cmd_validate(const std::string& path_file, const std::string& heightmap, const std::string& config_file,
                 const std::vector<std::string>& overrides) {
  // Map-processing parameters come from an optional config; start/goal are
  // irrelevant here, so placeholders satisfy the parser.
  mn::KeyValues kv;
  if (!config_file.empty()) {
    std::ifstream in(config_file);
    if (!in) throw mn::IoError("cannot open config `" + config_file + "`");
    kv = mn::KeyValues::parse(in, config_file);
  }
  for (const auto& o : overrides) kv.set_assignment(o);
  kv.set("heightmap", heightmap);
  if (!kv.has("start")) kv.set("start", "0 0");
  if (!kv.has("goal")) kv.set("goal", "0 0");
  const auto cfg = mn::scenario_from_keys(kv);

  const auto elev = mn::load_heightmap(cfg.heightmap, cfg.prior_variance);
  const auto trav = mn::compute_traversability(elev, cfg.traversability);
  const auto cm = mn::generate_costmap(elev, trav, cfg.planner.energy_ratio, cfg.inflation_radius);
  const auto path = mn::snap_to_cell_centers(mn::load_path_text(path_file), elev.meta());
  const auto problems = mn::validate_path(path, cm, elev, cfg.planner);
  if (problems.empty()) {
    std::printf("%s: valid (%zu waypoints)\n", path_file.c_str(), path.size());
    return kExitOk;
  }
  for (const auto& p : problems) std::fprintf(stderr, "%s: %s\n", path_file.c_str(), p.c_str());
  return kExitInvalid;
}

int cmd_make_fixtures(const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& f : mn::fixtures::all()) {
    const std::string file = (std::filesystem::path(dir) / (f.name + ".txt")).string();
    mn::save_heightmap(file, f.elevation);
    std::printf("wrote %s (start %.2f %.2f, goal %.2f %.2f)\n", file.c_str(), f.start.x, f.start.y, f.goal.x,
                f.goal.y);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-aware multimodal (drive/fly) path planning on 2.5D heightmaps"};
  app.require_subcommand(1);

  ConfigArgs plan_args, sim_args, cmp_args, cost_args;
  auto* plan = app.add_subcommand("plan", "plan and prune a path, write path/costmap/metrics/render files");
  add_config_args(plan, plan_args);

  auto* sim = app.add_subcommand("simulate", "plan, then run the kinematic executor and write the trace");
  add_config_args(sim, sim_args);

  bool csv = false;
  auto* cmp = app.add_subcommand("compare", "multimodal plan vs drone-only baseline");
  add_config_args(cmp, cmp_args);
  cmp->add_flag("--csv", csv, "print CSV instead of a table");

  std::string cost_out = "costmap.txt";
  int loops = 1;
  double rate = 1.0;
  auto* cost = app.add_subcommand("costmap", "build and publish the costmap, optionally in a loop");
  add_config_args(cost, cost_args);
  cost->add_option("-o,--output", cost_out, "costmap file");
  cost->add_option("--loop", loops, "number of publications");
  cost->add_option("--rate", rate, "publication rate in Hz");

  std::string r_cost, r_path, r_out;
  double r_ratio = mn::kDefaultModeEnergyRatio;
  int r_scale = 4;
  auto* render = app.add_subcommand("render", "render a costmap with a path overlay to binary PPM");
  render->add_option("costmap", r_cost, "costmap text file")->required();
  render->add_option("path", r_path, "path text file")->required();
  render->add_option("out", r_out, "output .ppm")->required();
  render->add_option("--energy-ratio", r_ratio, "cost at or above which a cell is aerial-only");
  render->add_option("--scale", r_scale, "pixels per cell");

  std::string v_path, v_map, v_config;
  std::vector<std::string> v_overrides;
  auto* validate = app.add_subcommand("validate", "check a path file against a heightmap");
  validate->add_option("path", v_path, "path text file")->required();
  validate->add_option("heightmap", v_map, "heightmap text file")->required();
  validate->add_option("--config", v_config, "config supplying map-processing parameters");
  validate->add_option("--set", v_overrides, "override a config entry, key=value")->allow_extra_args(false);

  std::string fx_dir;
  auto* fx = app.add_subcommand("make-fixtures", "write the built-in test heightmaps");
  fx->add_option("dir", fx_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*plan) return cmd_plan(plan_args);
    if (*sim) return cmd_simulate(sim_args);
    if (*cmp) return cmd_compare(cmp_args, csv);
    if (*cost) return cmd_costmap(cost_args, cost_out, loops, rate);
    if (*render) return cmd_render(r_cost, r_path, r_out, r_ratio, r_scale);
    if (*validate) return cmd_validate(v_path, v_map, v_config, v_overrides);
    if (*fx) return cmd_make_fixtures(fx_dir);
  } catch (const mn::NoPathError& e) {
    std::fprintf(stderr, "no path: %s\n", e.what());
    return kExitNoPath;
  } catch (const mn::ExecutionError& e) {
    std::fprintf(stderr, "execution failed: %s\n", e.what());
    return kExitInvalid;
  } catch (const mn::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  return kExitConfig;
}
