#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "modalnav/modalnav.hpp"

using namespace modalnav;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "modalnav_scenario" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

ScenarioConfig fixture_config(const std::string& name, const fs::path& dir) {
  const auto f = fixtures::by_name(name);
  ScenarioConfig c;
  c.name = name;
  c.heightmap = (dir / (name + ".txt")).string();
  save_heightmap(c.heightmap, f.elevation);
  c.start = f.start;
  c.goal = f.goal;
  c.output_dir = (dir / "out").string();
  return c;
}

}  // namespace

TEST(Scenario, StepNeedsTwoFlightsAndBeatsDrone) {
  const auto rep = run_scenario(fixture_config("step", scratch("step")));
  EXPECT_GE(count_segments(rep.path, Locomotion::Aerial), 2u);
  EXPECT_LT(rep.m4.energy, rep.drone.energy);
  ASSERT_TRUE(rep.trace);
  EXPECT_TRUE(rep.trace->complete());
  EXPECT_EQ(rep.m4.morph_count, 4);
}

TEST(Scenario, EnclosureUnreachableOnGroundOnly) {
  auto cfg = fixture_config("enclosure", scratch("enclosure"));
  const auto rep = run_scenario(cfg, {.execute = false, .write_files = false});
  EXPECT_LT(rep.m4.energy, rep.drone.energy);
  cfg.planner.aerial_enabled = false;
  try {
    run_scenario(cfg);
    FAIL() << "expected no path";
  } catch (const NoPathError& e) {
    EXPECT_EQ(e.stage(), "plan");
    EXPECT_NE(std::string(e.what()).find("[plan]"), std::string::npos);
  }
}

TEST(Scenario, MazeStaysOnTheGround) {
  const auto rep = run_scenario(fixture_config("maze", scratch("maze")), {.execute = false, .write_files = false});
  EXPECT_EQ(rep.m4.morph_count, 0);
  EXPECT_LT(rep.m4.energy, 0.2 * rep.drone.energy);
  for (const auto& w : rep.raw_path.waypoints) EXPECT_EQ(w.flag, Locomotion::Ground);
}

TEST(Scenario, HillyIsGroundOnly) {
  const auto rep = run_scenario(fixture_config("hilly", scratch("hilly")), {.execute = false, .write_files = false});
  EXPECT_EQ(rep.m4.morph_count, 0);
  EXPECT_LT(rep.m4.energy, rep.drone.energy);
}

TEST(Scenario, WritesAllReports) {
  const auto dir = scratch("files");
  const auto rep = run_scenario(fixture_config("step", dir));
  for (const char* f : {"path.txt", "path.json", "costmap.txt", "metrics.csv", "trace.csv", "costmap.ppm"}) {
    EXPECT_TRUE(fs::exists(dir / "out" / f)) << f;
  }
  EXPECT_EQ(rep.files.size(), 6u);
  const auto metrics = slurp(dir / "out" / "metrics.csv");
  EXPECT_EQ(metrics.substr(0, metrics.find('\n')), "scenario,agent,energy_J,time_s,length_m,morphs");
  EXPECT_NE(metrics.find("\nstep,m4,"), std::string::npos);
  EXPECT_NE(metrics.find("\nstep,drone,"), std::string::npos);
  const auto trace = slurp(dir / "out" / "trace.csv");
  EXPECT_EQ(trace.substr(0, trace.find('\n')), "t,x,y,z,theta,mode,energy_J,event");
  EXPECT_NE(trace.find("PATH_COMPLETE"), std::string::npos);
  const auto json = nlohmann::json::parse(slurp(dir / "out" / "path.json"));
  EXPECT_EQ(json["waypoints"].size(), rep.path.size());
  EXPECT_EQ(json["segments"].size(), partition_path(rep.path).segments.size());
  const auto ppm = slurp(dir / "out" / "costmap.ppm");
  EXPECT_EQ(ppm.substr(0, 3), "P6\n");
  EXPECT_EQ(ppm.size(), std::string("P6\n400 400\n255\n").size() + 400u * 400u * 3u);
}

TEST(Scenario, CsvOutputsAreReproducible) {
  const auto dir_a = scratch("repro_a"), dir_b = scratch("repro_b");
  auto a = fixture_config("step", dir_a);
  auto b = fixture_config("step", dir_b);
  run_scenario(a);
  run_scenario(b);
  EXPECT_EQ(slurp(dir_a / "out" / "metrics.csv"), slurp(dir_b / "out" / "metrics.csv"));
  EXPECT_EQ(slurp(dir_a / "out" / "trace.csv"), slurp(dir_b / "out" / "trace.csv"));
  EXPECT_EQ(slurp(dir_a / "out" / "path.txt"), slurp(dir_b / "out" / "path.txt"));
}

TEST(Scenario, EmittedPathsValidateOnReload) {
  for (const char* name : {"hilly", "step", "enclosure", "maze"}) {
    const auto dir = scratch(std::string("reload_") + name);
    const auto cfg = fixture_config(name, dir);
    const auto rep = run_scenario(cfg, {.execute = false, .write_files = true});
    const auto elev = load_heightmap(cfg.heightmap);
    const auto cm = generate_costmap(elev, compute_traversability(elev));
    const auto path = snap_to_cell_centers(load_path_text((dir / "out" / "path.txt").string()), elev.meta());
    ASSERT_EQ(path.size(), rep.path.size());
    const auto problems = validate_path(path, cm, elev, cfg.planner);
    EXPECT_TRUE(problems.empty()) << name << ": " << (problems.empty() ? "" : problems.front());
  }
}

TEST(Scenario, StageNamesOnFailure) {
  auto cfg = fixture_config("step", scratch("stages"));
  cfg.heightmap += ".missing";
  try {
    run_scenario(cfg);
    FAIL();
  } catch (const IoError& e) {
    EXPECT_EQ(e.stage(), "load");
  }
  cfg = fixture_config("step", scratch("stages2"));
  cfg.start = {-9.9, 0.1};
  cfg.goal = {50.0, 0.0};
  try {
    run_scenario(cfg);
    FAIL();
  } catch (const BoundsError& e) {
    EXPECT_EQ(e.stage(), "plan");
  }
  const auto dir3 = scratch("stages3");
  cfg = fixture_config("step", dir3);
  cfg.points = (dir3 / "none.pts").string();
  try {
    run_scenario(cfg);
    FAIL();
  } catch (const IoError& e) {
    EXPECT_EQ(e.stage(), "fuse");
  }
}

TEST(Scenario, PointStreamIsFused) {
  const auto dir = scratch("points");
  auto cfg = fixture_config("step", dir);
  cfg.points = (dir / "pts.txt").string();
  std::ofstream(*cfg.points) << "-8.1 0.1 0.0 0.01\n-8.1 0.1 0.0 0.01\n";
  const auto rep = run_scenario(cfg, {.execute = false, .write_files = false});
  const auto idx = world_to_grid({-8.1, 0.1}, rep.elevation.meta());
  EXPECT_LT(rep.elevation.variance(idx), kDefaultPriorVariance);
}

TEST(Validate, FlagsBrokenPaths) {
  const auto f = fixtures::step();
  const auto cm = generate_costmap(f.elevation, compute_traversability(f.elevation));
  const PlannerParams p;
  EXPECT_FALSE(validate_path({}, cm, f.elevation, p).empty());
  // Straight ground line through the block.
  const ModalPath through{{{f.start.x, f.start.y, 0.0, Locomotion::Ground}, {f.goal.x, f.goal.y, 0.0, Locomotion::Ground}},
                          0.0};
  EXPECT_FALSE(validate_path(through, cm, f.elevation, p).empty());
  const ModalPath outside{{{50.0, 0.0, 0.0, Locomotion::Ground}}, 0.0};
  EXPECT_FALSE(validate_path(outside, cm, f.elevation, p).empty());
  const ModalPath low{{{0.1, 0.1, 1.6, Locomotion::Aerial}}, 0.0};
  const auto problems = validate_path(low, cm, f.elevation, p);
  ASSERT_FALSE(problems.empty());
}

TEST(Fixtures, ScenarioFilesMatchGenerators) {
  for (const auto& f : fixtures::all()) {
    const fs::path file = fs::path(MODALNAV_SCENARIOS) / (f.name + ".txt");
    ASSERT_TRUE(fs::exists(file)) << file;
    EXPECT_EQ(slurp(file), serialize_heightmap(f.elevation)) << f.name;
    const auto cfg = load_scenario_config((fs::path(MODALNAV_SCENARIOS) / (f.name + ".cfg")).string());
    EXPECT_NEAR(cfg.start.x, f.start.x, 1e-9);
    EXPECT_NEAR(cfg.goal.y, f.goal.y, 1e-9);
  }
  EXPECT_THROW(fixtures::by_name("volcano"), InvalidArgument);
}

TEST(Render, ColorsAndOverlay) {
  const ModalCostmap cm{Grid<double>(GridMeta::from_cells(2, 3, 1.0), 0.0), 60.0, 0, {}};
  auto map = cm;
  map.cost[{0, 2}] = 60.5;
  map.cost[{1, 0}] = 0.5;
  const ModalPath p{{{-0.5, -1.0, 0.0, Locomotion::Ground}, {-0.5, 0.0, 0.0, Locomotion::Ground}}, 0.0};
  const auto img = render_costmap(map, &p, 1);
  EXPECT_EQ(img.width, 3);
  EXPECT_EQ(img.height, 2);
  EXPECT_EQ(img.get(2, 0), cost_color(60.5, 60.0));
  EXPECT_EQ(img.get(0, 0), kGroundPathColor);
  EXPECT_EQ(img.get(1, 0), kGroundPathColor);
  EXPECT_EQ(img.get(0, 1), cost_color(0.5, 60.0));
  const auto red = cost_color(61.0, 60.0);
  const auto purple = cost_color(0.0, 60.0);
  EXPECT_GT(red[0], red[2]);
  EXPECT_GT(purple[2], purple[1]);
  EXPECT_THROW(render_costmap(map, nullptr, 0), InvalidArgument);
}

TEST(PathText, RoundTripAndErrors) {
  const ModalPath p{{{1.0, -2.0, 0.5, Locomotion::Ground}, {1.25, 3.0, 2.0, Locomotion::Aerial}}, 0.0};
  std::ostringstream out;
  write_path_text(out, p);
  EXPECT_EQ(out.str(), "1.000000 -2.000000 0.500000 G\n1.250000 3.000000 2.000000 A\n");
  std::istringstream in(out.str());
  EXPECT_EQ(parse_path_text(in).waypoints, p.waypoints);
  std::istringstream bad("1 2 3 X\n");
  EXPECT_THROW(parse_path_text(bad), ParseError);
  std::istringstream short_line("1 2 G\n");
  EXPECT_THROW(parse_path_text(short_line), ParseError);
}
