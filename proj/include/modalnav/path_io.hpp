#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "modalnav/energy.hpp"
#include "modalnav/errors.hpp"
#include "modalnav/executor.hpp"
#include "modalnav/grid_io.hpp"
#include "modalnav/planner.hpp"
#include "modalnav/postprocess.hpp"

namespace modalnav {

// ---- path text: one `x y z flag` line per waypoint, flag in {G, A} ----

inline void write_path_text(std::ostream& out, const ModalPath& path) {
  for (const auto& w : path.waypoints) {
    out << detail::format_fixed6(w.x) << ' ' << detail::format_fixed6(w.y) << ' ' << detail::format_fixed6(w.z)
        << ' ' << flag_char(w.flag) << '\n';
  }
}

inline ModalPath parse_path_text(std::istream& in, const std::string& source = "<stream>") {
  ModalPath path;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tok = detail::split_ws(line);
    if (tok.empty() || tok.front().front() == '#') continue;
    if (tok.size() != 4) throw ParseError(source, lineno, "expected `x y z flag`");
    double v[3];
    for (int i = 0; i < 3; ++i) {
      if (!detail::parse_double(tok[i], v[i]) || std::isnan(v[i])) {
        throw ParseError(source, lineno, "non-numeric field `" + std::string(tok[i]) + "`");
      }
    }
    Locomotion flag;
    if (tok[3] == "G") {
      flag = Locomotion::Ground;
    } else if (tok[3] == "A") {
      flag = Locomotion::Aerial;
    } else {
      throw ParseError(source, lineno, "flag must be G or A");
    }
    path.waypoints.push_back({v[0], v[1], v[2], flag});
  }
  return path;
}

inline void save_path_text(const std::string& file, const ModalPath& path) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot write `" + file + "`");
  write_path_text(out, path);
}

inline ModalPath load_path_text(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open path file `" + file + "`");
  return parse_path_text(in, file);
}

inline nlohmann::json path_to_json(const ModalPath& path) {
  nlohmann::json j;
  j["total_cost"] = path.total_g;
  j["waypoints"] = nlohmann::json::array();
  for (const auto& w : path.waypoints) {
    j["waypoints"].push_back({{"x", w.x}, {"y", w.y}, {"z", w.z}, {"mode", mode_name(w.flag)}});
  }
  const auto part = partition_path(path);
  j["segments"] = nlohmann::json::array();
  for (std::size_t i = 0; i < part.segments.size(); ++i) {
    const auto& s = part.segments[i];
    j["segments"].push_back(
        {{"mode", mode_name(s.mode)}, {"first", s.first_index}, {"last", part.boundaries[i]}});
  }
  return j;
}

// ---- CSV reports ----

inline void write_metrics_csv_header(std::ostream& out) { out << "scenario,agent,energy_J,time_s,length_m,morphs\n"; }

inline void write_metrics_csv_row(std::ostream& out, const std::string& scenario, const std::string& agent,
                                  const PlanMetrics& m) {
  out << scenario << ',' << agent << ',' << detail::format_fixed6(m.energy) << ','
      << detail::format_fixed6(m.time) << ',' << detail::format_fixed6(m.length) << ',' << m.morph_count << '\n';
}

inline void write_trace_csv(std::ostream& out, const ExecutionTrace& trace) {
  out << "t,x,y,z,theta,mode,energy_J,event\n";
  for (const auto& e : trace.events) {
    const auto& s = e.state;
    out << detail::format_fixed6(e.timestamp) << ',' << detail::format_fixed6(s.x) << ','
        << detail::format_fixed6(s.y) << ',' << detail::format_fixed6(s.z) << ',' << detail::format_fixed6(s.theta)
        << ',' << to_string(s.mode) << ',' << detail::format_fixed6(s.energy_spent) << ',' << to_string(e.kind)
        << '\n';
  }
}

}  // namespace modalnav
