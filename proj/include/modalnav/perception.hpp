#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "modalnav/errors.hpp"
#include "modalnav/grid.hpp"
#include "modalnav/grid_io.hpp"

namespace modalnav {

struct PointMeasurement {
  Vec3 position;
  double variance = 0.01;  // sensor noise on z, m^2
};

/// One-dimensional Kalman update of the cell under `m`. An unobserved cell is
/// initialised directly from the measurement.
inline CellIndex fuse_point(ElevationGrid& grid, const PointMeasurement& m) {
  if (!(m.variance > 0.0) || !std::isfinite(m.variance)) {
    throw InvalidArgument("measurement variance must be positive and finite");
  }
  if (!std::isfinite(m.position.z)) throw InvalidArgument("measurement height must be finite");
  const CellIndex idx = world_to_grid({m.position.x, m.position.y}, grid.meta());

  if (!grid.observed(idx)) {
    grid.set(idx, m.position.z, m.variance);
    return idx;
  }
  const double h = grid.height(idx);
  const double var = grid.variance(idx);
  const double denom = var + m.variance;
  const double fused_h = (m.variance * h + var * m.position.z) / denom;
  const double fused_var = (var * m.variance) / denom;
  grid.set(idx, fused_h, fused_var);
  return idx;
}

inline void fuse_points(ElevationGrid& grid, const std::vector<PointMeasurement>& points) {
  for (const auto& p : points) fuse_point(grid, p);
}

/// Point stream: one `x y z variance` line per measurement. Blank lines and
/// lines starting with '#' are skipped.
inline std::vector<PointMeasurement> parse_points(std::istream& in, const std::string& source = "<stream>") {
  std::vector<PointMeasurement> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tok = detail::split_ws(line);
    if (tok.empty() || tok.front().front() == '#') continue;
    if (tok.size() != 4) throw ParseError(source, lineno, "expected `x y z variance`");
    double v[4];
    for (int i = 0; i < 4; ++i) {
      if (!detail::parse_double(tok[i], v[i]) || std::isnan(v[i])) {
        throw ParseError(source, lineno, "non-numeric field `" + std::string(tok[i]) + "`");
      }
    }
    if (!(v[3] > 0.0)) throw ParseError(source, lineno, "variance must be positive");
    out.push_back({{v[0], v[1], v[2]}, v[3]});
  }
  return out;
}

inline std::vector<PointMeasurement> load_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open point file `" + path + "`");
  return parse_points(in, path);
}

struct TraversabilityParams {
  double max_slope = 0.35;   // rad
  double max_step = 0.08;    // m
  double slope_weight = 0.5;
  double step_weight = 0.5;
  int window = 3;            // cells, odd

  void validate() const {
    if (!(max_slope > 0.0)) throw InvalidArgument("max_slope must be positive");
    if (!(max_step > 0.0)) throw InvalidArgument("max_step must be positive");
    if (slope_weight < 0.0 || slope_weight > 1.0 || step_weight < 0.0 || step_weight > 1.0 ||
        std::abs(slope_weight + step_weight - 1.0) > 1e-9) {
      throw InvalidArgument("slope and step weights must lie in [0,1] and sum to 1");
    }
    if (window < 1 || window % 2 == 0) throw InvalidArgument("traversability window must be odd and >= 1");
  }
};

/// Surface slope (rad) at `idx` from a central-difference gradient, one-sided
/// at the map border. Returns nullopt when a stencil cell is unobserved.
inline std::optional<double> surface_slope(const ElevationGrid& grid, CellIndex idx) {
  const GridMeta& meta = grid.meta();
  const double res = meta.resolution();

  auto axis_derivative = [&](int dr, int dc) -> std::optional<double> {
    const CellIndex lo{idx.row - dr, idx.col - dc};
    const CellIndex hi{idx.row + dr, idx.col + dc};
    const bool has_lo = meta.contains(lo);
    const bool has_hi = meta.contains(hi);
    if (!has_lo && !has_hi) return 0.0;
    const CellIndex a = has_lo ? lo : idx;
    const CellIndex b = has_hi ? hi : idx;
    const auto ha = grid.try_height(a);
    const auto hb = grid.try_height(b);
    if (!ha || !hb) return std::nullopt;
    const double span = (has_lo && has_hi) ? 2.0 * res : res;
    return (*hb - *ha) / span;
  };

  const auto dx = axis_derivative(1, 0);
  const auto dy = axis_derivative(0, 1);
  if (!dx || !dy) return std::nullopt;
  return std::atan(std::hypot(*dx, *dy));
}

/// Slope and step filters combined into one ground traversability score.
/// Unobserved cells, and cells whose stencil or window touches unobserved
/// data, score 0.
inline TraversabilityGrid compute_traversability(const ElevationGrid& grid,
                                                 const TraversabilityParams& params = {}) {
  params.validate();
  const GridMeta& meta = grid.meta();
  TraversabilityGrid out(meta);
  const int half = params.window / 2;

  for (int r = 0; r < meta.rows(); ++r) {
    for (int c = 0; c < meta.cols(); ++c) {
      const CellIndex idx{r, c};
      const auto h = grid.try_height(idx);
      if (!h) continue;

      const auto slope = surface_slope(grid, idx);
      if (!slope) continue;

      double max_diff = 0.0;
      bool window_ok = true;
      for (int dr = -half; dr <= half && window_ok; ++dr) {
        for (int dc = -half; dc <= half; ++dc) {
          const CellIndex n{r + dr, c + dc};
          if (!meta.contains(n)) continue;
          const auto hn = grid.try_height(n);
          if (!hn) {
            window_ok = false;
            break;
          }
          max_diff = std::max(max_diff, std::abs(*hn - *h));
        }
      }
      if (!window_ok) continue;

      const double slope_score = std::clamp(1.0 - *slope / params.max_slope, 0.0, 1.0);
      const double step_score = std::clamp(1.0 - max_diff / params.max_step, 0.0, 1.0);
      const double score = params.slope_weight * slope_score + params.step_weight * step_score;
      out.set(idx, std::clamp(score, 0.0, 1.0));
    }
  }
  return out;
}

}  // namespace modalnav
