#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "modalnav/errors.hpp"
#include "modalnav/grid.hpp"
#include "modalnav/grid_io.hpp"

namespace modalnav {

inline constexpr double kDefaultModeEnergyRatio = 60.0;
inline constexpr int kDefaultInflationRadius = 2;
inline constexpr double kGroundTraversabilityThreshold = 0.5;
inline constexpr double kElevationCostScale = 0.01;

/// Multimodal locomotion costmap. Ground-reachable cells cost 1 - traversability
/// (at most 0.5); aerial-only cells cost at least `energy_ratio`.
struct ModalCostmap {
  Grid<double> cost;
  double energy_ratio = kDefaultModeEnergyRatio;  // L_e
  int inflation_radius = kDefaultInflationRadius;
  // Pre-inflation cost of each cell that seeded inflation (cost above L_e),
  // 0 elsewhere. Empty until the map has been inflated once; re-inflation
  // reuses these seeds, which makes inflate() idempotent.
  std::vector<double> inflation_seeds;

  const GridMeta& meta() const noexcept { return cost.meta(); }
  double at(CellIndex idx) const { return cost.at(idx); }
  bool aerial_only(CellIndex idx) const { return cost.at(idx) >= energy_ratio; }
  bool inflated() const noexcept { return !inflation_seeds.empty(); }

  friend bool operator==(const ModalCostmap&, const ModalCostmap&) = default;
};

/// Per-cell modal cost before inflation. Unobserved cells are aerial-only with
/// no elevation term.
inline ModalCostmap modal_costs(const ElevationGrid& elev, const TraversabilityGrid& trav,
                                double energy_ratio = kDefaultModeEnergyRatio,
                                int inflation_radius = kDefaultInflationRadius) {
  if (!(elev.meta() == trav.meta())) {
    throw DimensionError("elevation and traversability grids differ in geometry");
  }
  if (!(energy_ratio > kGroundTraversabilityThreshold) || !std::isfinite(energy_ratio)) {
    throw InvalidArgument("mode energy ratio must be finite and exceed the ground cost range");
  }
  if (inflation_radius < 0) throw InvalidArgument("inflation radius must be non-negative");

  const GridMeta& meta = elev.meta();
  ModalCostmap out{Grid<double>(meta, 0.0), energy_ratio, inflation_radius, {}};
  for (std::size_t i = 0; i < meta.size(); ++i) {
    const CellIndex idx = meta.unlinear(i);
    const double t = trav.score(idx);
    if (t < kGroundTraversabilityThreshold) {
      const double e = elev.try_height(idx).value_or(0.0);
      out.cost[idx] = energy_ratio + e * kElevationCostScale;
    } else {
      out.cost[idx] = 1.0 - t;
    }
  }
  return out;
}

/// Raise every cell in the square neighborhood of each obstacle cell (cost
/// strictly above L_e) to at least that obstacle's cost.
inline ModalCostmap inflate(ModalCostmap map) {
  const GridMeta& meta = map.meta();
  if (map.inflation_seeds.empty()) {
    map.inflation_seeds.assign(meta.size(), 0.0);
    for (std::size_t i = 0; i < meta.size(); ++i) {
      const double v = map.cost.values()[i];
      if (v > map.energy_ratio) map.inflation_seeds[i] = v;
    }
  }
  const int rad = map.inflation_radius;
  for (std::size_t i = 0; i < meta.size(); ++i) {
    const double value = map.inflation_seeds[i];
    if (value == 0.0) continue;
    const CellIndex c = meta.unlinear(i);
    for (int r = std::max(0, c.row - rad); r <= std::min(meta.rows() - 1, c.row + rad); ++r) {
      for (int k = std::max(0, c.col - rad); k <= std::min(meta.cols() - 1, c.col + rad); ++k) {
        double& cell = map.cost[{r, k}];
        if (cell < value) cell = value;
      }
    }
  }
  return map;
}

inline ModalCostmap generate_costmap(const ElevationGrid& elev, const TraversabilityGrid& trav,
                                     double energy_ratio = kDefaultModeEnergyRatio,
                                     int inflation_radius = kDefaultInflationRadius) {
  return inflate(modal_costs(elev, trav, energy_ratio, inflation_radius));
}

inline void save_costmap(const std::string& path, const ModalCostmap& map) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write `" + path + "`");
  write_grid_text(out, map.cost);
  if (!out) throw IoError("write failed for `" + path + "`");
}

/// Reads a costmap export. The file carries costs only, so the mode energy
/// ratio must be supplied.
inline ModalCostmap load_costmap(const std::string& path, double energy_ratio = kDefaultModeEnergyRatio) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open costmap `" + path + "`");
  GridText text = parse_grid_text(in, path);
  for (double v : text.values.values()) {
    if (std::isnan(v)) throw IoError("costmap `" + path + "` contains nan cells");
  }
  return {std::move(text.values), energy_ratio, 0, {}};
}

}  // namespace modalnav
