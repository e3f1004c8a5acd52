#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "modalnav/errors.hpp"

namespace modalnav {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline double distance(const Vec2& a, const Vec2& b) { return std::hypot(b.x - a.x, b.y - a.y); }

inline double distance(const Vec3& a, const Vec3& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double dz = b.z - a.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// Row indexes the world x axis (row 0 at minimum x), column indexes y.
struct CellIndex {
  int row = 0;
  int col = 0;

  friend bool operator==(const CellIndex&, const CellIndex&) = default;
  friend auto operator<=>(const CellIndex&, const CellIndex&) = default;
};

inline std::string to_string(const CellIndex& idx) {
  return "(" + std::to_string(idx.row) + ", " + std::to_string(idx.col) + ")";
}

/// Geometry of a regular grid. `origin` is the world position of the map
/// center; `height` is the extent along x (rows), `width` along y (cols).
class GridMeta {
 public:
  GridMeta() = default;

  static GridMeta from_cells(int rows, int cols, double resolution, Vec2 origin = {}) {
    if (!(resolution > 0.0) || !std::isfinite(resolution)) {
      throw InvalidArgument("grid resolution must be positive, got " + std::to_string(resolution));
    }
    if (rows <= 0 || cols <= 0) {
      throw InvalidArgument("grid must have at least one row and column");
    }
    GridMeta m;
    m.resolution_ = resolution;
    m.rows_ = rows;
    m.cols_ = cols;
    m.height_ = rows * resolution;
    m.width_ = cols * resolution;
    m.origin_ = origin;
    return m;
  }

  static GridMeta from_extent(double height, double width, double resolution, Vec2 origin = {}) {
    if (!(resolution > 0.0)) {
      throw InvalidArgument("grid resolution must be positive");
    }
    const auto rows = static_cast<int>(std::lround(height / resolution));
    const auto cols = static_cast<int>(std::lround(width / resolution));
    GridMeta m = from_cells(rows, cols, resolution, origin);
    m.height_ = height;
    m.width_ = width;
    return m;
  }

  double resolution() const noexcept { return resolution_; }
  double height() const noexcept { return height_; }
  double width() const noexcept { return width_; }
  Vec2 origin() const noexcept { return origin_; }
  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(rows_) * cols_; }

  bool contains(CellIndex idx) const noexcept {
    return idx.row >= 0 && idx.row < rows_ && idx.col >= 0 && idx.col < cols_;
  }

  std::size_t linear(CellIndex idx) const noexcept {
    return static_cast<std::size_t>(idx.row) * cols_ + idx.col;
  }

  CellIndex unlinear(std::size_t i) const noexcept {
    return {static_cast<int>(i / cols_), static_cast<int>(i % cols_)};
  }

  friend bool operator==(const GridMeta& a, const GridMeta& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.resolution_ == b.resolution_ &&
           a.origin_.x == b.origin_.x && a.origin_.y == b.origin_.y;
  }

 private:
  double resolution_ = 1.0;
  double height_ = 1.0;
  double width_ = 1.0;
  Vec2 origin_{};
  int rows_ = 1;
  int cols_ = 1;
};

// Continuous cell coordinates: cell (r, c) covers [r, r+1) x [c, c+1).
inline Vec2 world_to_cell_coords(const Vec2& pos, const GridMeta& meta) {
  return {(meta.height() / 2.0 + pos.x - meta.origin().x) / meta.resolution(),
          (meta.width() / 2.0 + pos.y - meta.origin().y) / meta.resolution()};
}

/// Map a world position to the cell containing it (half-open cells, floor).
inline CellIndex world_to_grid(const Vec2& pos, const GridMeta& meta) {
  // Absorbs representation error such as 10.9999999 for an exact boundary.
  constexpr double kSnap = 1e-9;
  const Vec2 u = world_to_cell_coords(pos, meta);
  if (!std::isfinite(u.x) || !std::isfinite(u.y)) {
    throw BoundsError("non-finite world position");
  }
  const CellIndex idx{static_cast<int>(std::floor(u.x + kSnap)),
                      static_cast<int>(std::floor(u.y + kSnap))};
  if (!meta.contains(idx)) {
    throw BoundsError("world position (" + std::to_string(pos.x) + ", " + std::to_string(pos.y) +
                      ") lies outside the map extent");
  }
  return idx;
}

/// World position of the cell center.
inline Vec2 grid_to_world(CellIndex idx, const GridMeta& meta) {
  if (!meta.contains(idx)) {
    throw BoundsError("cell " + to_string(idx) + " outside grid");
  }
  const double res = meta.resolution();
  return {(idx.row + 0.5) * res - meta.height() / 2.0 + meta.origin().x,
          (idx.col + 0.5) * res - meta.width() / 2.0 + meta.origin().y};
}

/// Dense row-major storage for one value per cell.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(const GridMeta& meta, T fill) : meta_(meta), data_(meta.size(), fill) {}

  const GridMeta& meta() const noexcept { return meta_; }

  T& operator[](CellIndex idx) { return data_[meta_.linear(idx)]; }
  const T& operator[](CellIndex idx) const { return data_[meta_.linear(idx)]; }

  T& at(CellIndex idx) {
    check(idx);
    return data_[meta_.linear(idx)];
  }
  const T& at(CellIndex idx) const {
    check(idx);
    return data_[meta_.linear(idx)];
  }

  std::vector<T>& values() noexcept { return data_; }
  const std::vector<T>& values() const noexcept { return data_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  void check(CellIndex idx) const {
    if (!meta_.contains(idx)) {
      throw BoundsError("cell " + to_string(idx) + " outside grid");
    }
  }

  GridMeta meta_;
  std::vector<T> data_;
};

/// 2.5D height field. Unobserved cells hold NaN height and are reported
/// through observed(); height() refuses to read them.
class ElevationGrid {
 public:
  static constexpr double kUnobserved = std::numeric_limits<double>::quiet_NaN();

  ElevationGrid() = default;
  explicit ElevationGrid(const GridMeta& meta)
      : heights_(meta, kUnobserved), variances_(meta, kUnobserved) {}

  const GridMeta& meta() const noexcept { return heights_.meta(); }

  bool observed(CellIndex idx) const { return !std::isnan(heights_.at(idx)); }

  double height(CellIndex idx) const {
    const double h = heights_.at(idx);
    if (std::isnan(h)) {
      throw UnobservedCellError("cell " + to_string(idx) + " is unobserved");
    }
    return h;
  }

  std::optional<double> try_height(CellIndex idx) const {
    const double h = heights_.at(idx);
    if (std::isnan(h)) return std::nullopt;
    return h;
  }

  double variance(CellIndex idx) const {
    if (!observed(idx)) {
      throw UnobservedCellError("cell " + to_string(idx) + " is unobserved");
    }
    return variances_.at(idx);
  }

  void set(CellIndex idx, double height, double variance) {
    if (std::isnan(height)) {
      throw InvalidArgument("use clear() to mark a cell unobserved");
    }
    if (!(variance >= 0.0)) {
      throw InvalidArgument("cell variance must be non-negative");
    }
    heights_.at(idx) = height;
    variances_.at(idx) = variance;
  }

  void clear(CellIndex idx) {
    heights_.at(idx) = kUnobserved;
    variances_.at(idx) = kUnobserved;
  }

  // Raw layers; NaN marks unobserved.
  const Grid<double>& heights() const noexcept { return heights_; }
  const Grid<double>& variances() const noexcept { return variances_; }

  /// Largest observed height, or nullopt for an empty map.
  std::optional<double> max_height() const {
    std::optional<double> best;
    for (double h : heights_.values()) {
      if (!std::isnan(h) && (!best || h > *best)) best = h;
    }
    return best;
  }

 private:
  Grid<double> heights_;
  Grid<double> variances_;
};

/// Ground traversability in [0, 1]; 0 means not traversable.
class TraversabilityGrid {
 public:
  TraversabilityGrid() = default;
  explicit TraversabilityGrid(const GridMeta& meta) : scores_(meta, 0.0) {}

  const GridMeta& meta() const noexcept { return scores_.meta(); }
  double score(CellIndex idx) const { return scores_.at(idx); }

  void set(CellIndex idx, double score) {
    if (!(score >= 0.0 && score <= 1.0)) {
      throw InvalidArgument("traversability score must lie in [0, 1]");
    }
    scores_.at(idx) = score;
  }

  const Grid<double>& scores() const noexcept { return scores_; }

 private:
  Grid<double> scores_;
};

/// Max observed height over the 2x2 block {(r,c), (r+1,c), (r,c+1), (r+1,c+1)},
/// restricted to in-bounds cells.
inline double max_elevation_footprint(const ElevationGrid& grid, CellIndex idx) {
  const GridMeta& meta = grid.meta();
  if (!meta.contains(idx)) {
    throw BoundsError("cell " + to_string(idx) + " outside grid");
  }
  std::optional<double> best;
  for (int dr = 0; dr <= 1; ++dr) {
    for (int dc = 0; dc <= 1; ++dc) {
      const CellIndex n{idx.row + dr, idx.col + dc};
      if (!meta.contains(n)) continue;
      if (auto h = grid.try_height(n); h && (!best || *h > *best)) best = h;
    }
  }
  if (!best) {
    throw UnobservedCellError("footprint of cell " + to_string(idx) + " has no observed height");
  }
  return *best;
}

}  // namespace modalnav
