#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "modalnav/errors.hpp"
#include "modalnav/grid.hpp"
#include "modalnav/grid_io.hpp"

namespace modalnav::fixtures {

// All fixtures: 20 x 20 m at 0.2 m, centered on the world origin.
inline constexpr int kCells = 100;
inline constexpr double kResolution = 0.2;

struct Fixture {
  std::string name;
  ElevationGrid elevation;
  Vec2 start;
  Vec2 goal;
};

namespace detail {

inline ElevationGrid flat(double prior_variance) {
  ElevationGrid g(GridMeta::from_cells(kCells, kCells, kResolution));
  for (int r = 0; r < kCells; ++r) {
    for (int c = 0; c < kCells; ++c) g.set({r, c}, 0.0, prior_variance);
  }
  return g;
}

inline void fill(ElevationGrid& g, int r0, int r1, int c0, int c1, double h, double prior_variance) {
  for (int r = r0; r <= r1; ++r) {
    for (int c = c0; c <= c1; ++c) g.set({r, c}, h, prior_variance);
  }
}

// World center of cell index i along either axis.
inline double center(int i) { return (i + 0.5) * kResolution - kCells * kResolution / 2.0; }

}  // namespace detail

/// Full-width 1.5 m block for x in [-2, 2): there is no ground route around it,
/// so the robot has to fly up onto it and again off it.
inline Fixture step(double prior_variance = kDefaultPriorVariance) {
  Fixture f{"step", detail::flat(prior_variance), {detail::center(9), detail::center(50)},
            {detail::center(90), detail::center(50)}};
  detail::fill(f.elevation, 40, 59, 0, kCells - 1, 1.5, prior_variance);
  return f;
}

/// Goal inside a 1 m tall square wall around (4.1, 4.1). Each side has a
/// one-cell gap, narrower than the inflated wall band.
inline Fixture enclosure(double prior_variance = kDefaultPriorVariance) {
  Fixture f{"enclosure", detail::flat(prior_variance), {detail::center(10), detail::center(10)},
            {detail::center(70), detail::center(70)}};
  constexpr int lo = 58, hi = 82, mid = 70;
  for (int i = lo; i <= hi; ++i) {
    if (i == mid) continue;
    f.elevation.set({lo, i}, 1.0, prior_variance);
    f.elevation.set({hi, i}, 1.0, prior_variance);
    f.elevation.set({i, lo}, 1.0, prior_variance);
    f.elevation.set({i, hi}, 1.0, prior_variance);
  }
  return f;
}

/// Three 1 m walls across x with openings at alternating ends. The first
/// wall carries a thick 2.4 m block whose flat top is a landable roof.
inline Fixture maze(double prior_variance = kDefaultPriorVariance) {
  Fixture f{"maze", detail::flat(prior_variance), {detail::center(9), detail::center(50)},
            {detail::center(90), detail::center(50)}};
  constexpr int gap = 12;
  detail::fill(f.elevation, 30, 30, 0, kCells - 1 - gap, 1.0, prior_variance);
  detail::fill(f.elevation, 24, 35, 34, 45, 1.0, prior_variance);
  detail::fill(f.elevation, 50, 50, gap, kCells - 1, 1.0, prior_variance);
  detail::fill(f.elevation, 70, 70, 0, kCells - 1 - gap, 1.0, prior_variance);
  return f;
}

/// Smooth bumps plus one steep hill near the diagonal.
inline Fixture hilly(double prior_variance = kDefaultPriorVariance) {
  Fixture f{"hilly", detail::flat(prior_variance), {detail::center(9), detail::center(9)},
            {detail::center(90), detail::center(90)}};
  struct Bump {
    double x, y, amp, sigma;
  };
  const std::vector<Bump> bumps{{-5.0, 3.0, 0.4, 2.5}, {3.0, -4.0, 0.4, 2.5}, {6.0, 5.0, 0.3, 2.5},
                                {-3.0, -6.0, 0.3, 2.5}, {0.5, 0.5, 1.2, 1.0}};
  for (int r = 0; r < kCells; ++r) {
    for (int c = 0; c < kCells; ++c) {
      const double x = detail::center(r), y = detail::center(c);
      double h = 0.0;
      for (const auto& b : bumps) {
        const double d2 = (x - b.x) * (x - b.x) + (y - b.y) * (y - b.y);
        h += b.amp * std::exp(-d2 / (2.0 * b.sigma * b.sigma));
      }
      f.elevation.set({r, c}, h, prior_variance);
    }
  }
  return f;
}

inline std::vector<Fixture> all(double prior_variance = kDefaultPriorVariance) {
  return {hilly(prior_variance), step(prior_variance), enclosure(prior_variance), maze(prior_variance)};
}

inline Fixture by_name(const std::string& name, double prior_variance = kDefaultPriorVariance) {
  if (name == "hilly") return hilly(prior_variance);
  if (name == "step") return step(prior_variance);
  if (name == "enclosure") return enclosure(prior_variance);
  if (name == "maze") return maze(prior_variance);
  throw InvalidArgument("unknown fixture `" + name + "`");
}

}  // namespace modalnav::fixtures
