#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "modalnav/costmap.hpp"
#include "modalnav/energy.hpp"
#include "modalnav/errors.hpp"
#include "modalnav/planner.hpp"
#include "modalnav/raster.hpp"

namespace modalnav {

using Rgb = std::array<std::uint8_t, 3>;

struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // RGB, row-major

  void set(int px, int py, Rgb c) {
    if (px < 0 || py < 0 || px >= width || py >= height) return;
    const std::size_t i = (static_cast<std::size_t>(py) * width + px) * 3;
    pixels[i] = c[0];
    pixels[i + 1] = c[1];
    pixels[i + 2] = c[2];
  }
  Rgb get(int px, int py) const {
    const std::size_t i = (static_cast<std::size_t>(py) * width + px) * 3;
    return {pixels[i], pixels[i + 1], pixels[i + 2]};
  }
};

namespace detail {

inline Rgb lerp(Rgb a, Rgb b, double t) {
  Rgb out{};
  for (int k = 0; k < 3; ++k) out[k] = static_cast<std::uint8_t>(a[k] + (b[k] - a[k]) * std::clamp(t, 0.0, 1.0) + 0.5);
  return out;
}

}  // namespace detail

inline constexpr Rgb kGroundPathColor{170, 60, 255};
inline constexpr Rgb kAerialPathColor{40, 220, 70};

/// Purple for the cheapest ground cells through orange for the costliest;
/// aerial-only cells are red.
inline Rgb cost_color(double cost, double energy_ratio) {
  if (cost >= energy_ratio) return {200, 20, 20};
  const double t = cost / kGroundTraversabilityThreshold;
  if (t < 0.5) return detail::lerp({60, 10, 100}, {40, 110, 200}, t * 2.0);
  return detail::lerp({40, 110, 200}, {240, 170, 40}, (t - 0.5) * 2.0);
}

/// Heat map of the costmap, one `scale` x `scale` block per cell, with the
/// path drawn over it. Image x runs along grid columns, image y along rows.
inline Image render_costmap(const ModalCostmap& costmap, const ModalPath* path = nullptr, int scale = 4) {
  if (scale < 1) throw InvalidArgument("render scale must be >= 1");
  const GridMeta& meta = costmap.meta();
  Image img{meta.cols() * scale, meta.rows() * scale, {}};
  img.pixels.assign(static_cast<std::size_t>(img.width) * img.height * 3, 0);
  for (int r = 0; r < meta.rows(); ++r) {
    for (int c = 0; c < meta.cols(); ++c) {
      const Rgb color = cost_color(costmap.cost[{r, c}], costmap.energy_ratio);
      for (int dy = 0; dy < scale; ++dy) {
        for (int dx = 0; dx < scale; ++dx) img.set(c * scale + dx, r * scale + dy, color);
      }
    }
  }
  if (path && path->size() >= 2) {
    for (std::size_t i = 1; i < path->waypoints.size(); ++i) {
      const auto& a = path->waypoints[i - 1];
      const auto& b = path->waypoints[i];
      const Rgb color = leg_mode(a, b) == Locomotion::Aerial ? kAerialPathColor : kGroundPathColor;
      for (const auto& v : traverse_segment(a.xy(), b.xy(), meta)) {
        if (!meta.contains(v.cell)) continue;
        const int inset = scale >= 3 ? 1 : 0;
        for (int dy = inset; dy < scale - inset; ++dy) {
          for (int dx = inset; dx < scale - inset; ++dx) {
            img.set(v.cell.col * scale + dx, v.cell.row * scale + dy, color);
          }
        }
      }
    }
  }
  return img;
}

/// Binary PPM (P6).
inline std::string encode_ppm(const Image& img) {
  std::string out = "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(img.pixels.data()), img.pixels.size());
  return out;
}

inline void save_ppm(const std::string& file, const Image& img) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw IoError("cannot write `" + file + "`");
  const std::string bytes = encode_ppm(img);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for `" + file + "`");
}

}  // namespace modalnav
