#pragma once

// Direct reading of the inflation rule: every cell takes the largest obstacle
// value (cost strictly above L_e) found within the square radius, or keeps
// its own cost if that is larger.

#include <algorithm>
#include <cstdlib>
#include <vector>

namespace oracle {

inline std::vector<double> inflate(const std::vector<double>& raw, int rows, int cols, double energy_ratio,
                                   int radius) {
  std::vector<double> out(raw);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      for (int sr = 0; sr < rows; ++sr) {
        for (int sc = 0; sc < cols; ++sc) {
          if (std::abs(sr - r) > radius || std::abs(sc - c) > radius) continue;
          const double v = raw[sr * cols + sc];
          if (v > energy_ratio) out[r * cols + c] = std::max(out[r * cols + c], v);
        }
      }
    }
  }
  return out;
}

}  // namespace oracle
