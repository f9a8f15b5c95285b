#pragma once

#include <array>
#include <vector>

#include "parkour/heightfield.hpp"

namespace parkour {

inline constexpr int kScandotLateral = 11;
inline constexpr int kScandotForward = 19;
inline constexpr int kScandotCount = kScandotLateral * kScandotForward;  // 209

/// Fixed body-frame sampling offsets of the scandot pattern. 11 lateral rows
/// (0.1 m spacing, centered) by 19 forward columns (0.15 m spacing, starting
/// 0.1 m behind the base), identical for every robot.
struct ScandotLayout {
  double lateral_spacing = 0.1;
  double forward_spacing = 0.15;
  double forward_start = -0.1;

  /// Body-frame (x, y) of dot (lat, fwd). Values are flattened lat-major:
  /// index = lat * kScandotForward + fwd.
  std::pair<double, double> offset(int lat, int fwd) const {
    const double y = (lat - (kScandotLateral - 1) / 2.0) * lateral_spacing;
    const double x = forward_start + fwd * forward_spacing;
    return {x, y};
  }
};

/// 11 x 19 terrain elevations relative to the robot base.
struct ScandotGrid {
  std::array<double, kScandotCount> values{};

  double at(int lat, int fwd) const { return values[lat * kScandotForward + fwd]; }
};

struct BasePose2d {
  double x = 0.0, y = 0.0, z = 0.0;
  double yaw = 0.0;
};

/// Samples terrain heights at the yaw-rotated scandot offsets and subtracts
/// the base height, yielding relative elevations.
inline ScandotGrid sample_scandots(const HeightField& field, const BasePose2d& base,
                                   const ScandotLayout& layout = {}) {
  ScandotGrid grid;
  const double c = std::cos(base.yaw);
  const double s = std::sin(base.yaw);
  for (int lat = 0; lat < kScandotLateral; ++lat) {
    for (int fwd = 0; fwd < kScandotForward; ++fwd) {
      const auto [bx, by] = layout.offset(lat, fwd);
      const double wx = base.x + c * bx - s * by;
      const double wy = base.y + s * bx + c * by;
      grid.values[lat * kScandotForward + fwd] = height_at(field, wx, wy) - base.z;
    }
  }
  return grid;
}

}  // namespace parkour
