#pragma once

#include <array>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "parkour/core.hpp"
#include "parkour/heightfield.hpp"

namespace parkour {

/// The 10 parkour obstacle families.
enum class ObstacleKind {
  JumpUp,
  JumpDown,
  Leap,
  Slope,
  StairsUp,
  StairsDown,
  Hurdle,
  TiltedRamp,
  Discrete,
  Wave,
};

inline constexpr int kNumObstacleKinds = 10;

inline const char* obstacle_kind_name(ObstacleKind k) {
  switch (k) {
    case ObstacleKind::JumpUp: return "jump_up";
    case ObstacleKind::JumpDown: return "jump_down";
    case ObstacleKind::Leap: return "leap";
    case ObstacleKind::Slope: return "slope";
    case ObstacleKind::StairsUp: return "stairs_up";
    case ObstacleKind::StairsDown: return "stairs_down";
    case ObstacleKind::Hurdle: return "hurdle";
    case ObstacleKind::TiltedRamp: return "tilted_ramp";
    case ObstacleKind::Discrete: return "discrete";
    case ObstacleKind::Wave: return "wave";
  }
  return "?";
}

inline ObstacleKind obstacle_kind_from_name(const std::string& name) {
  for (int i = 0; i < kNumObstacleKinds; ++i) {
    const auto k = static_cast<ObstacleKind>(i);
    if (name == obstacle_kind_name(k)) return k;
  }
  throw ConfigError("unknown obstacle kind: " + name);
}

/// Inclusive easy..hard range of one critical parameter.
struct ParamRange {
  std::string name;  ///< e.g. "jump_height"
  double easy;
  double hard;
};

/// Training ranges of the critical parameter of each obstacle family.
/// Discrete and Wave carry declared ranges (step height / wave amplitude);
/// the remaining eight families use their published training ranges.
inline const std::vector<ParamRange>& critical_param_ranges(ObstacleKind k) {
  static const std::map<ObstacleKind, std::vector<ParamRange>> table = {
      {ObstacleKind::JumpUp, {{"jump_height", 0.2, 0.5}}},
      {ObstacleKind::JumpDown, {{"down_height", 0.1, 0.6}}},
      {ObstacleKind::Leap, {{"leap_length", 0.2, 1.2}}},
      {ObstacleKind::Slope, {{"slope_angle", 0.2, 0.42}}},
      {ObstacleKind::StairsUp,
       {{"stairs_height", 0.1, 0.3}, {"stairs_length", 0.5, 0.3}}},
      {ObstacleKind::StairsDown,
       {{"stairs_height", 0.1, 0.3}, {"stairs_length", 0.5, 0.3}}},
      {ObstacleKind::Hurdle, {{"hurdle_height", 0.05, 0.5}}},
      {ObstacleKind::TiltedRamp, {{"ramp_angle", 0.2, 0.5}}},
      {ObstacleKind::Discrete, {{"discrete_height", 0.05, 0.25}}},
      {ObstacleKind::Wave, {{"wave_amplitude", 0.05, 0.25}}},
  };
  return table.at(k);
}

/// value = (1 - row/rows) * l_easy + (row/rows) * l_hard. The full-difficulty
/// endpoint is reachable with row == rows, which evaluation layouts use.
inline double interpolate_difficulty(double range_easy, double range_hard,
                                     int row, int rows) {
  if (rows < 1) throw std::domain_error("interpolate_difficulty: rows must be >= 1");
  if (row < 0 || row > rows)
    throw std::domain_error("interpolate_difficulty: row out of [0, rows]");
  const double t = static_cast<double>(row) / rows;
  return (1.0 - t) * range_easy + t * range_hard;
}

/// One obstacle instance: a family, a difficulty fraction, and the realized
/// critical parameters. pattern_seed feeds the Discrete tile layout.
struct ObstacleSpec {
  ObstacleKind kind = ObstacleKind::Slope;
  double difficulty = 0.0;  ///< in [0, 1]
  std::map<std::string, double> critical_params;
  std::uint64_t pattern_seed = 0;

  double param(const std::string& name) const {
    auto it = critical_params.find(name);
    if (it == critical_params.end())
      throw ConfigError(std::string("missing critical param: ") + name);
    return it->second;
  }
};

/// Builds the spec for a family at a difficulty fraction: every critical
/// parameter is linearly interpolated across its range (difficulty 0 = easy
/// endpoint, 1 = hard endpoint).
inline ObstacleSpec make_obstacle_spec(ObstacleKind kind, double difficulty,
                                       std::uint64_t pattern_seed = 0) {
  if (difficulty < 0.0 || difficulty > 1.0)
    throw ConfigError("obstacle difficulty must be in [0, 1]");
  ObstacleSpec spec;
  spec.kind = kind;
  spec.difficulty = difficulty;
  spec.pattern_seed = pattern_seed;
  for (const auto& r : critical_param_ranges(kind))
    spec.critical_params[r.name] = (1.0 - difficulty) * r.easy + difficulty * r.hard;
  return spec;
}

/// Axis-aligned box with a designated penetration surface. A body point
/// inside the box penetrates by its distance past the surface plane, measured
/// along the inward direction of the face.
struct VirtualObstacle {
  enum class Face { Top };  // all spec'd obstacle boxes penalize from the top
  double min_x = 0, max_x = 0;
  double min_y = 0, max_y = 0;
  double min_z = 0, max_z = 0;
  Face surface = Face::Top;

  bool contains(double x, double y, double z) const {
    return x >= min_x && x <= max_x && y >= min_y && y <= max_y && z >= min_z &&
           z <= max_z;
  }

  /// Depth past the penetration surface, 0 if the point is outside the box.
  double penetration_depth(double x, double y, double z) const {
    if (!contains(x, y, z)) return 0.0;
    return max_z - z;  // Face::Top: inward direction is -z
  }
};

/// Recommended foothold x-positions (track-local meters), one per stair
/// tread, monotonically increasing.
using SteppingTargets = std::vector<double>;

struct SubtrackGeometry {
  double subtrack_length = 4.8;
  double start_plane_length = 1.6;
  double width = 4.0;
};

/// Result of realizing one obstacle: the sub-track heightfield in local
/// coordinates (x: 0 = sub-track start, y centered on 0), the virtual
/// obstacles bound to it and the stair stepping targets (empty elsewhere).
struct ObstacleBuild {
  HeightField field;
  std::vector<VirtualObstacle> virtual_obstacles;
  SteppingTargets stepping_targets;
};

/// Realizes the obstacle geometry of one sub-track. The start plane occupies
/// [0, start_plane_length); the obstacle block fills the rest. Heights are
/// exact (no noise); fractal noise is a separate pass.
inline ObstacleBuild build_obstacle(const ObstacleSpec& spec, double cell_size,
                                    const SubtrackGeometry& geom = {}) {
  constexpr double kHurdleThickness = 0.3;
  constexpr double kTrenchDepth = -3.0;  // deep enough to guarantee fall detection
  // Boxes attached to solids the robot legitimately stands on stop short of
  // the walking surface; only genuine clipping through the solid is counted.
  constexpr double kVirtualTopMargin = 0.06;
  auto solid_top = [&](double h) { return std::max(h - kVirtualTopMargin, 0.5 * h); };
  if (!(cell_size > 0)) throw ConfigError("cell_size must be > 0");
  if (cell_size > kHurdleThickness)
    throw ConfigError("cell_size exceeds the smallest obstacle feature (hurdle thickness)");

  const int width = static_cast<int>(std::llround(geom.subtrack_length / cell_size)) + 1;
  const int length = static_cast<int>(std::llround(geom.width / cell_size)) + 1;
  ObstacleBuild out{HeightField(width, length, cell_size, 0.0, -geom.width / 2.0), {}, {}};
  HeightField& f = out.field;

  const double x0 = geom.start_plane_length;       // obstacle block start
  const double x1 = geom.subtrack_length;          // sub-track end
  const double half_w = geom.width / 2.0;

  auto node_x = [&](int ix) { return ix * cell_size; };
  auto node_y = [&](int iy) { return f.origin_y + iy * cell_size; };
  auto fill = [&](auto&& height_fn) {
    for (int iy = 0; iy < f.length; ++iy)
      for (int ix = 0; ix < f.width; ++ix)
        f.at(ix, iy) = height_fn(node_x(ix), node_y(iy));
  };

  switch (spec.kind) {
    case ObstacleKind::JumpUp: {
      const double h = spec.param("jump_height");
      fill([&](double x, double) { return x >= x0 ? h : 0.0; });
      out.virtual_obstacles.push_back(
          {x0, x1, -half_w, half_w, 0.0, solid_top(h), VirtualObstacle::Face::Top});
      break;
    }
    case ObstacleKind::JumpDown: {
      const double h = spec.param("down_height");
      fill([&](double x, double) { return x < x0 ? h : 0.0; });
      out.virtual_obstacles.push_back(
          {0.0, x0, -half_w, half_w, 0.0, solid_top(h), VirtualObstacle::Face::Top});
      break;
    }
    case ObstacleKind::Leap: {
      const double len = spec.param("leap_length");
      const double gap_start = x0 + 0.8;  // runway before the gap
      const double gap_end = gap_start + len;
      // a node belongs to the trench when its x lies in [gap_start, gap_end)
      fill([&](double x, double) {
        return (x >= gap_start - 0.5 * cell_size && x < gap_end - 0.5 * cell_size)
                   ? kTrenchDepth
                   : 0.0;
      });
      out.virtual_obstacles.push_back({gap_start, gap_end, -half_w, half_w,
                                       kTrenchDepth, 0.0,
                                       VirtualObstacle::Face::Top});
      break;
    }
    case ObstacleKind::Slope: {
      const double a = spec.param("slope_angle");
      const double slope = std::tan(a);
      const double crest = (x0 + x1) / 2.0;
      fill([&](double x, double) {
        if (x < x0) return 0.0;
        if (x < crest) return slope * (x - x0);
        return std::max(0.0, slope * (crest - x0) - slope * (x - crest));
      });
      break;
    }
    case ObstacleKind::StairsUp: {
      const double rise = spec.param("stairs_height");
      const double run = spec.param("stairs_length");
      const int treads = static_cast<int>(std::floor((x1 - x0) / run + 1e-9));
      fill([&](double x, double) {
        if (x < x0) return 0.0;
        const int k = std::min(treads - 1,
                               static_cast<int>(std::floor((x - x0) / run + 1e-9)));
        return (k + 1) * rise;
      });
      for (int k = 0; k < treads; ++k)
        out.stepping_targets.push_back(x0 + (k + 0.5) * run);
      break;
    }
    case ObstacleKind::StairsDown: {
      const double rise = spec.param("stairs_height");
      const double run = spec.param("stairs_length");
      const int treads = static_cast<int>(std::floor((x1 - x0) / run + 1e-9));
      const double top = treads * rise;
      fill([&](double x, double) {
        if (x < x0) return top;
        const int k = std::min(treads - 1,
                               static_cast<int>(std::floor((x - x0) / run + 1e-9)));
        return top - (k + 1) * rise;
      });
      for (int k = 0; k < treads; ++k)
        out.stepping_targets.push_back(x0 + (k + 0.5) * run);
      break;
    }
    case ObstacleKind::Hurdle: {
      const double h = spec.param("hurdle_height");
      const double hx0 = x0 + 0.8;
      const double hx1 = hx0 + kHurdleThickness;
      fill([&](double x, double) {
        return (x >= hx0 - 0.5 * cell_size && x < hx1 - 0.5 * cell_size) ? h : 0.0;
      });
      // penetration surface on the top of the hurdle block
      out.virtual_obstacles.push_back(
          {hx0, hx1, -half_w, half_w, 0.0, solid_top(h), VirtualObstacle::Face::Top});
      break;
    }
    case ObstacleKind::TiltedRamp: {
      const double a = spec.param("ramp_angle");
      const double slope = std::tan(a);
      const double section = (x1 - x0) / 2.0;  // alternating lateral tilt
      fill([&](double x, double y) {
        if (x < x0) return 0.0;
        const int s = std::min(1, static_cast<int>((x - x0) / section));
        return (s == 0 ? slope : -slope) * y;
      });
      break;
    }
    case ObstacleKind::Discrete: {
      const double h = spec.param("discrete_height");
      const double tile = 0.8;
      const int tiles_x = static_cast<int>(std::ceil((x1 - x0) / tile));
      const int tiles_y = static_cast<int>(std::ceil(geom.width / tile));
      // one tile pinned at the full height so the critical dimension is realized
      std::vector<double> levels(static_cast<std::size_t>(tiles_x) * tiles_y);
      Rng rng(derive_seed(spec.pattern_seed, 0x5e7));
      for (auto& v : levels) v = h * rng.uniform();
      if (!levels.empty()) levels[levels.size() / 2] = h;
      fill([&](double x, double y) {
        if (x < x0) return 0.0;
        const int tx = std::min(tiles_x - 1, static_cast<int>((x - x0) / tile));
        const int ty = std::min(tiles_y - 1, static_cast<int>((y + half_w) / tile));
        return levels[static_cast<std::size_t>(ty) * tiles_x + tx];
      });
      break;
    }
    case ObstacleKind::Wave: {
      const double amp = spec.param("wave_amplitude");
      const double period = 1.5;
      fill([&](double x, double) {
        if (x < x0) return 0.0;
        return amp * 0.5 * (1.0 - std::cos(2.0 * kPi * (x - x0) / period));
      });
      break;
    }
  }
  return out;
}

}  // namespace parkour
