#pragma once

#include <optional>
#include <vector>

#include "parkour/fractal_noise.hpp"
#include "parkour/obstacles.hpp"

namespace parkour {

/// Grid of obstacle cells: rows index difficulty (stacked along world x so a
/// column reads as one continuous multi-difficulty track), columns index
/// parallel lanes (along world y). Assigning the same cell twice is an
/// overlap and a construction error.
class TrackLayout {
 public:
  TrackLayout(int rows, int cols, SubtrackGeometry geom = {})
      : rows_(rows), cols_(cols), geom_(geom),
        specs_(static_cast<std::size_t>(rows) * cols),
        assigned_(static_cast<std::size_t>(rows) * cols, false) {
    if (rows < 1 || cols < 1) throw ConfigError("TrackLayout needs rows, cols >= 1");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const SubtrackGeometry& geometry() const { return geom_; }

  void set(int row, int col, const ObstacleSpec& spec) {
    const std::size_t i = index(row, col);
    if (assigned_[i])
      throw ConfigError("overlapping cells: (" + std::to_string(row) + ", " +
                        std::to_string(col) + ") assigned twice");
    specs_[i] = spec;
    assigned_[i] = true;
  }

  const ObstacleSpec& spec(int row, int col) const {
    const std::size_t i = index(row, col);
    if (!assigned_[i])
      throw ConfigError("cell (" + std::to_string(row) + ", " +
                        std::to_string(col) + ") was never assigned");
    return specs_[i];
  }

  bool complete() const {
    for (bool a : assigned_)
      if (!a) return false;
    return true;
  }

 private:
  std::size_t index(int row, int col) const {
    if (row < 0 || row >= rows_ || col < 0 || col >= cols_)
      throw ConfigError("cell index out of range");
    return static_cast<std::size_t>(row) * cols_ + col;
  }

  int rows_, cols_;
  SubtrackGeometry geom_;
  std::vector<ObstacleSpec> specs_;
  std::vector<bool> assigned_;
};

/// One assembled cell: the spec plus everything moved into world coordinates.
struct TrackCell {
  ObstacleSpec spec;
  int row = 0, col = 0;
  double origin_x = 0.0;  ///< world x of the sub-track start
  double center_y = 0.0;  ///< world y of the lane centerline
  std::vector<VirtualObstacle> virtual_obstacles;  ///< world coordinates
  SteppingTargets stepping_targets;                ///< world x positions
};

/// A stitched multi-cell terrain.
struct Track {
  HeightField field;
  int rows = 0, cols = 0;
  SubtrackGeometry geom;
  std::vector<TrackCell> cells;  ///< row-major rows x cols

  const TrackCell& cell(int row, int col) const {
    return cells[static_cast<std::size_t>(row) * cols + col];
  }

  /// Cell owning world position (x, y); cells own half-open ranges.
  const TrackCell* cell_at(double x, double y) const {
    int row = static_cast<int>(std::floor(x / geom.subtrack_length));
    int col = static_cast<int>(std::floor(y / geom.width));
    row = std::clamp(row, 0, rows - 1);
    col = std::clamp(col, 0, cols - 1);
    return &cell(row, col);
  }

  double total_length() const { return rows * geom.subtrack_length; }
};

/// Stitches every cell of the layout into one heightfield. Cell (i, j) owns
/// world x in [i*L, (i+1)*L) and y in [j*W, (j+1)*W); inside that range the
/// stitched surface equals the cell's own build at local coordinates.
inline Track assemble_track_grid(const TrackLayout& layout, std::uint64_t seed,
                                 double cell_size = 0.05) {
  if (!layout.complete())
    throw ConfigError("assemble_track_grid: layout has unassigned cells");
  const auto& geom = layout.geometry();
  const int nx = static_cast<int>(std::llround(geom.subtrack_length / cell_size));
  const int ny = static_cast<int>(std::llround(geom.width / cell_size));
  Track track;
  track.rows = layout.rows();
  track.cols = layout.cols();
  track.geom = geom;
  track.field = HeightField(layout.rows() * nx + 1, layout.cols() * ny + 1, cell_size);
  for (int i = 0; i < layout.rows(); ++i) {
    for (int j = 0; j < layout.cols(); ++j) {
      ObstacleSpec spec = layout.spec(i, j);
      if (spec.pattern_seed == 0)
        spec.pattern_seed = derive_seed(seed, static_cast<std::uint64_t>(i) * 1000 + j);
      ObstacleBuild build = build_obstacle(spec, cell_size, geom);
      TrackCell cell;
      cell.spec = spec;
      cell.row = i;
      cell.col = j;
      cell.origin_x = i * geom.subtrack_length;
      cell.center_y = (j + 0.5) * geom.width;
      for (int ly = 0; ly < build.field.length; ++ly)
        for (int lx = 0; lx < build.field.width; ++lx)
          track.field.at(i * nx + lx, j * ny + ly) = build.field.at(lx, ly);
      for (VirtualObstacle vo : build.virtual_obstacles) {
        vo.min_x += cell.origin_x;
        vo.max_x += cell.origin_x;
        vo.min_y += cell.center_y;
        vo.max_y += cell.center_y;
        cell.virtual_obstacles.push_back(vo);
      }
      for (double t : build.stepping_targets)
        cell.stepping_targets.push_back(t + cell.origin_x);
      track.cells.push_back(std::move(cell));
    }
  }
  return track;
}

/// Training grid per the row-difficulty rule: row i of `rows` gets difficulty
/// i/rows. Columns cycle through all 10 obstacle families.
inline TrackLayout make_training_layout(int rows, int cols,
                                        SubtrackGeometry geom = {}) {
  TrackLayout layout(rows, cols, geom);
  for (int j = 0; j < cols; ++j) {
    const auto kind = static_cast<ObstacleKind>(j % kNumObstacleKinds);
    for (int i = 0; i < rows; ++i) {
      const double difficulty = static_cast<double>(i) / rows;
      layout.set(i, j, make_obstacle_spec(kind, difficulty));
    }
  }
  return layout;
}

/// Evaluation track for one family: `subtracks` connected cells with linearly
/// increasing difficulty spanning the full range (last cell at difficulty 1).
inline TrackLayout make_evaluation_layout(ObstacleKind kind, int subtracks = 3,
                                          SubtrackGeometry geom = {}) {
  if (subtracks < 1) throw ConfigError("evaluation layout needs >= 1 subtracks");
  TrackLayout layout(subtracks, 1, geom);
  for (int i = 0; i < subtracks; ++i) {
    const double difficulty =
        subtracks == 1 ? 1.0 : static_cast<double>(i) / (subtracks - 1);
    layout.set(i, 0, make_obstacle_spec(kind, difficulty));
  }
  return layout;
}

/// Flat plane used by the plane-walking stage (noise added separately).
inline HeightField make_plane_field(double size_x, double size_y,
                                    double cell_size) {
  const int w = static_cast<int>(std::llround(size_x / cell_size)) + 1;
  const int l = static_cast<int>(std::llround(size_y / cell_size)) + 1;
  return HeightField(w, l, cell_size);
}

}  // namespace parkour
