#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "parkour/core.hpp"

namespace parkour {

/// Regular grid of terrain elevations. Row-major storage: index = iy * width + ix,
/// where ix runs along world x and iy along world y. Queries outside the grid
/// clamp to the nearest edge cell.
struct HeightField {
  double origin_x = 0.0;  ///< world x of node (0, 0), meters
  double origin_y = 0.0;  ///< world y of node (0, 0), meters
  double cell_size = 0.05;
  int width = 2;   ///< node count along x
  int length = 2;  ///< node count along y
  std::vector<double> heights;

  HeightField() : heights(4, 0.0) {}

  HeightField(int w, int l, double cell, double ox = 0.0, double oy = 0.0,
              double fill = 0.0)
      : origin_x(ox), origin_y(oy), cell_size(cell), width(w), length(l),
        heights(static_cast<std::size_t>(w) * l, fill) {
    if (w < 2 || l < 2) throw ConfigError("HeightField needs width/length >= 2");
    if (!(cell > 0.0)) throw ConfigError("HeightField cell_size must be > 0");
  }

  double& at(int ix, int iy) {
    return heights[static_cast<std::size_t>(iy) * width + ix];
  }
  double at(int ix, int iy) const {
    return heights[static_cast<std::size_t>(iy) * width + ix];
  }

  double x_extent() const { return (width - 1) * cell_size; }
  double y_extent() const { return (length - 1) * cell_size; }

  double node_clamped(int ix, int iy) const {
    ix = std::clamp(ix, 0, width - 1);
    iy = std::clamp(iy, 0, length - 1);
    return at(ix, iy);
  }
};

/// Bilinear interpolation of the four surrounding nodes; clamps at edges.
inline double height_at(const HeightField& f, double x, double y) {
  const double gx = (x - f.origin_x) / f.cell_size;
  const double gy = (y - f.origin_y) / f.cell_size;
  const double cx = clamp(gx, 0.0, static_cast<double>(f.width - 1));
  const double cy = clamp(gy, 0.0, static_cast<double>(f.length - 1));
  int ix = static_cast<int>(std::floor(cx));
  int iy = static_cast<int>(std::floor(cy));
  if (ix >= f.width - 1) ix = f.width - 2;
  if (iy >= f.length - 1) iy = f.length - 2;
  const double tx = cx - ix;
  const double ty = cy - iy;
  const double h00 = f.at(ix, iy);
  const double h10 = f.at(ix + 1, iy);
  const double h01 = f.at(ix, iy + 1);
  const double h11 = f.at(ix + 1, iy + 1);
  return h00 * (1 - tx) * (1 - ty) + h10 * tx * (1 - ty) +
         h01 * (1 - tx) * ty + h11 * tx * ty;
}

/// Writes the portable grid format:
///   HFIELD v1 width length cell_size origin_x origin_y
/// followed by row-major ASCII floats (one grid row per line).
inline void save_heightfield(const HeightField& f, std::ostream& os) {
  os << "HFIELD v1 " << f.width << ' ' << f.length << ' ' << f.cell_size << ' '
     << f.origin_x << ' ' << f.origin_y << '\n';
  os.precision(9);
  for (int iy = 0; iy < f.length; ++iy) {
    for (int ix = 0; ix < f.width; ++ix) {
      if (ix) os << ' ';
      os << f.at(ix, iy);
    }
    os << '\n';
  }
}

inline void save_heightfield(const HeightField& f, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open for write: " + path);
  save_heightfield(f, os);
}

inline HeightField load_heightfield(std::istream& is) {
  std::string magic, version;
  is >> magic >> version;
  if (magic != "HFIELD" || version != "v1")
    throw DataCorruptionError("not a HFIELD v1 stream");
  int w = 0, l = 0;
  double cell = 0, ox = 0, oy = 0;
  is >> w >> l >> cell >> ox >> oy;
  if (!is || w < 2 || l < 2 || !(cell > 0))
    throw DataCorruptionError("bad HFIELD header");
  HeightField f(w, l, cell, ox, oy);
  for (auto& h : f.heights) {
    is >> h;
    if (!is) throw DataCorruptionError("truncated HFIELD data");
  }
  return f;
}

inline HeightField load_heightfield(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw DataCorruptionError("cannot open: " + path);
  return load_heightfield(is);
}

/// Grayscale dump for documentation: 16-bit binary PGM, min-max normalized.
inline void save_heightfield_image(const HeightField& f, const std::string& path) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double h : f.heights) {
    lo = std::min(lo, h);
    hi = std::max(hi, h);
  }
  const double span = (hi > lo) ? (hi - lo) : 1.0;
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot open for write: " + path);
  os << "P5\n" << f.width << ' ' << f.length << "\n65535\n";
  for (int iy = 0; iy < f.length; ++iy) {
    for (int ix = 0; ix < f.width; ++ix) {
      const double t = (f.at(ix, iy) - lo) / span;
      const auto v = static_cast<std::uint16_t>(t * 65535.0 + 0.5);
      // PGM data is big-endian
      const unsigned char b[2] = {static_cast<unsigned char>(v >> 8),
                                  static_cast<unsigned char>(v & 0xff)};
      os.write(reinterpret_cast<const char*>(b), 2);
    }
  }
}

}  // namespace parkour
