#pragma once

#include <cstdint>

#include "parkour/heightfield.hpp"

namespace parkour {

namespace detail {

inline std::uint64_t noise_hash(std::uint64_t seed, std::uint64_t octave,
                                std::int64_t ix, std::int64_t iy) {
  std::uint64_t h = seed;
  h ^= 0x9e3779b97f4a7c15ULL + octave;
  h ^= static_cast<std::uint64_t>(ix) * 0xbf58476d1ce4e5b9ULL;
  h = (h ^ (h >> 31)) * 0x94d049bb133111ebULL;
  h ^= static_cast<std::uint64_t>(iy) * 0xd6e8feb86659fd93ULL;
  h = (h ^ (h >> 29)) * 0xff51afd7ed558ccdULL;
  return h ^ (h >> 32);
}

/// Lattice value in [-1, 1], deterministic in (seed, octave, lattice coords).
inline double lattice_value(std::uint64_t seed, std::uint64_t octave,
                            std::int64_t ix, std::int64_t iy) {
  const std::uint64_t h = noise_hash(seed, octave, ix, iy);
  return static_cast<double>(h >> 11) * 0x1.0p-52 - 1.0;
}

}  // namespace detail

struct FractalNoiseConfig {
  double amplitude = 0.05;   ///< first-octave amplitude, meters
  int octaves = 3;           ///< each octave halves amplitude, doubles frequency
  double wavelength = 0.4;   ///< first-octave lattice spacing, meters
};

/// Multi-octave bilinear value noise evaluated in grid space, so the result is
/// a function of node indices only: translating the field origin does not
/// change the noise a node receives. |noise| <= sum of octave amplitudes.
inline double fractal_noise_value(const FractalNoiseConfig& cfg, double cell_size,
                                  std::uint64_t seed, int node_x, int node_y) {
  double total = 0.0;
  double amp = cfg.amplitude;
  double spacing_cells = cfg.wavelength / cell_size;
  for (int o = 0; o < cfg.octaves; ++o) {
    if (spacing_cells < 1.0) spacing_cells = 1.0;
    const double gx = node_x / spacing_cells;
    const double gy = node_y / spacing_cells;
    const auto ix = static_cast<std::int64_t>(std::floor(gx));
    const auto iy = static_cast<std::int64_t>(std::floor(gy));
    const double tx = gx - ix;
    const double ty = gy - iy;
    const double v00 = detail::lattice_value(seed, o, ix, iy);
    const double v10 = detail::lattice_value(seed, o, ix + 1, iy);
    const double v01 = detail::lattice_value(seed, o, ix, iy + 1);
    const double v11 = detail::lattice_value(seed, o, ix + 1, iy + 1);
    const double v = v00 * (1 - tx) * (1 - ty) + v10 * tx * (1 - ty) +
                     v01 * (1 - tx) * ty + v11 * tx * ty;
    total += amp * v;
    amp *= 0.5;
    spacing_cells *= 0.5;
  }
  return total;
}

/// Adds fractal noise to every node. amplitude = 0 is the identity.
inline HeightField apply_fractal_noise(const HeightField& field, double amplitude,
                                       int octaves, std::uint64_t seed,
                                       double wavelength = 0.4) {
  if (amplitude < 0.0) throw ConfigError("noise amplitude must be >= 0");
  if (octaves < 1) throw ConfigError("noise octaves must be >= 1");
  if (amplitude == 0.0) return field;
  FractalNoiseConfig cfg;
  cfg.amplitude = amplitude;
  cfg.octaves = octaves;
  cfg.wavelength = wavelength;
  HeightField out = field;
  for (int iy = 0; iy < out.length; ++iy)
    for (int ix = 0; ix < out.width; ++ix)
      out.at(ix, iy) += fractal_noise_value(cfg, out.cell_size, seed, ix, iy);
  return out;
}

}  // namespace parkour
