#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <vector>

#include "parkour/core.hpp"
#include "parkour/heightfield.hpp"
#include "parkour/scandots.hpp"

namespace parkour {

inline constexpr int kDepthRows = 48;
inline constexpr int kDepthCols = 64;

/// Forward-depth image in meters. Row 0 is the top of the frame.
struct DepthImage {
  int rows = kDepthRows;
  int cols = kDepthCols;
  double near_clip = 0.2;
  double far_clip = 3.0;
  double timestamp = 0.0;
  std::vector<double> pixels;

  DepthImage() : pixels(static_cast<std::size_t>(kDepthRows) * kDepthCols, 0.0) {}
  DepthImage(int r, int c, double near, double far, double fill = 0.0)
      : rows(r), cols(c), near_clip(near), far_clip(far),
        pixels(static_cast<std::size_t>(r) * c, fill) {}

  double& at(int r, int c) { return pixels[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return pixels[static_cast<std::size_t>(r) * cols + c]; }
};

/// Head-mounted camera: body-frame position, mounting rpy and horizontal fov.
struct CameraExtrinsics {
  double pos_x = 0.11, pos_y = -0.0175, pos_z = 0.67;  ///< body frame, m
  double roll = 0.0;
  double pitch = 0.88;   ///< rad, positive pitches the optical axis down
  double yaw = 0.0;
  double fov_deg = 88.0; ///< horizontal field of view
};

struct FullBasePose {
  double x = 0, y = 0, z = 0;
  double roll = 0, pitch = 0, yaw = 0;
};

namespace detail {

struct Mat3 {
  double m[3][3];
  std::array<double, 3> operator*(const std::array<double, 3>& v) const {
    return {m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2]};
  }
  Mat3 operator*(const Mat3& o) const {
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        r.m[i][j] = 0;
        for (int k = 0; k < 3; ++k) r.m[i][j] += m[i][k] * o.m[k][j];
      }
    return r;
  }
};

/// Extrinsic x-y-z rotation (roll about x, then pitch about y, then yaw about z).
inline Mat3 rotation_rpy(double roll, double pitch, double yaw) {
  const double cr = std::cos(roll), sr = std::sin(roll);
  const double cp = std::cos(pitch), sp = std::sin(pitch);
  const double cy = std::cos(yaw), sy = std::sin(yaw);
  const Mat3 rx{{{1, 0, 0}, {0, cr, -sr}, {0, sr, cr}}};
  const Mat3 ry{{{cp, 0, sp}, {0, 1, 0}, {-sp, 0, cp}}};
  const Mat3 rz{{{cy, -sy, 0}, {sy, cy, 0}, {0, 0, 1}}};
  return rz * (ry * rx);
}

}  // namespace detail

/// Pinhole ray-marcher against the heightfield. For every pixel the world ray
/// is marched at half-cell steps until it crosses the surface, the hit is
/// refined by bisection, and the forward (optical-axis) depth is recorded;
/// rays that never hit within range read far_clip. A camera below the terrain
/// reads near_clip everywhere.
///
/// Camera frame: +x right in image, +y down in image, +z forward. The camera
/// is attached at the body-frame offset, then mount rpy is applied, so with
/// zero mount rotation the optical axis is the robot's +x heading.
inline DepthImage render_depth(const HeightField& field, const CameraExtrinsics& cam,
                               const FullBasePose& base, int rows = 480,
                               int cols = 640, double near_clip = 0.2,
                               double far_clip = 3.0) {
  DepthImage img(rows, cols, near_clip, far_clip);

  const detail::Mat3 base_rot = detail::rotation_rpy(base.roll, base.pitch, base.yaw);
  const auto cam_off = base_rot * std::array<double, 3>{cam.pos_x, cam.pos_y, cam.pos_z};
  const double ox = base.x + cam_off[0];
  const double oy = base.y + cam_off[1];
  const double oz = base.z + cam_off[2];

  if (height_at(field, ox, oy) >= oz) {  // degenerate but defined
    std::fill(img.pixels.begin(), img.pixels.end(), near_clip);
    return img;
  }

  // Optical axis from mount rpy: camera +z = body +x before mounting rotation.
  const detail::Mat3 mount = base_rot * detail::rotation_rpy(cam.roll, -cam.pitch, cam.yaw);
  // camera axes in world space: forward = body x, right = body -y... derived below
  const std::array<double, 3> fwd = mount * std::array<double, 3>{1, 0, 0};
  const std::array<double, 3> right = mount * std::array<double, 3>{0, -1, 0};
  const std::array<double, 3> down = mount * std::array<double, 3>{0, 0, -1};

  const double fx = (cols / 2.0) / std::tan(deg2rad(cam.fov_deg) / 2.0);
  const double cx = (cols - 1) / 2.0;
  const double cy = (rows - 1) / 2.0;

  const double march = 0.5 * field.cell_size;
  const int refinements = 10;

  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const double u = (c - cx) / fx;
      const double v = (r - cy) / fx;
      // unnormalized ray in world space; its forward component is exactly 1
      // in units of the optical axis, so ray parameter t equals z-depth.
      const std::array<double, 3> dir = {fwd[0] + u * right[0] + v * down[0],
                                         fwd[1] + u * right[1] + v * down[1],
                                         fwd[2] + u * right[2] + v * down[2]};
      const double dir_norm = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
      const double step_t = march / dir_norm;

      double depth = far_clip;
      double t_prev = 0.0;
      bool prev_above = true;
      for (double t = step_t; t <= far_clip; t += step_t) {
        const double px = ox + t * dir[0];
        const double py = oy + t * dir[1];
        const double pz = oz + t * dir[2];
        const bool above = pz > height_at(field, px, py);
        if (!above) {
          double lo = t_prev, hi = t;
          for (int i = 0; i < refinements; ++i) {
            const double mid = 0.5 * (lo + hi);
            const double mz = oz + mid * dir[2];
            if (mz > height_at(field, ox + mid * dir[0], oy + mid * dir[1]))
              lo = mid;
            else
              hi = mid;
          }
          depth = 0.5 * (lo + hi);
          break;
        }
        prev_above = above;
        t_prev = t;
      }
      (void)prev_above;
      img.at(r, c) = clamp(depth, near_clip, far_clip);
    }
  }
  return img;
}

/// Noise magnitudes of the simulated sensor pipeline.
struct DepthNoiseConfig {
  double pixel_std = 0.02;       ///< independent per-pixel Gaussian, m
  double image_std = 0.02;       ///< whole-image Gaussian offset, m
  int max_artifacts = 4;         ///< 0..max rectangles per frame
  int max_artifact_size = 8;     ///< max rectangle edge, px
  double artifact_near_prob = 0.5;  ///< near_clip vs far_clip fill
};

/// Sensor-noise bridge applied to rendered depth: clip, multi-level Gaussian
/// noise (per-pixel plus whole-image offset), random rectangular artifacts
/// snapped to near/far, re-clip. Deterministic per seed.
inline DepthImage simulate_depth_noise(const DepthImage& img, std::uint64_t seed,
                                       const DepthNoiseConfig& cfg = {}) {
  DepthImage out = img;
  Rng rng(derive_seed(seed, 0xD3A7));
  for (auto& p : out.pixels) p = clamp(p, out.near_clip, out.far_clip);
  const double image_offset = cfg.image_std > 0 ? rng.normal(0.0, cfg.image_std) : 0.0;
  if (cfg.pixel_std > 0 || cfg.image_std > 0)
    for (auto& p : out.pixels)
      p += image_offset + (cfg.pixel_std > 0 ? rng.normal(0.0, cfg.pixel_std) : 0.0);
  const int n_artifacts = cfg.max_artifacts > 0 ? rng.uniform_int(0, cfg.max_artifacts) : 0;
  for (int a = 0; a < n_artifacts; ++a) {
    const int h = rng.uniform_int(1, cfg.max_artifact_size);
    const int w = rng.uniform_int(1, cfg.max_artifact_size);
    const int r0 = rng.uniform_int(0, std::max(0, out.rows - h));
    const int c0 = rng.uniform_int(0, std::max(0, out.cols - w));
    const double value = rng.uniform() < cfg.artifact_near_prob ? out.near_clip
                                                                : out.far_clip;
    for (int r = r0; r < std::min(out.rows, r0 + h); ++r)
      for (int c = c0; c < std::min(out.cols, c0 + w); ++c)
        out.at(r, c) = value;
  }
  for (auto& p : out.pixels) p = clamp(p, out.near_clip, out.far_clip);
  return out;
}

/// Real-camera preprocessing: clip valid pixels, fill holes (value 0) from
/// the nearest valid neighbor scanning forward then in reverse (then by
/// column for fully empty rows), 3x3 median, and optional temporal blend
/// out = alpha * cur + (1 - alpha) * prev.
inline DepthImage preprocess_real_depth(const DepthImage& img,
                                        const std::optional<DepthImage>& prev,
                                        double temporal_alpha = 0.6) {
  DepthImage out = img;
  bool any_valid = false;
  for (auto& p : out.pixels) {
    if (p > 0.0) {
      p = clamp(p, out.near_clip, out.far_clip);
      any_valid = true;
    }
  }
  if (!any_valid) {
    if (!prev) throw ConfigError("preprocess_real_depth: all-hole image with no previous frame");
    DepthImage filled = *prev;
    filled.timestamp = img.timestamp;
    return filled;
  }

  // hole filling: per-row forward then reverse pass
  for (int r = 0; r < out.rows; ++r) {
    double last = 0.0;
    for (int c = 0; c < out.cols; ++c) {
      if (out.at(r, c) > 0.0) last = out.at(r, c);
      else if (last > 0.0) out.at(r, c) = last;
    }
    last = 0.0;
    for (int c = out.cols - 1; c >= 0; --c) {
      if (out.at(r, c) > 0.0) last = out.at(r, c);
      else if (last > 0.0) out.at(r, c) = last;
    }
  }
  // rows that were entirely holes: fill by column
  for (int pass = 0; pass < 2; ++pass) {
    for (int c = 0; c < out.cols; ++c) {
      double last = 0.0;
      if (pass == 0) {
        for (int r = 0; r < out.rows; ++r) {
          if (out.at(r, c) > 0.0) last = out.at(r, c);
          else if (last > 0.0) out.at(r, c) = last;
        }
      } else {
        for (int r = out.rows - 1; r >= 0; --r) {
          if (out.at(r, c) > 0.0) last = out.at(r, c);
          else if (last > 0.0) out.at(r, c) = last;
        }
      }
    }
  }

  // 3x3 median, clamped borders
  DepthImage med = out;
  for (int r = 0; r < out.rows; ++r) {
    for (int c = 0; c < out.cols; ++c) {
      std::array<double, 9> w;
      int n = 0;
      for (int dr = -1; dr <= 1; ++dr)
        for (int dc = -1; dc <= 1; ++dc)
          w[n++] = out.at(std::clamp(r + dr, 0, out.rows - 1),
                          std::clamp(c + dc, 0, out.cols - 1));
      std::nth_element(w.begin(), w.begin() + 4, w.end());
      med.at(r, c) = w[4];
    }
  }

  if (prev) {
    if (prev->rows != med.rows || prev->cols != med.cols)
      throw ContractViolation("temporal smoothing: frame size changed");
    for (std::size_t i = 0; i < med.pixels.size(); ++i)
      med.pixels[i] = temporal_alpha * med.pixels[i] +
                      (1.0 - temporal_alpha) * prev->pixels[i];
  }
  for (auto& p : med.pixels) p = clamp(p, med.near_clip, med.far_clip);
  return med;
}

/// Block-min pooling to 48x64; min keeps the nearest obstacle in each block.
inline DepthImage downsample_depth(const DepthImage& img) {
  if (img.rows % kDepthRows != 0 || img.cols % kDepthCols != 0)
    throw ConfigError("downsample_depth: resolution must be an integer multiple of 48x64");
  const int br = img.rows / kDepthRows;
  const int bc = img.cols / kDepthCols;
  DepthImage out(kDepthRows, kDepthCols, img.near_clip, img.far_clip);
  out.timestamp = img.timestamp;
  for (int r = 0; r < kDepthRows; ++r) {
    for (int c = 0; c < kDepthCols; ++c) {
      double m = img.at(r * br, c * bc);
      for (int i = 0; i < br; ++i)
        for (int j = 0; j < bc; ++j)
          m = std::min(m, img.at(r * br + i, c * bc + j));
      out.at(r, c) = m;
    }
  }
  return out;
}

/// 16-bit grayscale dump (depth x 1000, clamped) for visual debugging.
inline void save_depth_image(const DepthImage& img, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot open for write: " + path);
  os << "P5\n" << img.cols << ' ' << img.rows << "\n65535\n";
  for (int r = 0; r < img.rows; ++r) {
    for (int c = 0; c < img.cols; ++c) {
      const double mm = clamp(img.at(r, c) * 1000.0, 0.0, 65535.0);
      const auto v = static_cast<std::uint16_t>(mm + 0.5);
      const unsigned char b[2] = {static_cast<unsigned char>(v >> 8),
                                  static_cast<unsigned char>(v & 0xff)};
      os.write(reinterpret_cast<const char*>(b), 2);
    }
  }
}

}  // namespace parkour
