#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>

#include "c3d/c3d.hpp"

namespace c3d::test {

inline RgbImage constant_image(int w, int h, float r, float g, float b) {
  RgbImage img(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) img.set_pixel(x, y, r, g, b);
  return img;
}

inline RgbImage random_image(int w, int h, std::uint64_t seed) {
  Rng rng(seed, 1);
  RgbImage img(w, h);
  for (float& v : img.values()) v = static_cast<float>(rng.uniform());
  return img;
}

// Smooth random texture: a few sinusoids, so blur changes it measurably
// without saturating SSIM.
inline RgbImage texture_image(int w, int h, std::uint64_t seed) {
  Rng rng(seed, 2);
  RgbImage img(w, h);
  double fx[3], fy[3], ph[3];
  for (int k = 0; k < 3; ++k) {
    fx[k] = rng.uniform(0.1, 0.6);
    fy[k] = rng.uniform(0.1, 0.6);
    ph[k] = rng.uniform(0.0, 6.28);
  }
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      float c[3];
      for (int k = 0; k < 3; ++k) c[k] = static_cast<float>(0.5 + 0.4 * std::sin(fx[k] * x + fy[k] * y + ph[k]));
      img.set_pixel(x, y, c[0], c[1], c[2]);
    }
  return img;
}

inline DepthMap constant_depth(int w, int h, float d) { return DepthMap(w, h, d); }

// Left half at `left`, right half at `right`.
inline DepthMap split_depth(int w, int h, float left, float right) {
  DepthMap d(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) d.set(x, y, x < w / 2 ? left : right);
  return d;
}

inline double region_l1(const RgbImage& a, const RgbImage& b, int x0, int x1, int y0, int y1) {
  double s = 0.0;
  std::size_t n = 0;
  for (int y = y0; y < y1; ++y)
    for (int x = x0; x < x1; ++x)
      for (int c = 0; c < 3; ++c) {
        s += std::abs(static_cast<double>(a.at(x, y, c)) - b.at(x, y, c));
        ++n;
      }
  return s / static_cast<double>(n);
}

inline double max_abs_diff(const RgbImage& a, const RgbImage& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i)
    m = std::max(m, std::abs(static_cast<double>(a.values()[i]) - b.values()[i]));
  return m;
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("c3d_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Two fronto-parallel planes: top half at `near_d`, bottom half at `far_d`,
// black with one white pixel per plane at (dot_x, h/4) and (dot_x, 3h/4).
struct ParallaxScene {
  RgbImage image;
  DepthMap depth;
  CameraIntrinsics intrinsics;
  int dot_x;
};

inline ParallaxScene parallax_scene(int w, int h, float near_d, float far_d, int dot_x) {
  ParallaxScene s{RgbImage(w, h), DepthMap(w, h), default_intrinsics(w, h), dot_x};
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) s.depth.set(x, y, y < h / 2 ? near_d : far_d);
  s.image.set_pixel(dot_x, h / 4, 1, 1, 1);
  s.image.set_pixel(dot_x, 3 * h / 4, 1, 1, 1);
  return s;
}

// Constant-velocity x translation from the identity pose.
inline Trajectory x_trajectory(double extent, int n_frames) {
  Trajectory t{{}, MotionMode::xy};
  for (int k = 0; k < n_frames; ++k) {
    Pose p;
    p.translation.x = n_frames > 1 ? extent * k / (n_frames - 1) : 0.0;
    t.poses.push_back(p);
  }
  return t;
}

// Streak length of the blurred dot in rows [y0, y1): intensity-weighted
// standard deviation of x, which is proportional to the travel distance.
inline double streak_spread(const RgbImage& img, int y0, int y1) {
  double s = 0, sx = 0, sxx = 0;
  for (int y = y0; y < y1; ++y)
    for (int x = 0; x < img.width(); ++x) {
      const double v = img.at(x, y, 0);
      s += v;
      sx += v * x;
      sxx += v * x * x;
    }
  const double mean = sx / s;
  return std::sqrt(std::max(0.0, sxx / s - mean * mean));
}

// Ratio of near-plane to far-plane streak length under x camera motion.
inline double parallax_ratio(float near_d, float far_d, double near_travel_px) {
  const int w = 160, h = 96;
  const ParallaxScene s = parallax_scene(w, h, near_d, far_d, 110);
  const double extent = near_travel_px * near_d / s.intrinsics.fx;
  const RgbImage out = motion_blur(s.image, s.depth, s.intrinsics, x_trajectory(extent, 10));
  return streak_spread(out, 0, h / 2) / streak_spread(out, h / 2, h);
}

}  // namespace c3d::test
