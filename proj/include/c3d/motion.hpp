#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "c3d/camera.hpp"
#include "c3d/depth.hpp"
#include "c3d/image.hpp"
#include "c3d/rng.hpp"

namespace c3d {

// Rigid camera motion: the camera sits at `translation` with orientation
// `rotation` (row-major, camera-to-reference).
struct Pose {
  std::array<double, 9> rotation{1, 0, 0, 0, 1, 0, 0, 0, 1};
  Vec3 translation{};

  static Pose identity() { return {}; }

  bool is_identity() const {
    return rotation == std::array<double, 9>{1, 0, 0, 0, 1, 0, 0, 0, 1} && translation.x == 0.0 &&
           translation.y == 0.0 && translation.z == 0.0;
  }

  // Reference-frame point expressed in this camera's frame: R^T (p - t).
  Vec3 to_camera(const Vec3& p) const {
    const double x = p.x - translation.x, y = p.y - translation.y, z = p.z - translation.z;
    const auto& r = rotation;
    return {r[0] * x + r[3] * y + r[6] * z, r[1] * x + r[4] * y + r[7] * z, r[2] * x + r[5] * y + r[8] * z};
  }
};

enum class MotionMode { xy, z };

struct Trajectory {
  std::vector<Pose> poses;
  MotionMode mode = MotionMode::xy;
};

struct MotionParams {
  double extent = 0.0;  // total camera travel, meters
  int n_frames = 10;
  MotionMode mode = MotionMode::xy;
};

// Constant-velocity straight line from the identity pose. xy: direction is a
// random in-plane unit vector; z: forward or backward along the optical axis.
inline Trajectory make_trajectory(MotionMode mode, double extent, int n_frames, Rng& rng) {
  if (!(extent >= 0.0)) throw Error("make_trajectory: extent must be non-negative");
  if (n_frames < 1) throw Error("make_trajectory: n_frames must be at least 1");
  Vec3 dir;
  if (mode == MotionMode::xy) {
    const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
    dir = {std::cos(angle), std::sin(angle), 0.0};
  } else {
    dir = {0.0, 0.0, rng.uniform() < 0.5 ? 1.0 : -1.0};
  }
  Trajectory traj{{}, mode};
  traj.poses.reserve(n_frames);
  for (int k = 0; k < n_frames; ++k) {
    Pose pose;
    if (n_frames > 1 && extent > 0.0) {
      const double s = extent * static_cast<double>(k) / (n_frames - 1);
      pose.translation = {s * dir.x, s * dir.y, s * dir.z};
    }
    traj.poses.push_back(pose);
  }
  return traj;
}

struct RenderedView {
  RgbImage image;
  Mask coverage;
  DepthMap depth;  // depth in the rendered camera, valid where covered
};

inline constexpr double kCoverageThreshold = 0.25;

// Forward-warps the image as a point cloud into the camera at `pose`. Each
// point splats bilinearly onto its four neighbours; a soft z-buffer keeps
// only contributions within a relative tolerance of the nearest one.
// Pixels with invalid depth are placed at the median valid depth.
inline RenderedView render_view(const RgbImage& img, const DepthMap& depth, const CameraIntrinsics& intr,
                                const Pose& pose) {
  require_same_shape(img, depth);
  const int w = img.width(), h = img.height();
  const std::size_t n = img.pixel_count();
  const float fallback = static_cast<float>(median_depth(depth));

  struct Splat {
    int x0, y0;
    float weight[4];
    float z;
    std::uint32_t source;
  };
  constexpr double kSnap = 1e-6;
  constexpr float kDepthParticipation = 0.01f;
  constexpr float kDepthTolerance = 0.03f;

  std::vector<Splat> splats;
  splats.reserve(n);
  std::vector<float> zmin(n, std::numeric_limits<float>::infinity());
  auto neighbours = [&](const Splat& s, auto&& fn) {
    for (int k = 0; k < 4; ++k) {
      if (s.weight[k] <= 0.0f) continue;
      const int x = s.x0 + (k & 1), y = s.y0 + (k >> 1);
      if (x < 0 || y < 0 || x >= w || y >= h) continue;
      fn(static_cast<std::size_t>(y) * w + x, s.weight[k]);
    }
  };

  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      const double d = depth.valid(i) ? depth[i] : fallback;
      const Vec3 p = pose.to_camera(intr.backproject(x, y, d));
      double u, v;
      if (!intr.project(p, u, v)) continue;
      if (std::abs(u - std::round(u)) < kSnap) u = std::round(u);
      if (std::abs(v - std::round(v)) < kSnap) v = std::round(v);
      if (u <= -1.0 || v <= -1.0 || u >= w || v >= h) continue;
      Splat s;
      s.x0 = static_cast<int>(std::floor(u));
      s.y0 = static_cast<int>(std::floor(v));
      const float fx = static_cast<float>(u - s.x0), fy = static_cast<float>(v - s.y0);
      s.weight[0] = (1 - fx) * (1 - fy);
      s.weight[1] = fx * (1 - fy);
      s.weight[2] = (1 - fx) * fy;
      s.weight[3] = fx * fy;
      s.z = static_cast<float>(p.z);
      s.source = static_cast<std::uint32_t>(i);
      splats.push_back(s);
      neighbours(s, [&](std::size_t t, float wt) {
        if (wt > kDepthParticipation) zmin[t] = std::min(zmin[t], s.z);
      });
    }

  std::vector<double> color(3 * n, 0.0), weight(n, 0.0), zsum(n, 0.0);
  for (const Splat& s : splats) {
    const float* c = img.pixel(static_cast<int>(s.source % w), static_cast<int>(s.source / w));
    neighbours(s, [&](std::size_t t, float wt) {
      if (std::isfinite(zmin[t]) && s.z > zmin[t] * (1.0f + kDepthTolerance)) return;
      weight[t] += wt;
      zsum[t] += static_cast<double>(wt) * s.z;
      for (int ch = 0; ch < 3; ++ch) color[3 * t + ch] += static_cast<double>(wt) * c[ch];
    });
  }

  RenderedView view{RgbImage(w, h), Mask(w, h, 0), DepthMap(w, h)};
  for (std::size_t t = 0; t < n; ++t) {
    if (!(weight[t] > kCoverageThreshold)) continue;
    const int x = static_cast<int>(t % w), y = static_cast<int>(t / w);
    view.coverage[t] = 1;
    view.image.set_pixel(x, y, static_cast<float>(color[3 * t] / weight[t]),
                         static_cast<float>(color[3 * t + 1] / weight[t]),
                         static_cast<float>(color[3 * t + 2] / weight[t]));
    view.depth.set(t, static_cast<float>(zsum[t] / weight[t]));
  }
  return view;
}

// Background-priority hole filling. Each uncovered pixel looks for the
// nearest covered pixel along each of the 8 compass directions and copies
// the deepest of them. When no direction reaches a covered pixel, square
// rings growing by two pixels are searched and the deepest covered pixel in
// the first nonempty ring is used.
inline RgbImage fill_disocclusions(const RgbImage& img, const Mask& coverage, const DepthMap& warped_depth) {
  const int w = img.width(), h = img.height();
  if (!coverage.same_shape(w, h) || !img.same_shape(warped_depth))
    throw Error("fill_disocclusions: coverage or depth shape mismatch");
  if (std::find(coverage.values().begin(), coverage.values().end(), 1) == coverage.values().end())
    throw Error("fill_disocclusions: frame has no covered pixels");
  constexpr int kDirections[8][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  auto depth_at = [&](int x, int y) { return warped_depth.valid(x, y) ? warped_depth(x, y) : 0.0f; };
  RgbImage out = img;
  const int max_radius = std::max(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (coverage(x, y)) continue;
      int best_x = -1, best_y = -1;
      float best_depth = -1.0f;
      auto consider = [&](int xx, int yy) {
        const float d = depth_at(xx, yy);
        if (d > best_depth) {
          best_depth = d;
          best_x = xx;
          best_y = yy;
        }
      };
      for (const auto& dir : kDirections) {
        for (int xx = x + dir[0], yy = y + dir[1]; xx >= 0 && yy >= 0 && xx < w && yy < h;
             xx += dir[0], yy += dir[1])
          if (coverage(xx, yy)) {
            consider(xx, yy);
            break;
          }
      }
      for (int r = 2, inner = 0; best_x < 0 && inner < max_radius; inner = r, r += 2) {
        for (int yy = std::max(0, y - r); yy <= std::min(h - 1, y + r); ++yy)
          for (int xx = std::max(0, x - r); xx <= std::min(w - 1, x + r); ++xx) {
            if (std::max(std::abs(xx - x), std::abs(yy - y)) <= inner) continue;
            if (coverage(xx, yy)) consider(xx, yy);
          }
      }
      const float* c = img.pixel(best_x, best_y);
      out.set_pixel(x, y, c[0], c[1], c[2]);
    }
  return out;
}

inline std::vector<RgbImage> render_frame_sequence(const RgbImage& img, const DepthMap& depth,
                                                   const CameraIntrinsics& intr, const Trajectory& traj) {
  if (traj.poses.empty()) throw Error("trajectory has no poses");
  std::vector<RgbImage> frames;
  frames.reserve(traj.poses.size());
  for (const Pose& pose : traj.poses) {
    RenderedView view = render_view(img, depth, intr, pose);
    frames.push_back(fill_disocclusions(view.image, view.coverage, view.depth));
  }
  return frames;
}

inline RgbImage average_frames(const std::vector<RgbImage>& frames) {
  if (frames.empty()) throw Error("average_frames: no frames");
  const RgbImage& first = frames.front();
  std::vector<double> sum(first.values().size(), 0.0);
  for (const RgbImage& f : frames) {
    if (!f.same_shape(first)) throw Error("average_frames: frame shape mismatch");
    auto v = f.values();
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += v[i];
  }
  RgbImage out(first.width(), first.height());
  auto o = out.values();
  const double n = static_cast<double>(frames.size());
  for (std::size_t i = 0; i < sum.size(); ++i) o[i] = static_cast<float>(sum[i] / n);
  out.clamp();
  return out;
}

inline RgbImage motion_blur(const RgbImage& img, const DepthMap& depth, const CameraIntrinsics& intr,
                            const Trajectory& traj) {
  return average_frames(render_frame_sequence(img, depth, intr, traj));
}

}  // namespace c3d
