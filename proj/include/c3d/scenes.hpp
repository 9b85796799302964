#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "c3d/calibrate.hpp"
#include "c3d/camera.hpp"
#include "c3d/image.hpp"
#include "c3d/rng.hpp"

namespace c3d {

// Procedural indoor scenes with exact depth: a textured box room (back wall,
// floor, side walls) holding a few textured spheres, Lambert shaded. Scene
// `index` fully determines the content.

namespace scene_detail {

struct Color {
  double r, g, b;
};

inline double lattice(std::uint64_t seed, long long x, long long y) {
  std::uint64_t h = hash_combine(seed, static_cast<std::uint64_t>(x) * 0x9E3779B97F4A7C15ull ^ static_cast<std::uint64_t>(y));
  return static_cast<double>(splitmix64(h) >> 11) * 0x1.0p-53;
}

inline double value_noise(std::uint64_t seed, double x, double y) {
  const double fx = std::floor(x), fy = std::floor(y);
  const long long ix = static_cast<long long>(fx), iy = static_cast<long long>(fy);
  double tx = x - fx, ty = y - fy;
  tx = tx * tx * (3 - 2 * tx);
  ty = ty * ty * (3 - 2 * ty);
  const double a = lattice(seed, ix, iy), b = lattice(seed, ix + 1, iy);
  const double c = lattice(seed, ix, iy + 1), d = lattice(seed, ix + 1, iy + 1);
  return (a + (b - a) * tx) * (1 - ty) + (c + (d - c) * tx) * ty;
}

struct Material {
  std::uint64_t seed;
  Color base, alt;
  int pattern;  // 0 checker, 1 stripes, 2 noise
  double scale;

  Color shade(double s, double t) const {
    double m = 0.0;
    switch (pattern) {
      case 0: m = (static_cast<long long>(std::floor(s * scale)) + static_cast<long long>(std::floor(t * scale))) & 1; break;
      case 1: m = 0.5 + 0.5 * std::sin(s * scale * 3.14159); break;
      default: m = value_noise(seed, s * scale, t * scale); break;
    }
    const double n = 0.3 + 0.4 * value_noise(seed ^ 0x55, s * scale * 1.5, t * scale * 1.5) +
                     0.7 * value_noise(seed ^ 0xAA, s * scale * 4.0, t * scale * 4.0);
    return {std::clamp((base.r + (alt.r - base.r) * m) * n, 0.0, 1.0),
            std::clamp((base.g + (alt.g - base.g) * m) * n, 0.0, 1.0),
            std::clamp((base.b + (alt.b - base.b) * m) * n, 0.0, 1.0)};
  }
};

struct Sphere {
  Vec3 center;
  double radius;
  Material material;
};

struct Room {
  double half_width, floor_y, ceiling_y, back_z;
  Material back, floor, side, ceiling;
  std::vector<Sphere> spheres;
  Vec3 light;  // unit vector toward the light
};

inline Material random_material(Rng& rng) {
  auto color = [&] { return Color{rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.9)}; };
  return {rng.next_u64(), color(), color(), static_cast<int>(rng.below(3)), rng.uniform(3.0, 10.0)};
}

inline Room make_room(std::uint64_t index) {
  Rng rng(hash_string("c3d-scene"), index);
  Room room;
  room.half_width = rng.uniform(1.5, 3.0);
  room.floor_y = rng.uniform(0.8, 1.5);
  room.ceiling_y = -rng.uniform(1.2, 2.0);
  room.back_z = rng.uniform(4.0, 9.0);
  room.back = random_material(rng);
  room.floor = random_material(rng);
  room.side = random_material(rng);
  room.ceiling = random_material(rng);
  const int n_spheres = 1 + static_cast<int>(rng.below(4));
  for (int i = 0; i < n_spheres; ++i) {
    const double r = rng.uniform(0.2, 0.6);
    const double z = rng.uniform(1.2, room.back_z - r - 0.2);
    const double x = rng.uniform(-0.5, 0.5) * z * 0.8;
    const double y = std::min(room.floor_y - r, rng.uniform(-0.4, 0.6) * z * 0.5);
    room.spheres.push_back({{x, y, z}, r, random_material(rng)});
  }
  Vec3 l{rng.uniform(-0.6, 0.6), -1.0, -rng.uniform(0.3, 1.0)};
  const double n = std::sqrt(l.x * l.x + l.y * l.y + l.z * l.z);
  room.light = {l.x / n, l.y / n, l.z / n};
  return room;
}

struct Hit {
  double t = std::numeric_limits<double>::infinity();
  Color color{0, 0, 0};
  Vec3 normal{0, 0, -1};
};

// Ray from the origin along (dx, dy, 1); t is therefore the z-depth.
inline Hit trace(const Room& room, double dx, double dy) {
  Hit best;
  auto plane = [&](double t, const Vec3& normal, const Material& m, double s, double u) {
    if (t > 1e-6 && t < best.t) best = {t, m.shade(s, u), normal};
  };
  plane(room.back_z, {0, 0, -1}, room.back, dx * room.back_z, dy * room.back_z);
  if (dy > 1e-9) {
    const double t = room.floor_y / dy;
    plane(t, {0, -1, 0}, room.floor, dx * t, t);
  }
  if (dy < -1e-9) {
    const double t = room.ceiling_y / dy;
    plane(t, {0, 1, 0}, room.ceiling, dx * t, t);
  }
  if (dx > 1e-9) {
    const double t = room.half_width / dx;
    plane(t, {-1, 0, 0}, room.side, t, dy * t);
  }
  if (dx < -1e-9) {
    const double t = -room.half_width / dx;
    plane(t, {1, 0, 0}, room.side, t, dy * t);
  }
  for (const Sphere& s : room.spheres) {
    // |t·d − c|² = r²
    const double a = dx * dx + dy * dy + 1.0;
    const double b = -2.0 * (dx * s.center.x + dy * s.center.y + s.center.z);
    const double c = s.center.x * s.center.x + s.center.y * s.center.y + s.center.z * s.center.z - s.radius * s.radius;
    const double disc = b * b - 4 * a * c;
    if (disc < 0) continue;
    const double t = (-b - std::sqrt(disc)) / (2 * a);
    if (t <= 1e-6 || t >= best.t) continue;
    const Vec3 n{(dx * t - s.center.x) / s.radius, (dy * t - s.center.y) / s.radius, (t - s.center.z) / s.radius};
    const double theta = std::atan2(n.x, -n.z), phi = std::asin(std::clamp(n.y, -1.0, 1.0));
    best = {t, s.material.shade(theta * s.radius * 2.0, phi * s.radius * 2.0), n};
  }
  return best;
}

}  // namespace scene_detail

inline std::string scene_id(std::uint64_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "scene_%04llu", static_cast<unsigned long long>(index));
  return buf;
}

inline CalibrationSample make_scene(std::uint64_t index, int width = 128, int height = 128) {
  using namespace scene_detail;
  const Room room = make_room(index);
  const CameraIntrinsics intr = default_intrinsics(width, height);
  CalibrationSample s{scene_id(index), RgbImage(width, height), DepthMap(width, height), intr, 0};
  s.key = hash_string(s.id);
  constexpr double kAmbient = 0.35;
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      // 2×2 supersampled color, center-sampled depth.
      double acc[3] = {0, 0, 0};
      for (int sy = 0; sy < 2; ++sy)
        for (int sx = 0; sx < 2; ++sx) {
          const double u = x - 0.25 + 0.5 * sx, v = y - 0.25 + 0.5 * sy;
          const Hit h = trace(room, (u - intr.cx) / intr.fx, (v - intr.cy) / intr.fy);
          const double lambert = std::max(0.0, h.normal.x * room.light.x + h.normal.y * room.light.y +
                                                   h.normal.z * room.light.z);
          const double shade = kAmbient + (1.0 - kAmbient) * lambert;
          acc[0] += h.color.r * shade;
          acc[1] += h.color.g * shade;
          acc[2] += h.color.b * shade;
        }
      s.image.set_pixel(x, y, static_cast<float>(acc[0] / 4), static_cast<float>(acc[1] / 4),
                        static_cast<float>(acc[2] / 4));
      const Hit c = trace(room, (x - intr.cx) / intr.fx, (y - intr.cy) / intr.fy);
      s.depth.set(static_cast<std::size_t>(y) * width + x, static_cast<float>(c.t));
    }
  return s;
}

// The standard calibration sample: scenes 0..n-1.
inline std::vector<CalibrationSample> synthetic_sample(int n = 64, int width = 128, int height = 128) {
  std::vector<CalibrationSample> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(make_scene(static_cast<std::uint64_t>(i), width, height));
  return out;
}

}  // namespace c3d
