#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <vector>

#include <nlohmann/json.hpp>

#include "c3d/image.hpp"

namespace c3d {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// Pinhole intrinsics in pixels. Pixel centers sit at integer coordinates.
struct CameraIntrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;

  void validate(int width, int height) const {
    if (!(fx > 0.0) || !(fy > 0.0)) throw Error("intrinsics: focal lengths must be positive");
    if (!(cx >= 0.0 && cx < width && cy >= 0.0 && cy < height))
      throw Error("intrinsics: principal point outside the image");
  }

  Vec3 backproject(double u, double v, double depth) const {
    return {(u - cx) * depth / fx, (v - cy) * depth / fy, depth};
  }

  // Returns false for points at or behind the camera plane.
  bool project(const Vec3& p, double& u, double& v) const {
    if (!(p.z > 1e-6)) return false;
    u = fx * p.x / p.z + cx;
    v = fy * p.y / p.z + cy;
    return true;
  }
};

inline constexpr double kDefaultVerticalFovDegrees = 60.0;

inline CameraIntrinsics default_intrinsics(int width, int height,
                                           double vfov_degrees = kDefaultVerticalFovDegrees) {
  const double half = vfov_degrees * std::numbers::pi / 360.0;
  const double f = 0.5 * std::max(width, height) / std::tan(half);
  return {f, f, 0.5 * (width - 1), 0.5 * (height - 1)};
}

// Sidecar format: {"fx": .., "fy": .., "cx": .., "cy": ..}.
inline CameraIntrinsics load_intrinsics(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open intrinsics file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
    return {j.at("fx").get<double>(), j.at("fy").get<double>(), j.at("cx").get<double>(),
            j.at("cy").get<double>()};
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed intrinsics file " + path.string() + ": " + e.what());
  }
}

inline void save_intrinsics(const CameraIntrinsics& k, const std::filesystem::path& path) {
  std::ofstream out(path);
  out << nlohmann::json{{"fx", k.fx}, {"fy", k.fy}, {"cx", k.cx}, {"cy", k.cy}}.dump(2) << "\n";
  if (!out) throw Error("cannot write intrinsics file " + path.string());
}

struct CloudPoint {
  Vec3 position;
  std::uint32_t source;  // linear pixel index of the originating color
};

using PointCloud = std::vector<CloudPoint>;

inline PointCloud backproject(const DepthMap& depth, const CameraIntrinsics& intr) {
  PointCloud cloud;
  cloud.reserve(depth.valid_count());
  for (int y = 0; y < depth.height(); ++y) {
    for (int x = 0; x < depth.width(); ++x) {
      if (!depth.valid(x, y)) continue;
      cloud.push_back({intr.backproject(x, y, depth(x, y)),
                       static_cast<std::uint32_t>(static_cast<std::size_t>(y) * depth.width() + x)});
    }
  }
  return cloud;
}

}  // namespace c3d
