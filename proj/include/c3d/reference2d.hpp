#pragma once

#include <array>
#include <cmath>

#include "c3d/filters.hpp"
#include "c3d/fog.hpp"
#include "c3d/image.hpp"

namespace c3d {

// Spatially uniform counterparts of the geometry-aware corruptions.

struct Defocus2dParams {
  double radius = 0.0;  // pixels
};

struct Motion2dParams {
  double length = 0.0;  // streak length, pixels
};

struct Fog2dParams {
  double beta = 0.0;
  double reference_depth = 1.0;  // one depth for the whole image
  std::array<float, 3> atmosphere{0.92f, 0.92f, 0.92f};

  double transmission() const { return std::exp(-beta * reference_depth); }
};

inline RgbImage defocus_2d(const RgbImage& img, const Defocus2dParams& p) { return disk_blur_image(img, p.radius); }

inline RgbImage motion_2d(const RgbImage& img, const Motion2dParams& p, double angle) {
  return streak_blur(img, p.length, angle);
}

inline RgbImage fog_2d(const RgbImage& img, double transmission, const std::array<float, 3>& atmosphere) {
  if (!(transmission >= 0.0 && transmission <= 1.0)) throw Error("fog_2d: transmission must lie in [0,1]");
  const ScalarField t(img.width(), img.height(), static_cast<float>(transmission));
  return blend_toward(img, t, atmosphere);
}

inline RgbImage fog_2d(const RgbImage& img, const Fog2dParams& p) {
  return fog_2d(img, p.transmission(), p.atmosphere);
}

}  // namespace c3d
