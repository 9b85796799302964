#pragma once

#include <array>
#include <cmath>

#include "c3d/depth.hpp"
#include "c3d/image.hpp"

namespace c3d {

struct FogParams {
  double beta = 0.0;  // attenuation per meter
  std::array<float, 3> atmosphere{0.92f, 0.92f, 0.92f};

  void validate() const {
    if (!(beta >= 0.0)) throw Error("fog: beta must be non-negative");
    for (float a : atmosphere)
      if (!(a >= 0.0f && a <= 1.0f)) throw Error("fog: atmospheric light must lie in [0,1]");
  }
};

// t(x) = exp(-beta d(x)); invalid pixels use the median valid depth.
inline ScalarField transmission(const DepthMap& depth, double beta) {
  if (!(beta >= 0.0)) throw Error("transmission: beta must be non-negative");
  ScalarField t(depth.width(), depth.height(), 1.0f);
  if (beta == 0.0) return t;
  const float fallback = static_cast<float>(std::exp(-beta * median_depth(depth)));
  for (std::size_t i = 0; i < depth.size(); ++i)
    t[i] = depth.valid(i) ? static_cast<float>(std::exp(-beta * static_cast<double>(depth[i]))) : fallback;
  return t;
}

// Per-pixel blend toward the atmospheric light: in * t + A * (1 - t).
inline RgbImage blend_toward(const RgbImage& img, const ScalarField& t, const std::array<float, 3>& a) {
  RgbImage out = img;
  auto o = out.values();
  for (std::size_t i = 0; i < t.size(); ++i) {
    const float ti = t[i];
    for (int c = 0; c < 3; ++c) {
      const float in = o[3 * i + c];
      // Clamp away rounding so the result stays between in and A.
      o[3 * i + c] = std::clamp(in * ti + a[c] * (1.0f - ti), std::min(in, a[c]), std::max(in, a[c]));
    }
  }
  return out;
}

inline RgbImage apply_fog(const RgbImage& img, const DepthMap& depth, const FogParams& p) {
  require_same_shape(img, depth);
  p.validate();
  return blend_toward(img, transmission(depth, p.beta), p.atmosphere);
}

}  // namespace c3d
