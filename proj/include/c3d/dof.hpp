#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "c3d/camera.hpp"
#include "c3d/depth.hpp"
#include "c3d/filters.hpp"
#include "c3d/image.hpp"
#include "c3d/rng.hpp"

namespace c3d {

enum class FocusMode { near, far };

struct DofParams {
  double aperture = 0.0;        // lens aperture diameter, meters
  double focal_length = 0.05;   // meters
  double focus_distance = 1.0;  // meters
  int n_layers = 12;
  FocusMode focus_mode = FocusMode::near;

  void validate() const {
    if (!(focal_length > 0.0)) throw Error("dof: focal_length must be positive");
    if (!(focus_distance > focal_length)) throw Error("dof: focus_distance must exceed focal_length");
    if (!(aperture >= 0.0)) throw Error("dof: aperture must be non-negative");
    if (n_layers < 2) throw Error("dof: n_layers must be at least 2");
  }
};

// Thin-lens circle-of-confusion radius in pixels.
inline double coc_radius(double d, const DofParams& p, double pixels_per_meter_at_sensor) {
  if (!(d > 0.0)) throw Error("coc_radius: depth must be positive");
  return 0.5 * pixels_per_meter_at_sensor * p.aperture * p.focal_length * std::abs(d - p.focus_distance) /
         (d * (p.focus_distance - p.focal_length));
}

// Focal length in pixels divided by focal length in meters.
inline double pixels_per_meter_at_sensor(const CameraIntrinsics& intr, const DofParams& p) {
  return intr.fx / p.focal_length;
}

// Linearly interpolated percentile, q in [0, 100]. Reorders `values`.
inline double percentile(std::vector<float>& values, double q) {
  if (values.empty()) throw Error("percentile of an empty set");
  const double pos = std::clamp(q, 0.0, 100.0) / 100.0 * static_cast<double>(values.size() - 1);
  const auto lo_index = static_cast<std::size_t>(std::floor(pos));
  const double frac = pos - static_cast<double>(lo_index);
  auto lo_it = values.begin() + static_cast<std::ptrdiff_t>(lo_index);
  std::nth_element(values.begin(), lo_it, values.end());
  const double lo = *lo_it;
  if (frac == 0.0 || lo_index + 1 >= values.size()) return lo;
  const double hi = *std::min_element(lo_it + 1, values.end());
  return lo + frac * (hi - lo);
}

inline constexpr double kNearFocusPercentile[2] = {5.0, 30.0};
inline constexpr double kFarFocusPercentile[2] = {70.0, 95.0};

inline double select_focus_distance(const DepthMap& depth, FocusMode mode, Rng& rng) {
  std::vector<float> values = depth.valid_values();
  if (values.empty()) throw Error("select_focus_distance: depth map has no valid pixels");
  const double* range = mode == FocusMode::near ? kNearFocusPercentile : kFarFocusPercentile;
  return percentile(values, rng.uniform(range[0], range[1]));
}

namespace detail {

struct DepthLayer {
  std::size_t count = 0;
  double inverse_sum = 0.0;
  int x0 = std::numeric_limits<int>::max(), y0 = std::numeric_limits<int>::max();
  int x1 = -1, y1 = -1;

  void add(int x, int y, double inv) {
    ++count;
    inverse_sum += inv;
    x0 = std::min(x0, x);
    y0 = std::min(y0, y);
    x1 = std::max(x1, x);
    y1 = std::max(y1, y);
  }
  // Layer depth: reciprocal of the mean inverse depth of its pixels.
  double depth() const { return static_cast<double>(count) / inverse_sum; }
};

}  // namespace detail

// Layered refocusing: bins pixels uniformly in inverse depth, blurs each
// premultiplied layer with a disk of its circle-of-confusion radius, then
// composites far to near with the over operator and renormalizes by the
// accumulated coverage.
inline RgbImage refocus(const RgbImage& img, const DepthMap& depth, const DofParams& p,
                        double pixels_per_meter) {
  require_same_shape(img, depth);
  p.validate();
  if (p.aperture == 0.0) return img;

  const int w = img.width(), h = img.height();
  const std::size_t n = img.pixel_count();
  const double fallback_inv = 1.0 / median_depth(depth);

  std::vector<double> inv(n);
  double inv_min = std::numeric_limits<double>::infinity();
  double inv_max = -inv_min;
  for (std::size_t i = 0; i < n; ++i) {
    inv[i] = depth.valid(i) ? 1.0 / static_cast<double>(depth[i]) : fallback_inv;
    inv_min = std::min(inv_min, inv[i]);
    inv_max = std::max(inv_max, inv[i]);
  }
  const int n_bins = p.n_layers;
  const double span = inv_max - inv_min;
  std::vector<int> bin(n);
  std::vector<detail::DepthLayer> layers(n_bins);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      int b = 0;
      if (span > 0.0) b = std::min(n_bins - 1, static_cast<int>((inv[i] - inv_min) / span * n_bins));
      bin[i] = b;
      layers[b].add(x, y, inv[i]);
    }

  std::vector<Rgba> acc(n);
  // Bin 0 holds the smallest inverse depth, i.e. the farthest layer.
  for (int b = 0; b < n_bins; ++b) {
    const detail::DepthLayer& layer = layers[b];
    if (layer.count == 0) continue;
    const DiskKernel kernel(coc_radius(layer.depth(), p, pixels_per_meter));
    const int reach = kernel.identity() ? 0 : kernel.reach();
    const int rx0 = std::max(0, layer.x0 - reach), ry0 = std::max(0, layer.y0 - reach);
    const int rx1 = std::min(w - 1, layer.x1 + reach), ry1 = std::min(h - 1, layer.y1 + reach);
    const int rw = rx1 - rx0 + 1, rh = ry1 - ry0 + 1;

    std::vector<Rgba> buf(static_cast<std::size_t>(rw) * rh);
    for (int y = ry0; y <= ry1; ++y)
      for (int x = rx0; x <= rx1; ++x) {
        const std::size_t i = static_cast<std::size_t>(y) * w + x;
        if (bin[i] != b) continue;
        const float* c = img.pixel(x, y);
        buf[static_cast<std::size_t>(y - ry0) * rw + (x - rx0)] = Rgba{{c[0], c[1], c[2], 1.0f}};
      }
    const std::vector<Rgba> blurred = disk_blur(buf, rw, rh, kernel);

    for (int y = ry0; y <= ry1; ++y)
      for (int x = rx0; x <= rx1; ++x) {
        const Rgba& l = blurred[static_cast<std::size_t>(y - ry0) * rw + (x - rx0)];
        Rgba& a = acc[static_cast<std::size_t>(y) * w + x];
        const float keep = 1.0f - l.v[3];
        for (int c = 0; c < 4; ++c) a.v[c] = l.v[c] + keep * a.v[c];
      }
  }

  constexpr float kCoverageFloor = 0.05f;
  RgbImage out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const Rgba& a = acc[static_cast<std::size_t>(y) * w + x];
      if (a.v[3] > kCoverageFloor) {
        out.set_pixel(x, y, a.v[0] / a.v[3], a.v[1] / a.v[3], a.v[2] / a.v[3]);
      } else {
        const float* c = img.pixel(x, y);
        out.set_pixel(x, y, c[0], c[1], c[2]);
      }
    }
  return out;
}

inline RgbImage refocus(const RgbImage& img, const DepthMap& depth, const CameraIntrinsics& intr,
                        const DofParams& p) {
  return refocus(img, depth, p, pixels_per_meter_at_sensor(intr, p));
}

}  // namespace c3d
