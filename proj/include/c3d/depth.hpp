#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <string>
#include <string_view>

#include "c3d/image.hpp"
#include "c3d/io.hpp"

namespace c3d {

enum class DepthFormat { png16_mm, pfm_m };

inline std::string_view to_string(DepthFormat f) { return f == DepthFormat::png16_mm ? "png16_mm" : "pfm_m"; }

inline DepthFormat parse_depth_format(std::string_view s) {
  if (s == "png16_mm") return DepthFormat::png16_mm;
  if (s == "pfm_m") return DepthFormat::pfm_m;
  throw Error("unknown depth format '" + std::string(s) + "' (expected png16_mm or pfm_m)");
}

inline std::string_view depth_extension(DepthFormat f) { return f == DepthFormat::png16_mm ? ".png" : ".pfm"; }

inline DepthMap load_depth(const std::filesystem::path& path, DepthFormat format) {
  if (!std::filesystem::exists(path)) throw Error("file not found: " + path.string());
  DepthMap depth;
  if (format == DepthFormat::png16_mm) {
    if (detail::lower_extension(path) == ".pfm") throw Error(path.string() + ": expected png16_mm, got a PFM file");
    const Raster r = read_png(path);
    if (r.channels != 1 || r.bit_depth != 16)
      throw Error(path.string() + ": png16_mm depth must be single-channel 16-bit");
    depth = DepthMap(r.width, r.height);
    for (std::size_t i = 0; i < r.samples.size(); ++i) depth.set(i, static_cast<float>(r.samples[i]) / 1000.0f);
  } else {
    if (detail::lower_extension(path) != ".pfm") throw Error(path.string() + ": expected pfm_m, got a non-PFM file");
    const FloatRaster r = read_pfm(path);
    if (r.channels != 1) throw Error(path.string() + ": pfm_m depth must be single-channel");
    depth = DepthMap::from_values(r.width, r.height, r.samples);
  }
  if (depth.valid_count() == 0) throw Error(path.string() + ": depth map has no valid pixels");
  return depth;
}

inline void save_depth(const DepthMap& depth, const std::filesystem::path& path, DepthFormat format) {
  if (format == DepthFormat::png16_mm) {
    Raster r{depth.width(), depth.height(), 1, 16, std::vector<std::uint16_t>(depth.size())};
    for (std::size_t i = 0; i < depth.size(); ++i) {
      const double mm = depth.valid(i) ? std::round(depth[i] * 1000.0) : 0.0;
      r.samples[i] = static_cast<std::uint16_t>(std::clamp(mm, 0.0, 65535.0));
    }
    write_png(path, r);
  } else {
    FloatRaster r{depth.width(), depth.height(), 1, std::vector<float>(depth.size())};
    for (std::size_t i = 0; i < depth.size(); ++i) r.samples[i] = depth.valid(i) ? depth[i] : 0.0f;
    write_pfm(path, r);
  }
}

// Maps a relative inverse-depth prediction onto metric depth in
// [d_min, d_max]: the field is min-max normalized to a disparity u in [0,1]
// and converted with d = 1 / ((1/d_min - 1/d_max) u + 1/d_max).
inline DepthMap normalize_predicted_depth(const ScalarField& raw, double d_min, double d_max) {
  if (!(d_min > 0.0)) throw Error("normalize_predicted_depth: d_min must be positive");
  if (!(d_max > d_min)) throw Error("normalize_predicted_depth: d_max must exceed d_min");
  float lo = std::numeric_limits<float>::infinity();
  float hi = -lo;
  for (float v : raw.values()) {
    if (!std::isfinite(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(hi > lo)) throw Error("normalize_predicted_depth: prediction has no dynamic range");
  const double near_inv = 1.0 / d_min;
  const double far_inv = 1.0 / d_max;
  const double span = static_cast<double>(hi) - lo;
  DepthMap depth(raw.width(), raw.height());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const float v = raw[i];
    if (!std::isfinite(v)) continue;
    const double u = (static_cast<double>(v) - lo) / span;
    const double d = 1.0 / ((near_inv - far_inv) * u + far_inv);
    depth.set(i, static_cast<float>(std::clamp(d, d_min, d_max)));
  }
  return depth;
}

inline double median_depth(const DepthMap& depth) {
  std::vector<float> v = depth.valid_values();
  if (v.empty()) throw Error("depth map has no valid pixels");
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

}  // namespace c3d
