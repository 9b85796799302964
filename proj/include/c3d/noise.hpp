#pragma once

#include <array>
#include <cmath>

#include "c3d/image.hpp"
#include "c3d/rng.hpp"

namespace c3d {

struct NoiseParams {
  double intensity_scale = 1.0;  // low-light dimming factor in (0, 1]
  double photon_level = 1000.0;  // expected photon count at full scale
  double read_sigma = 0.0;       // Gaussian read noise, intensity units
  int bit_depth = 8;             // color quantization only

  void validate() const {
    if (!(intensity_scale > 0.0 && intensity_scale <= 1.0)) throw Error("noise: intensity_scale must be in (0,1]");
    if (!(photon_level > 0.0)) throw Error("noise: photon_level must be positive");
    if (!(read_sigma >= 0.0)) throw Error("noise: read_sigma must be non-negative");
    if (bit_depth < 1 || bit_depth > 8) throw Error("noise: bit_depth must be in 1..8");
  }
};

inline constexpr double kIsoPhotonLevel = 1000.0;
inline constexpr std::array<double, 5> kLowLightIntensityScale{0.8, 0.65, 0.5, 0.35, 0.2};

// Poisson-Gaussian sensor model on dimmed intensities. Each row draws from
// its own substream so rows can be processed in any order.
inline RgbImage low_light(const RgbImage& img, const NoiseParams& p, const Rng& rng) {
  p.validate();
  RgbImage out(img.width(), img.height());
  const int w = img.width();
  for (int y = 0; y < img.height(); ++y) {
    Rng row_rng = rng.substream(static_cast<std::uint64_t>(y));
    const float* src = img.pixel(0, y);
    float* dst = out.pixel(0, y);
    for (int i = 0; i < 3 * w; ++i) {
      const double x = static_cast<double>(src[i]) * p.intensity_scale;
      double v = static_cast<double>(row_rng.poisson(x * p.photon_level)) / p.photon_level;
      if (p.read_sigma > 0.0) v += p.read_sigma * row_rng.normal();
      dst[i] = static_cast<float>(std::clamp(v, 0.0, 1.0));
    }
  }
  return out;
}

// Fixed photon noise with severity-dependent read noise.
inline RgbImage iso_noise(const RgbImage& img, const NoiseParams& p, const Rng& rng) {
  NoiseParams q = p;
  q.intensity_scale = 1.0;
  return low_light(img, q, rng);
}

inline RgbImage color_quant(const RgbImage& img, int bit_depth) {
  if (bit_depth < 1 || bit_depth > 8) throw Error("color_quant: bit_depth must be in 1..8");
  const double levels = static_cast<double>((1 << bit_depth) - 1);
  RgbImage out = img;
  for (float& v : out.values()) v = static_cast<float>(std::round(static_cast<double>(v) * levels) / levels);
  return out;
}

}  // namespace c3d
