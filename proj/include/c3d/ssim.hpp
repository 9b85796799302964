#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "c3d/image.hpp"

namespace c3d {

inline constexpr int kSsimWindow = 11;
inline constexpr double kSsimSigma = 1.5;
inline constexpr double kSsimC1 = 0.01 * 0.01;
inline constexpr double kSsimC2 = 0.03 * 0.03;

// Rec.601 luma.
inline std::vector<double> luma(const RgbImage& img) {
  std::vector<double> y(img.pixel_count());
  auto v = img.values();
  for (std::size_t i = 0; i < y.size(); ++i)
    y[i] = 0.299 * v[3 * i] + 0.587 * v[3 * i + 1] + 0.114 * v[3 * i + 2];
  return y;
}

// Normalized 1D Gaussian taps; the 2D window is their outer product.
inline std::array<double, kSsimWindow> ssim_taps() {
  std::array<double, kSsimWindow> g{};
  double sum = 0.0;
  for (int i = 0; i < kSsimWindow; ++i) {
    const double d = i - kSsimWindow / 2;
    g[i] = std::exp(-d * d / (2.0 * kSsimSigma * kSsimSigma));
    sum += g[i];
  }
  for (double& v : g) v /= sum;
  return g;
}

// Single-scale SSIM on luma, averaged over all fully contained window
// positions (no padding).
inline double ssim(const RgbImage& a, const RgbImage& b) {
  if (!a.same_shape(b)) throw Error("ssim: image dimensions differ");
  const int w = a.width(), h = a.height();
  if (w < kSsimWindow || h < kSsimWindow) throw Error("ssim: images must be at least 11x11");
  const auto g = ssim_taps();
  const std::vector<double> ya = luma(a), yb = luma(b);

  // Five moment planes filtered horizontally, then vertically.
  const int ow = w - kSsimWindow + 1, oh = h - kSsimWindow + 1;
  std::vector<std::array<double, 5>> horiz(static_cast<std::size_t>(ow) * h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < ow; ++x) {
      std::array<double, 5> m{};
      for (int k = 0; k < kSsimWindow; ++k) {
        const std::size_t i = static_cast<std::size_t>(y) * w + x + k;
        const double pa = ya[i], pb = yb[i];
        m[0] += g[k] * pa;
        m[1] += g[k] * pb;
        m[2] += g[k] * pa * pa;
        m[3] += g[k] * pb * pb;
        m[4] += g[k] * pa * pb;
      }
      horiz[static_cast<std::size_t>(y) * ow + x] = m;
    }
  double total = 0.0;
  for (int y = 0; y < oh; ++y)
    for (int x = 0; x < ow; ++x) {
      std::array<double, 5> m{};
      for (int k = 0; k < kSsimWindow; ++k) {
        const auto& r = horiz[static_cast<std::size_t>(y + k) * ow + x];
        for (int j = 0; j < 5; ++j) m[j] += g[k] * r[j];
      }
      const double mu_a = m[0], mu_b = m[1];
      const double var_a = m[2] - mu_a * mu_a;
      const double var_b = m[3] - mu_b * mu_b;
      const double cov = m[4] - mu_a * mu_b;
      total += ((2.0 * mu_a * mu_b + kSsimC1) * (2.0 * cov + kSsimC2)) /
               ((mu_a * mu_a + mu_b * mu_b + kSsimC1) * (var_a + var_b + kSsimC2));
    }
  return total / (static_cast<double>(ow) * oh);
}

}  // namespace c3d
