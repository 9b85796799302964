#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "c3d/image.hpp"

namespace c3d {

// Four interleaved float channels: premultiplied RGB plus coverage.
struct Rgba {
  float v[4] = {0.0f, 0.0f, 0.0f, 0.0f};
};

// Anti-aliased disk of radius r, built row by row so each row is a box
// with fractional end taps. Row dy has weight
//   vertical(dy) = clamp(r + 0.5 - |dy|, 0, 1)
// and horizontal half-width h(dy) = sqrt(max(0, r^2 - dy^2)); tap dx gets
// clamp(h + 0.5 - |dx|, 0, 1). Every tap is continuous in r, and r <= 0.5
// degenerates to the identity kernel.
class DiskKernel {
 public:
  struct Row {
    int dy;
    float weight;  // vertical factor / total normalizer
    int full;      // taps |dx| <= full have horizontal weight 1 (-1: none)
    float edge;    // horizontal weight of the taps at |dx| == full + 1
  };

  explicit DiskKernel(double radius) : radius_(std::max(0.0, radius)) {
    const int reach = static_cast<int>(std::ceil(radius_ + 0.5));
    double total = 0.0;
    for (int dy = -reach; dy <= reach; ++dy) {
      const double vertical = std::clamp(radius_ + 0.5 - std::abs(dy), 0.0, 1.0);
      if (vertical <= 0.0) continue;
      const double h = std::sqrt(std::max(0.0, radius_ * radius_ - static_cast<double>(dy) * dy));
      Row row{dy, 0.0f, -1, 0.0f};
      double row_sum;
      if (h < 0.5) {
        // Single center tap with weight h + 0.5.
        row.full = -1;
        row.edge = static_cast<float>(h + 0.5);
        row_sum = h + 0.5;
      } else {
        row.full = static_cast<int>(std::floor(h - 0.5));
        row.edge = static_cast<float>(h + 0.5 - (row.full + 1));
        row_sum = (2.0 * row.full + 1.0) + 2.0 * row.edge;
      }
      total += vertical * row_sum;
      rows_.push_back(row);
      verticals_.push_back(vertical);
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) rows_[i].weight = static_cast<float>(verticals_[i] / total);
    reach_ = reach;
  }

  double radius() const { return radius_; }
  int reach() const { return reach_; }
  bool identity() const { return radius_ <= 0.5; }
  const std::vector<Row>& rows() const { return rows_; }

  // Explicit tap weight, for tests and reference paths.
  double tap(int dx, int dy) const {
    for (const Row& r : rows_) {
      if (r.dy != dy) continue;
      const int a = std::abs(dx);
      if (r.full < 0) return a == 0 ? r.weight * r.edge : 0.0;
      if (a <= r.full) return r.weight;
      if (a == r.full + 1) return r.weight * r.edge;
      return 0.0;
    }
    return 0.0;
  }

 private:
  double radius_;
  int reach_ = 0;
  std::vector<Row> rows_;
  std::vector<double> verticals_;
};

// Convolves a w×h Rgba buffer with a disk, treating everything outside the
// buffer as zero. Uses per-row prefix sums, so the cost per output pixel is
// proportional to the number of kernel rows rather than the kernel area.
inline std::vector<Rgba> disk_blur(const std::vector<Rgba>& src, int w, int h, const DiskKernel& kernel) {
  if (kernel.identity()) return src;
  const int pad = kernel.reach() + 1;
  const int pw = w + 2 * pad + 1;
  // prefix[y][x + pad + 1] = sum of src[y][0..x]; zeros extend both sides.
  std::vector<Rgba> prefix(static_cast<std::size_t>(pw) * h);
  for (int y = 0; y < h; ++y) {
    Rgba* p = prefix.data() + static_cast<std::size_t>(y) * pw;
    const Rgba* s = src.data() + static_cast<std::size_t>(y) * w;
    Rgba acc;
    for (int x = 0; x < pw; ++x) {
      const int sx = x - pad - 1;
      if (sx >= 0 && sx < w)
        for (int c = 0; c < 4; ++c) acc.v[c] += s[sx].v[c];
      p[x] = acc;
    }
  }
  // Edge taps read the source directly.
  std::vector<Rgba> out(src.size());
  std::vector<float> row_acc(static_cast<std::size_t>(w) * 4);
  for (int y = 0; y < h; ++y) {
    std::fill(row_acc.begin(), row_acc.end(), 0.0f);
    for (const DiskKernel::Row& kr : kernel.rows()) {
      const int sy = y + kr.dy;
      if (sy < 0 || sy >= h) continue;
      const Rgba* p = prefix.data() + static_cast<std::size_t>(sy) * pw;
      const Rgba* s = src.data() + static_cast<std::size_t>(sy) * w;
      const float wt = kr.weight;
      const float we = kr.weight * kr.edge;
      if (kr.full < 0) {
        for (int x = 0; x < w; ++x)
          for (int c = 0; c < 4; ++c) row_acc[4 * x + c] += we * s[x].v[c];
        continue;
      }
      const int m = kr.full;
      for (int x = 0; x < w; ++x) {
        // Inclusive span [x - m, x + m] in prefix coordinates.
        const Rgba& hi = p[x + m + pad + 1];
        const Rgba& lo = p[x - m + pad];
        const int el = x - m - 1;
        const int er = x + m + 1;
        for (int c = 0; c < 4; ++c) {
          float edge = 0.0f;
          if (el >= 0) edge += s[el].v[c];
          if (er < w) edge += s[er].v[c];
          row_acc[4 * x + c] += wt * (hi.v[c] - lo.v[c]) + we * edge;
        }
      }
    }
    Rgba* o = out.data() + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < 4; ++c) o[x].v[c] = row_acc[4 * x + c];
  }
  return out;
}

// Whole-image disk blur with coverage renormalization at the borders.
inline RgbImage disk_blur_image(const RgbImage& img, double radius) {
  const DiskKernel kernel(radius);
  if (kernel.identity()) return img;
  const int w = img.width(), h = img.height();
  std::vector<Rgba> buf(img.pixel_count());
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const float* p = img.pixel(x, y);
      buf[static_cast<std::size_t>(y) * w + x] = Rgba{{p[0], p[1], p[2], 1.0f}};
    }
  const auto blurred = disk_blur(buf, w, h, kernel);
  RgbImage out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const Rgba& b = blurred[static_cast<std::size_t>(y) * w + x];
      const float a = b.v[3];
      out.set_pixel(x, y, b.v[0] / a, b.v[1] / a, b.v[2] / a);
    }
  return out;
}

// Bilinear sample with clamp-to-edge addressing.
inline std::array<float, 3> sample_bilinear(const RgbImage& img, double u, double v) {
  u = std::clamp(u, 0.0, static_cast<double>(img.width() - 1));
  v = std::clamp(v, 0.0, static_cast<double>(img.height() - 1));
  const int x0 = static_cast<int>(std::floor(u));
  const int y0 = static_cast<int>(std::floor(v));
  const int x1 = std::min(x0 + 1, img.width() - 1);
  const int y1 = std::min(y0 + 1, img.height() - 1);
  const float fx = static_cast<float>(u - x0);
  const float fy = static_cast<float>(v - y0);
  std::array<float, 3> out{};
  for (int c = 0; c < 3; ++c) {
    const float top = img.at(x0, y0, c) * (1 - fx) + img.at(x1, y0, c) * fx;
    const float bottom = img.at(x0, y1, c) * (1 - fx) + img.at(x1, y1, c) * fx;
    out[c] = top * (1 - fy) + bottom * fy;
  }
  return out;
}

// Linear streak: mean of samples spaced at most one pixel apart along a
// segment of the given length centered on each pixel.
inline RgbImage streak_blur(const RgbImage& img, double length, double angle) {
  if (!(length > 0.0)) return img;
  const int taps = static_cast<int>(std::ceil(length)) + 1;
  const double dx = std::cos(angle) * length / (taps - 1);
  const double dy = std::sin(angle) * length / (taps - 1);
  const double ox = -0.5 * std::cos(angle) * length;
  const double oy = -0.5 * std::sin(angle) * length;
  RgbImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      double acc[3] = {0, 0, 0};
      for (int k = 0; k < taps; ++k) {
        const auto s = sample_bilinear(img, x + ox + k * dx, y + oy + k * dy);
        for (int c = 0; c < 3; ++c) acc[c] += s[c];
      }
      out.set_pixel(x, y, static_cast<float>(acc[0] / taps), static_cast<float>(acc[1] / taps),
                    static_cast<float>(acc[2] / taps));
    }
  return out;
}

}  // namespace c3d
