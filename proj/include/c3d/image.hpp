#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace c3d {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Row-major single-channel raster.
template <typename T>
class Plane {
 public:
  Plane() = default;
  Plane(int width, int height, T fill = T{}) : width_(width), height_(height) {
    if (width < 1 || height < 1) throw Error("raster dimensions must be positive");
    data_.assign(static_cast<std::size_t>(width) * height, fill);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T& operator()(int x, int y) { return data_[index(x, y)]; }
  const T& operator()(int x, int y) const { return data_[index(x, y)]; }
  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }

  std::span<T> row(int y) { return {data_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)}; }
  std::span<const T> row(int y) const {
    return {data_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)};
  }
  std::span<T> values() { return data_; }
  std::span<const T> values() const { return data_; }

  bool same_shape(int w, int h) const { return width_ == w && height_ == h; }

  friend bool operator==(const Plane&, const Plane&) = default;

 private:
  std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width_ + x; }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

using ScalarField = Plane<float>;
using Mask = Plane<std::uint8_t>;

// H×W×3 intensities in [0,1], interleaved RGB, row-major.
class RgbImage {
 public:
  static constexpr int kChannels = 3;

  RgbImage() = default;
  RgbImage(int width, int height, float fill = 0.0f) : width_(width), height_(height) {
    if (width < 1 || height < 1) throw Error("image dimensions must be positive");
    data_.assign(static_cast<std::size_t>(width) * height * kChannels, std::clamp(fill, 0.0f, 1.0f));
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t pixel_count() const { return static_cast<std::size_t>(width_) * height_; }
  bool empty() const { return data_.empty(); }

  float at(int x, int y, int c) const { return data_[offset(x, y) + c]; }
  float* pixel(int x, int y) { return data_.data() + offset(x, y); }
  const float* pixel(int x, int y) const { return data_.data() + offset(x, y); }

  void set(int x, int y, int c, float v) { data_[offset(x, y) + c] = std::clamp(v, 0.0f, 1.0f); }
  void set_pixel(int x, int y, float r, float g, float b) {
    float* p = pixel(x, y);
    p[0] = std::clamp(r, 0.0f, 1.0f);
    p[1] = std::clamp(g, 0.0f, 1.0f);
    p[2] = std::clamp(b, 0.0f, 1.0f);
  }

  std::span<float> values() { return data_; }
  std::span<const float> values() const { return data_; }

  // Restores the [0,1] invariant after raw writes through values().
  void clamp() {
    for (float& v : data_) v = std::clamp(v, 0.0f, 1.0f);
  }

  bool same_shape(int w, int h) const { return width_ == w && height_ == h; }
  template <typename Other>
  bool same_shape(const Other& o) const {
    return same_shape(o.width(), o.height());
  }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  std::size_t offset(int x, int y) const {
    return (static_cast<std::size_t>(y) * width_ + x) * kChannels;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<float> data_;
};

// Metric depth in meters with a per-pixel validity flag.
class DepthMap {
 public:
  DepthMap() = default;
  DepthMap(int width, int height, float fill = 0.0f)
      : depth_(width, height, fill), valid_(width, height, 0) {
    if (fill > 0.0f && std::isfinite(fill)) std::fill(valid_.values().begin(), valid_.values().end(), 1);
  }

  // Builds from raw values; non-positive and non-finite entries become invalid.
  static DepthMap from_values(int width, int height, std::span<const float> values) {
    if (values.size() != static_cast<std::size_t>(width) * height) throw Error("depth value count mismatch");
    DepthMap d(width, height);
    for (std::size_t i = 0; i < values.size(); ++i) d.set(i, values[i]);
    return d;
  }

  int width() const { return depth_.width(); }
  int height() const { return depth_.height(); }
  std::size_t size() const { return depth_.size(); }

  float operator()(int x, int y) const { return depth_(x, y); }
  float operator[](std::size_t i) const { return depth_[i]; }
  bool valid(int x, int y) const { return valid_(x, y) != 0; }
  bool valid(std::size_t i) const { return valid_[i] != 0; }

  void set(std::size_t i, float d) {
    const bool ok = std::isfinite(d) && d > 0.0f;
    depth_[i] = ok ? d : 0.0f;
    valid_[i] = ok ? 1 : 0;
  }
  void set(int x, int y, float d) { set(static_cast<std::size_t>(y) * width() + x, d); }

  const ScalarField& values() const { return depth_; }
  const Mask& valid_mask() const { return valid_; }

  std::size_t valid_count() const {
    return static_cast<std::size_t>(std::count(valid_.values().begin(), valid_.values().end(), 1));
  }

  std::vector<float> valid_values() const {
    std::vector<float> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i)
      if (valid_[i]) out.push_back(depth_[i]);
    return out;
  }

  friend bool operator==(const DepthMap&, const DepthMap&) = default;

 private:
  ScalarField depth_;
  Mask valid_;
};

inline void require_same_shape(const RgbImage& img, const DepthMap& depth) {
  if (!img.same_shape(depth))
    throw Error("image is " + std::to_string(img.width()) + "x" + std::to_string(img.height()) +
                " but depth is " + std::to_string(depth.width()) + "x" + std::to_string(depth.height()));
}

inline double mean_intensity(const RgbImage& img) {
  double s = 0.0;
  for (float v : img.values()) s += v;
  return s / static_cast<double>(img.values().size());
}

}  // namespace c3d
