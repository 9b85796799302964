#include <gtest/gtest.h>

#include "support.hpp"

using namespace c3d;

namespace {

DofParams params(double aperture, double focus, int layers = 12) {
  DofParams p;
  p.aperture = aperture;
  p.focus_distance = focus;
  p.n_layers = layers;
  return p;
}

double total_variation(const RgbImage& img) {
  double tv = 0.0;
  for (int y = 0; y + 1 < img.height(); ++y)
    for (int x = 0; x + 1 < img.width(); ++x)
      for (int c = 0; c < 3; ++c)
        tv += std::abs(img.at(x + 1, y, c) - img.at(x, y, c)) + std::abs(img.at(x, y + 1, c) - img.at(x, y, c));
  return tv;
}

// Largest circle of confusion over a depth map.
double max_coc(const DepthMap& d, const DofParams& p, double ppm) {
  double m = 0.0;
  for (float v : d.valid_values()) m = std::max(m, coc_radius(v, p, ppm));
  return m;
}

}  // namespace

TEST(CocRadius, ZeroOnFocalPlaneAndForPinhole) {
  EXPECT_EQ(coc_radius(2.0, params(0.01, 2.0), 20000), 0.0);
  for (double d : {0.3, 1.0, 5.0, 100.0}) EXPECT_EQ(coc_radius(d, params(0.0, 2.0), 20000), 0.0);
}

TEST(CocRadius, ThinLensOracle) {
  const double expected = 0.5 * 20000 * 0.01 * 0.05 * 2.0 / (4.0 * 1.95);
  EXPECT_NEAR(coc_radius(4.0, params(0.01, 2.0), 20000), expected, 1e-12);
  EXPECT_NEAR(expected, 1.282, 1e-3);
}

TEST(CocRadius, MonotoneInInverseDepthDistance) {
  const DofParams p = params(0.02, 2.0);
  double prev = -1.0;
  for (double d = 2.0; d < 50.0; d *= 1.3) {
    const double r = coc_radius(d, p, 1000);
    EXPECT_GT(r, prev);
    prev = r;
  }
  EXPECT_THROW(coc_radius(0.0, p, 1000), Error);
}

TEST(Percentile, LinearInterpolation) {
  std::vector<float> v;
  for (int i = 100; i >= 1; --i) v.push_back(static_cast<float>(i));
  EXPECT_DOUBLE_EQ(percentile(v, 25.0), 25.75);
  EXPECT_DOUBLE_EQ(percentile(v, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(percentile(v, 100.0), 100.0);
}

TEST(SelectFocusDistance, ConstantDepth) {
  const DepthMap d = test::constant_depth(10, 10, 3.0f);
  Rng a(1, 1), b(1, 1);
  EXPECT_EQ(select_focus_distance(d, FocusMode::near, a), 3.0);
  EXPECT_EQ(select_focus_distance(d, FocusMode::far, b), 3.0);
}

TEST(SelectFocusDistance, NearNotBeyondFar) {
  const auto s = make_scene(3, 48, 48);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng a(seed, 9), b(seed, 9);
    EXPECT_LE(select_focus_distance(s.depth, FocusMode::near, a), select_focus_distance(s.depth, FocusMode::far, b));
  }
  DepthMap empty(4, 4);
  Rng r(1, 1);
  EXPECT_THROW(select_focus_distance(empty, FocusMode::near, r), Error);
}

TEST(Refocus, ZeroApertureIsPassthrough) {
  const auto s = make_scene(1, 64, 64);
  EXPECT_EQ(refocus(s.image, s.depth, s.intrinsics, params(0.0, 2.0)), s.image);
}

TEST(Refocus, InFocusConstantDepthUnchanged) {
  const RgbImage img = test::random_image(40, 30, 2);
  const DepthMap d = test::constant_depth(40, 30, 2.7f);
  const RgbImage out = refocus(img, d, default_intrinsics(40, 30), params(0.05, 2.7));
  EXPECT_LE(test::max_abs_diff(out, img), 1e-6);
}

TEST(Refocus, BlurConcentratesOffFocalPlane) {
  const int w = 64, h = 48;
  const RgbImage img = test::random_image(w, h, 5);
  const DepthMap d = test::split_depth(w, h, 1.0f, 8.0f);
  const RgbImage out = refocus(img, d, default_intrinsics(w, h), params(0.2, 1.0));
  const double near = test::region_l1(out, img, 0, w / 2, 0, h);
  const double far = test::region_l1(out, img, w / 2, w, 0, h);
  EXPECT_LT(near, far);
  EXPECT_GT(far, 0.05);
}

TEST(Refocus, PreservesMeanIntensity) {
  for (std::uint64_t i = 0; i < 4; ++i) {
    const auto s = make_scene(i, 96, 96);
    std::vector<float> v = s.depth.valid_values();
    DofParams p = params(1.0, percentile(v, 20.0));
    const double ppm = pixels_per_meter_at_sensor(s.intrinsics, p);
    p.aperture = 8.0 / max_coc(s.depth, p, ppm);  // largest radius exactly 8 px
    const RgbImage out = refocus(s.image, s.depth, p, ppm);
    EXPECT_NEAR(mean_intensity(out) / mean_intensity(s.image), 1.0, 0.01) << i;
  }
}

TEST(Refocus, LayerCountConverged) {
  for (std::uint64_t i = 0; i < 4; ++i) {
    const auto s = make_scene(i, 96, 96);
    std::vector<float> v = s.depth.valid_values();
    const double focus = percentile(v, 20.0);
    const RgbImage a = refocus(s.image, s.depth, s.intrinsics, params(0.02, focus, 12));
    const RgbImage b = refocus(s.image, s.depth, s.intrinsics, params(0.02, focus, 24));
    EXPECT_LT(l1_error(a, b), 2e-2) << i;
  }
}

TEST(Refocus, BlurMonotoneInDefocus) {
  const RgbImage img = test::texture_image(48, 48, 8);
  const double tv0 = total_variation(img);
  double prev_reduction = -1.0;
  for (float d : {2.0f, 2.5f, 3.5f, 6.0f, 20.0f}) {
    const RgbImage out = refocus(img, test::constant_depth(48, 48, d), default_intrinsics(48, 48), params(0.5, 2.0));
    const double reduction = 1.0 - total_variation(out) / tv0;
    EXPECT_GE(reduction, prev_reduction - 1e-9) << d;
    prev_reduction = reduction;
  }
  EXPECT_GT(prev_reduction, 0.2);
}

TEST(Refocus, Deterministic) {
  const auto s = make_scene(2, 64, 64);
  const auto spec = make_spec(Kind::near_focus, 3, 0.03, 11, s.key);
  const RgbImage a = apply_corruption(spec, {s.image, &s.depth, s.intrinsics});
  const RgbImage b = apply_corruption(spec, {s.image, &s.depth, s.intrinsics});
  EXPECT_EQ(a, b);
}

TEST(Refocus, Errors) {
  EXPECT_THROW(refocus(RgbImage(4, 4), DepthMap(5, 4, 1.0f), default_intrinsics(4, 4), params(0.01, 1.0)), Error);
  EXPECT_THROW(refocus(RgbImage(4, 4), DepthMap(4, 4, 1.0f), default_intrinsics(4, 4), params(0.01, 0.01)), Error);
  DofParams p = params(0.01, 1.0);
  p.n_layers = 1;
  EXPECT_THROW(refocus(RgbImage(4, 4), DepthMap(4, 4, 1.0f), default_intrinsics(4, 4), p), Error);
}
