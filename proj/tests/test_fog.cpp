#include <gtest/gtest.h>

#include "support.hpp"

using namespace c3d;

TEST(Transmission, ZeroBetaIsOne) {
  const auto s = make_scene(0, 16, 16);
  const ScalarField t = transmission(s.depth, 0.0);
  for (float v : t.values()) EXPECT_EQ(v, 1.0f);
}

TEST(Transmission, ExponentialOracle) {
  const double e_inv = std::exp(-1.0);
  EXPECT_NEAR(transmission(test::constant_depth(2, 2, 1.0f / 0.7f), 0.7)[0], e_inv, 1e-6);
  EXPECT_NEAR(transmission(test::constant_depth(2, 2, 2.0f), 0.5)[0], e_inv, 1e-7);
  EXPECT_NEAR(e_inv, 0.3679, 1e-4);
}

TEST(Transmission, InvalidPixelsUseMedianDepth) {
  DepthMap d(3, 1);
  d.set(0, 1.0f);
  d.set(1, 0.0f);
  d.set(2, 3.0f);
  const ScalarField t = transmission(d, 0.4);
  EXPECT_NEAR(t[1], std::exp(-0.4 * median_depth(d)), 1e-7);
}

TEST(ApplyFog, ZeroBetaIsBitIdentical) {
  const auto s = make_scene(1, 32, 32);
  EXPECT_EQ(apply_fog(s.image, s.depth, FogParams{0.0, {0.92f, 0.92f, 0.92f}}), s.image);
}

TEST(ApplyFog, DenseFogConvergesToAtmosphere) {
  const auto s = make_scene(2, 32, 32);
  const FogParams p{50.0, {0.9f, 0.8f, 0.7f}};
  const RgbImage out = apply_fog(s.image, s.depth, p);
  for (int y = 0; y < 32; ++y)
    for (int x = 0; x < 32; ++x)
      for (int c = 0; c < 3; ++c) EXPECT_LT(std::abs(out.at(x, y, c) - p.atmosphere[c]), 1e-8);
}

TEST(ApplyFog, ScalarOracle) {
  const RgbImage img = test::constant_image(4, 4, 0.8f, 0.8f, 0.8f);
  const RgbImage out = apply_fog(img, test::constant_depth(4, 4, 3.1f), FogParams{0.23, {0.9f, 0.9f, 0.9f}});
  const double t = std::exp(-0.23 * 3.1);
  EXPECT_NEAR(t, 0.4902, 1e-4);
  EXPECT_NEAR(out.at(2, 2, 1), 0.8 * t + 0.9 * (1 - t), 1e-6);
  EXPECT_NEAR(out.at(2, 2, 1), 0.8510, 1e-4);
}

TEST(ApplyFog, MatchesPerPixelReference) {
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    Rng rng(trial, 77);
    const RgbImage img = test::random_image(16, 16, trial);
    DepthMap d(16, 16);
    for (std::size_t i = 0; i < d.size(); ++i) d.set(i, static_cast<float>(rng.uniform(0.2, 20.0)));
    const FogParams p{rng.uniform(0.0, 1.5),
                      {static_cast<float>(rng.uniform()), static_cast<float>(rng.uniform()),
                       static_cast<float>(rng.uniform())}};
    const RgbImage out = apply_fog(img, d, p);
    for (int y = 0; y < 16; ++y)
      for (int x = 0; x < 16; ++x) {
        const double t = std::exp(-p.beta * static_cast<double>(d(x, y)));
        for (int c = 0; c < 3; ++c)
          ASSERT_NEAR(out.at(x, y, c), img.at(x, y, c) * t + p.atmosphere[c] * (1 - t), 1e-6);
      }
  }
}

TEST(ApplyFog, ConvexCombinationAlways) {
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    Rng rng(trial, 3);
    const RgbImage img = test::random_image(12, 12, trial + 100);
    DepthMap d(12, 12);
    for (std::size_t i = 0; i < d.size(); ++i) d.set(i, static_cast<float>(rng.uniform(0.01, 100.0)));
    const FogParams p{rng.uniform(0.0, 10.0), {static_cast<float>(rng.uniform()), 0.0f, 1.0f}};
    const RgbImage out = apply_fog(img, d, p);
    for (int y = 0; y < 12; ++y)
      for (int x = 0; x < 12; ++x)
        for (int c = 0; c < 3; ++c) {
          const float in = img.at(x, y, c), a = p.atmosphere[c], o = out.at(x, y, c);
          ASSERT_GE(o, std::min(in, a));
          ASSERT_LE(o, std::max(in, a));
        }
  }
}

TEST(ApplyFog, DeeperPixelsAreCloserToAtmosphere) {
  const RgbImage img = test::constant_image(2, 1, 0.2f, 0.2f, 0.2f);
  DepthMap d(2, 1);
  d.set(0, 1.0f);
  d.set(1, 4.0f);
  const RgbImage out = apply_fog(img, d, FogParams{0.3, {0.92f, 0.92f, 0.92f}});
  EXPECT_LT(std::abs(out.at(1, 0, 0) - 0.92f), std::abs(out.at(0, 0, 0) - 0.92f));
}

TEST(ApplyFog, Errors) {
  EXPECT_THROW(apply_fog(RgbImage(3, 3), test::constant_depth(4, 3, 1.0f), FogParams{0.1, {0.5f, 0.5f, 0.5f}}),
               Error);
  EXPECT_THROW(apply_fog(RgbImage(3, 3), test::constant_depth(3, 3, 1.0f), FogParams{-0.1, {0.5f, 0.5f, 0.5f}}),
               Error);
  EXPECT_THROW(apply_fog(RgbImage(3, 3), test::constant_depth(3, 3, 1.0f), FogParams{0.1, {1.5f, 0.5f, 0.5f}}),
               Error);
}
