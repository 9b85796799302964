#include <gtest/gtest.h>

#include "support.hpp"

using namespace c3d;
namespace fs = std::filesystem;

TEST(LoadRgb, EightBitExtremesMapToUnitRange) {
  const auto dir = test::temp_dir("io_extremes");
  Raster r{2, 1, 3, 8, {255, 255, 255, 0, 0, 0}};
  write_png(dir / "a.png", r);
  const RgbImage img = load_rgb(dir / "a.png");
  EXPECT_EQ(img.at(0, 0, 0), 1.0f);
  EXPECT_EQ(img.at(1, 0, 2), 0.0f);
}

TEST(LoadRgb, SixteenBitDividesByMaxCode) {
  const auto dir = test::temp_dir("io_16");
  Raster r{1, 1, 3, 16, {32768, 0, 65535}};
  write_png(dir / "a.png", r);
  const RgbImage img = load_rgb(dir / "a.png");
  EXPECT_NEAR(img.at(0, 0, 0), 32768.0 / 65535.0, 1e-7);
  EXPECT_NEAR(img.at(0, 0, 0), 0.50001, 1e-5);
  EXPECT_EQ(img.at(0, 0, 2), 1.0f);
}

TEST(LoadRgb, RoundTripIsBitIdentical) {
  const auto dir = test::temp_dir("io_roundtrip");
  Rng rng(5, 5);
  Raster r{17, 9, 3, 8, {}};
  for (int i = 0; i < 17 * 9 * 3; ++i) r.samples.push_back(static_cast<std::uint16_t>(rng.below(256)));
  write_png(dir / "a.png", r);
  save_rgb(load_rgb(dir / "a.png"), dir / "b.png");
  EXPECT_EQ(read_png(dir / "b.png").samples, r.samples);
}

TEST(LoadRgb, PnmReadsLikePng) {
  const auto dir = test::temp_dir("io_pnm");
  {
    std::ofstream f(dir / "a.ppm", std::ios::binary);
    f << "P6\n2 1\n255\n";
    const unsigned char px[] = {255, 0, 128, 10, 20, 30};
    f.write(reinterpret_cast<const char*>(px), sizeof px);
  }
  const RgbImage img = load_rgb(dir / "a.ppm");
  EXPECT_EQ(img.width(), 2);
  EXPECT_NEAR(img.at(0, 0, 2), 128.0 / 255.0, 1e-7);
  EXPECT_NEAR(img.at(1, 0, 1), 20.0 / 255.0, 1e-7);
}

TEST(LoadRgb, Errors) {
  const auto dir = test::temp_dir("io_errors");
  EXPECT_THROW(load_rgb(dir / "missing.png"), Error);
  write_png(dir / "gray.png", Raster{2, 2, 1, 8, {1, 2, 3, 4}});
  EXPECT_THROW(load_rgb(dir / "gray.png"), Error);
  {
    std::ofstream f(dir / "junk.png");
    f << "not a png";
  }
  EXPECT_THROW(load_rgb(dir / "junk.png"), Error);
}

TEST(Pfm, RoundTrip) {
  const auto dir = test::temp_dir("io_pfm");
  FloatRaster r{3, 2, 1, {1.5f, -2.0f, 3.25f, 0.0f, 1e-3f, 7.0f}};
  write_pfm(dir / "a.pfm", r);
  const FloatRaster back = read_pfm(dir / "a.pfm");
  EXPECT_EQ(back.width, 3);
  EXPECT_EQ(back.height, 2);
  EXPECT_EQ(back.samples, r.samples);
}

TEST(Quantize, WritesClampedCodes) {
  RgbImage img(1, 1);
  img.values()[0] = 1.5f;  // raw write outside the invariant
  img.values()[1] = 0.5f;
  const Raster r = quantize(img, 8);
  EXPECT_EQ(r.samples[0], 255);
  EXPECT_EQ(r.samples[1], 128);
  EXPECT_EQ(r.samples[2], 0);
}

TEST(RgbImage, SetClampsToUnitRange) {
  RgbImage img(2, 2);
  img.set(0, 0, 0, 2.0f);
  img.set(1, 1, 2, -1.0f);
  EXPECT_EQ(img.at(0, 0, 0), 1.0f);
  EXPECT_EQ(img.at(1, 1, 2), 0.0f);
  EXPECT_THROW(RgbImage(0, 3), Error);
}
