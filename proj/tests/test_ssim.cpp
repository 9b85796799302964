#include <gtest/gtest.h>

#include "support.hpp"

using namespace c3d;

namespace {

// Direct 2D summation over every window, no separable shortcut.
double ssim_reference(const RgbImage& a, const RgbImage& b) {
  const int w = a.width(), h = a.height(), n = 11, r = 5;
  std::vector<double> g(n * n);
  double gs = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double dx = i - r, dy = j - r;
      g[j * n + i] = std::exp(-(dx * dx + dy * dy) / (2 * 1.5 * 1.5));
      gs += g[j * n + i];
    }
  auto lum = [](const RgbImage& img, int x, int y) {
    return 0.299 * img.at(x, y, 0) + 0.587 * img.at(x, y, 1) + 0.114 * img.at(x, y, 2);
  };
  const double c1 = 1e-4, c2 = 9e-4;
  double total = 0.0;
  int count = 0;
  for (int y0 = 0; y0 + n <= h; ++y0)
    for (int x0 = 0; x0 + n <= w; ++x0) {
      double ma = 0, mb = 0;
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          const double wt = g[j * n + i] / gs;
          ma += wt * lum(a, x0 + i, y0 + j);
          mb += wt * lum(b, x0 + i, y0 + j);
        }
      double va = 0, vb = 0, cov = 0;
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          const double wt = g[j * n + i] / gs;
          const double da = lum(a, x0 + i, y0 + j) - ma, db = lum(b, x0 + i, y0 + j) - mb;
          va += wt * da * da;
          vb += wt * db * db;
          cov += wt * da * db;
        }
      total += ((2 * ma * mb + c1) * (2 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
      ++count;
    }
  return total / count;
}

}  // namespace

TEST(Ssim, SelfSimilarityIsOne) {
  const RgbImage img = test::random_image(40, 33, 1);
  EXPECT_DOUBLE_EQ(ssim(img, img), 1.0);
  const RgbImage c = test::constant_image(20, 20, 0.5f, 0.5f, 0.5f);
  EXPECT_DOUBLE_EQ(ssim(c, c), 1.0);
}

TEST(Ssim, ConstantImagesLuminanceOnly) {
  const RgbImage a = test::constant_image(20, 20, 0.5f, 0.5f, 0.5f);
  const RgbImage b = test::constant_image(20, 20, 0.25f, 0.25f, 0.25f);
  const double expected = (2 * 0.5 * 0.25 + 1e-4) / (0.25 + 0.0625 + 1e-4);
  EXPECT_NEAR(ssim(a, b), expected, 1e-9);
  EXPECT_NEAR(ssim(a, b), 0.8001, 1e-4);
}

TEST(Ssim, MatchesDirectSummation) {
  for (std::uint64_t i = 0; i < 5; ++i) {
    const RgbImage a = test::random_image(29, 23, 10 + i);
    RgbImage b = a;
    Rng rng(i, 3);
    for (float& v : b.values()) v = std::clamp(v + static_cast<float>(0.3 * rng.normal()), 0.0f, 1.0f);
    EXPECT_NEAR(ssim(a, b), ssim_reference(a, b), 1e-6) << i;
    const RgbImage c = test::random_image(29, 23, 100 + i);
    EXPECT_NEAR(ssim(a, c), ssim_reference(a, c), 1e-6) << i;
  }
}

TEST(Ssim, SymmetricAndBounded) {
  const RgbImage a = test::texture_image(48, 40, 1), b = test::random_image(48, 40, 2);
  EXPECT_NEAR(ssim(a, b), ssim(b, a), 1e-12);
  EXPECT_LE(ssim(a, b), 1.0);
  EXPECT_GE(ssim(a, b), -1.0);
}

TEST(Ssim, Errors) {
  EXPECT_THROW(ssim(RgbImage(20, 20), RgbImage(21, 20)), Error);
  EXPECT_THROW(ssim(RgbImage(10, 20), RgbImage(10, 20)), Error);
}
