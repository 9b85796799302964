#include <gtest/gtest.h>

#include "support.hpp"

using namespace c3d;

namespace {

Matrix columns(const std::vector<std::vector<double>>& cols) {
  Matrix m(cols.front().size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < m.rows; ++r) m(r, c) = cols[c][r];
  return m;
}

}  // namespace

TEST(L1Error, Examples) {
  const RgbImage a = test::random_image(8, 8, 1);
  EXPECT_EQ(l1_error(a, a), 0.0);
  EXPECT_NEAR(l1_error(test::constant_image(4, 4, 0.7f, 0.7f, 0.7f), test::constant_image(4, 4, 0.2f, 0.2f, 0.2f)),
              0.5, 1e-7);
  const std::vector<float> pred{0, 1, 1, 0}, gt{1, 1, 0, 0};
  EXPECT_DOUBLE_EQ(l1_error(pred, gt), 0.5);
}

TEST(L1Error, Mask) {
  const std::vector<float> pred{0, 1, 1, 0}, gt{1, 1, 0, 0};
  Mask m(2, 2, 0);
  m[1] = 1;
  m[2] = 1;
  EXPECT_DOUBLE_EQ(l1_error(pred, gt, 1, &m), 0.5);
  m[2] = 0;
  EXPECT_DOUBLE_EQ(l1_error(pred, gt, 1, &m), 0.0);
  const Mask none(2, 2, 0);
  EXPECT_THROW(l1_error(pred, gt, 1, &none), Error);
  EXPECT_THROW(l1_error(pred, std::vector<float>{1, 2, 3}), Error);
  EXPECT_THROW(l1_error(RgbImage(3, 3), RgbImage(3, 4)), Error);
}

TEST(Correlation, Examples) {
  const std::vector<double> x{1, 2, 3, 5, 8}, y{5, 7, 9, 13, 19}, z{3, 2, 1, -1, 0};
  const CorrelationResult r = correlation_matrix(columns({x, y, z}));
  EXPECT_DOUBLE_EQ(r.values(0, 0), 1.0);
  EXPECT_NEAR(r.values(0, 1), 1.0, 1e-12);
  EXPECT_TRUE(r.undefined.empty());
  const CorrelationResult neg = correlation_matrix(columns({{1, 2, 3}, {3, 2, 1}}));
  EXPECT_NEAR(neg.values(0, 1), -1.0, 1e-12);
}

TEST(Correlation, MatchesTextbookPearson) {
  Rng rng(2, 2);
  std::vector<std::vector<double>> cols(4, std::vector<double>(20));
  for (auto& c : cols)
    for (double& v : c) v = rng.uniform();
  const CorrelationResult r = correlation_matrix(columns(cols));
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      double sa = 0, sb = 0, sab = 0, saa = 0, sbb = 0;
      const double n = 20;
      for (int i = 0; i < 20; ++i) {
        sa += cols[a][i];
        sb += cols[b][i];
        sab += cols[a][i] * cols[b][i];
        saa += cols[a][i] * cols[a][i];
        sbb += cols[b][i] * cols[b][i];
      }
      const double want = (n * sab - sa * sb) / std::sqrt((n * saa - sa * sa) * (n * sbb - sb * sb));
      EXPECT_NEAR(r.values(a, b), want, 1e-10);
      EXPECT_EQ(r.values(a, b), r.values(b, a));
    }
}

TEST(Correlation, ZeroVarianceColumnUndefined) {
  const CorrelationResult r = correlation_matrix(columns({{1, 2, 3}, {4, 4, 4}}));
  ASSERT_EQ(r.undefined, std::vector<std::size_t>{1});
  EXPECT_TRUE(is_undefined(r.values(0, 1)));
  EXPECT_TRUE(is_undefined(r.values(1, 1)));
  EXPECT_EQ(r.values(0, 0), 1.0);
  EXPECT_THROW(correlation_matrix(columns({{1, 2}, {2, 1}})), Error);
}

TEST(Mce, Examples) {
  const ErrorTable base{{{"fog", 1}, 0.2}, {{"fog", 2}, 0.4}, {{"noise", 1}, 0.1}, {{"noise", 2}, 0.3}};
  EXPECT_DOUBLE_EQ(mce(base, base), 100.0);
  ErrorTable zero = base;
  for (auto& [k, v] : zero) v = 0.0;
  EXPECT_DOUBLE_EQ(mce(zero, base), 0.0);
  // CE(fog) = 0.3/0.6 = 0.5, CE(noise) = 0.6/0.4 = 1.5.
  const ErrorTable model{{{"fog", 1}, 0.1}, {{"fog", 2}, 0.2}, {{"noise", 1}, 0.2}, {{"noise", 2}, 0.4}};
  EXPECT_NEAR(mce(model, base), 100.0, 1e-12);
  EXPECT_THROW(mce(model, zero), Error);
  EXPECT_THROW(mce(ErrorTable{{{"fog", 1}, 0.1}}, base), Error);
}

TEST(Mce, InvariantToCommonRescaling) {
  Rng rng(9, 9);
  for (int trial = 0; trial < 20; ++trial) {
    ErrorTable m, b;
    for (const char* name : {"a", "b", "c"})
      for (int s = 1; s <= 5; ++s) {
        m[{name, s}] = rng.uniform(0.0, 1.0);
        b[{name, s}] = rng.uniform(0.1, 1.0);
      }
    const double k = rng.uniform(0.01, 100.0);
    ErrorTable mk = m, bk = b;
    for (auto& [key, v] : mk) v *= k;
    for (auto& [key, v] : bk) v *= k;
    EXPECT_NEAR(mce(mk, bk), mce(m, b), 1e-9 * mce(m, b));
  }
}

TEST(Reference2d, Examples) {
  const RgbImage img = test::random_image(24, 24, 3);
  EXPECT_EQ(reference_2d(Kind::fog_2d, img, make_spec(Kind::fog_2d, 1, 0.0, 1, 1)), img);
  EXPECT_EQ(reference_2d(Kind::defocus_2d, img, make_spec(Kind::defocus_2d, 1, 0.0, 1, 1)), img);
  EXPECT_EQ(reference_2d(Kind::motion_2d, img, make_spec(Kind::motion_2d, 1, 0.0, 1, 1)), img);
  EXPECT_THROW(reference_2d(Kind::fog_3d, img, make_spec(Kind::fog_3d, 1, 0.1, 1, 1)), Error);
  EXPECT_THROW(reference_2d(Kind::fog_2d, img, make_spec(Kind::defocus_2d, 1, 0.1, 1, 1)), Error);
}

TEST(Reference2d, FogIsSpatiallyConstant) {
  const RgbImage img = test::constant_image(8, 8, 0.8f, 0.8f, 0.8f);
  Settings s;
  s.atmosphere = {0.9f, 0.9f, 0.9f};
  const double beta = -std::log(0.4902);
  const RgbImage out = reference_2d(Kind::fog_2d, img, make_spec(Kind::fog_2d, 2, beta, 1, 1, s));
  for (float v : out.values()) EXPECT_NEAR(v, 0.8510, 1e-4);
}

TEST(Reference2d, DefocusIsUniformDiskBlur) {
  const RgbImage img = test::random_image(24, 24, 4);
  EXPECT_EQ(reference_2d(Kind::defocus_2d, img, make_spec(Kind::defocus_2d, 3, 2.5, 1, 1)), disk_blur_image(img, 2.5));
}

TEST(RgbErrorMatrix, Columns) {
  const std::vector<RgbImage> clean{test::constant_image(4, 4, 0.5f, 0.5f, 0.5f),
                                    test::constant_image(4, 4, 0.1f, 0.1f, 0.1f)};
  const std::vector<std::vector<RgbImage>> cells{{clean[1], clean[0]}, {clean[0], clean[1]}};
  const Matrix m = rgb_error_matrix(clean, cells);
  EXPECT_NEAR(m(0, 0), 0.4, 1e-7);
  EXPECT_NEAR(m(1, 0), 0.4, 1e-7);
  EXPECT_EQ(m(0, 1), 0.0);
  EXPECT_THROW(rgb_error_matrix(clean, {{clean[0]}}), Error);
}

TEST(ErrorReport, RoundTripAndAggregate) {
  ErrorReport r;
  r.model_name = "m";
  r.manifest_hash = "abc";
  r.seed = 4;
  r.image_ids = {"x", "y"};
  r.cells = {{"fog_3d", 1}, {"fog_3d", 2}};
  Matrix m(2, 2);
  m(0, 0) = 0.1;
  m(1, 0) = 0.3;
  m(0, 1) = 0.5;
  m(1, 1) = 0.7;
  r.per_image = m;
  r.clean_error = 0.05;
  r.mce_value = 87.5;
  r.baseline_name = "base";
  r.aggregate();
  EXPECT_NEAR((r.per_cell[{"fog_3d", 1}]), 0.2, 1e-12);
  EXPECT_NEAR((r.per_cell[{"fog_3d", 2}]), 0.6, 1e-12);
  const auto dir = test::temp_dir("report");
  r.save(dir / "r.json");
  const ErrorReport back = ErrorReport::load(dir / "r.json");
  EXPECT_EQ(back.to_json(), r.to_json());
  EXPECT_EQ(back.per_image->data, m.data);
  EXPECT_EQ(*back.mce_value, 87.5);
  EXPECT_THROW(ErrorReport::from_json(nlohmann::json::object()), Error);
}
