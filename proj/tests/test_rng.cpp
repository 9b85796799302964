#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace c3d;

TEST(Rng, SameSeedAndStreamRepeat) {
  Rng a(42, 7), b(42, 7);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(Rng, DifferentStreamsDiffer) {
  Rng a(42, 7), b(42, 8), c(43, 7);
  int same_b = 0, same_c = 0;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    same_b += x == b.next_u64();
    same_c += x == c.next_u64();
  }
  EXPECT_EQ(same_b, 0);
  EXPECT_EQ(same_c, 0);
}

TEST(Rng, SubstreamIgnoresParentPosition) {
  Rng a(1, 2);
  const Rng fresh(1, 2);
  for (int i = 0; i < 10; ++i) a.next_u64();
  Rng s1 = a.substream(3), s2 = fresh.substream(3);
  EXPECT_EQ(s1.next_u64(), s2.next_u64());
  Rng s3 = fresh.substream(4);
  Rng s4 = fresh.substream(3);
  EXPECT_NE(s3.next_u64(), s4.next_u64());
}

TEST(Rng, UniformAndBelowStayInRange) {
  Rng r(9, 9);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    ASSERT_LT(r.below(7), 7u);
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.01);
}

TEST(Rng, NormalMoments) {
  Rng r(3, 3);
  const int n = 200000;
  double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    const double v = r.normal();
    s += v;
    s2 += v * v;
  }
  EXPECT_NEAR(s / n, 0.0, 0.01);
  EXPECT_NEAR(s2 / n, 1.0, 0.02);
}

TEST(Rng, PoissonMomentsOnBothSamplingRegimes) {
  for (double mean : {0.7, 4.0, 25.0, 400.0}) {
    Rng r(11, static_cast<std::uint64_t>(mean * 10));
    const int n = 200000;
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
      const double v = static_cast<double>(r.poisson(mean));
      s += v;
      s2 += v * v;
    }
    const double m = s / n, var = s2 / n - m * m;
    EXPECT_NEAR(m, mean, 4 * std::sqrt(mean / n)) << mean;
    EXPECT_NEAR(var / mean, 1.0, 0.03) << mean;
  }
  Rng r(1, 1);
  EXPECT_EQ(r.poisson(0.0), 0u);
}

TEST(StreamIds, DistinctPerUnit) {
  std::set<std::uint64_t> ids;
  for (std::uint64_t img = 0; img < 20; ++img)
    for (Kind k : kAllKinds)
      for (int s = 1; s <= 5; ++s) ids.insert(derive_stream_id(img, k, s));
  EXPECT_EQ(ids.size(), 20u * kAllKinds.size() * 5u);
}

TEST(Hash, StableValues) {
  // FNV-1a reference values.
  EXPECT_EQ(hash_string(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(hash_string("a"), 0xaf63dc4c8601ec8cull);
}
