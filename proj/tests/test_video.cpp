#include <gtest/gtest.h>

#include <bit>
#include <cstdlib>

#include "support.hpp"

using namespace c3d;

namespace {

Codec fake_codec() { return Codec(EncoderConfig::ffmpeg(C3D_FAKE_CODEC)); }

std::vector<RgbImage> clip(int n, int w = 48, int h = 32) {
  std::vector<RgbImage> frames;
  for (int i = 0; i < n; ++i) frames.push_back(test::texture_image(w, h, 30 + i));
  return frames;
}

CodecParams crf(int q) {
  CodecParams p;
  p.drive = CodecDrive::crf;
  p.crf = q;
  return p;
}

double mean_ssim(const std::vector<RgbImage>& a, const std::vector<RgbImage>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += ssim(a[i], b[i]);
  return s / static_cast<double>(a.size());
}

}  // namespace

TEST(RawFrames, RoundTripAt8Bits) {
  const auto frames = clip(3);
  const auto back = raw_to_frames(frames_to_raw(frames), 48, 32);
  ASSERT_EQ(back.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_LE(test::max_abs_diff(back[i], frames[i]), 0.5 / 255.0 + 1e-6);
  EXPECT_THROW(raw_to_frames(std::vector<std::uint8_t>(100), 48, 32), Error);
}

TEST(FlipBits, CountAndHeaderPreserved) {
  std::vector<std::uint8_t> stream(1000, 0);
  Rng rng(1, 1);
  auto s = stream;
  flip_bits(s, 0, 512, rng);
  EXPECT_EQ(s, stream);
  flip_bits(s, 20, 512, rng);
  int bits = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i < 512) {
      EXPECT_EQ(s[i], 0);
    }
    bits += std::popcount(s[i]);
  }
  EXPECT_EQ(bits, 20);
  auto tiny = std::vector<std::uint8_t>(512, 0);
  EXPECT_THROW(flip_bits(tiny, 1, 512, rng), Error);
}

TEST(MiddleFrame, Index) {
  EXPECT_EQ(middle_frame_index(10), 5u);
  EXPECT_EQ(middle_frame_index(1), 0u);
}

TEST(Codec, LosslessRoundTrip) {
  const Codec codec = fake_codec();
  const auto frames = clip(4);
  const auto out = codec.encode_decode(frames, crf(0));
  ASSERT_EQ(out.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_LE(test::max_abs_diff(out[i], frames[i]), 2.0 / 255.0);
}

TEST(Codec, QualityFallsWithCrf) {
  const Codec codec = fake_codec();
  const auto frames = clip(3);
  std::vector<double> scores;
  for (int q : {17, 27, 37}) scores.push_back(mean_ssim(codec.encode_decode(frames, crf(q)), frames));
  EXPECT_LE(scores[1], scores[0]);
  EXPECT_LE(scores[2], scores[1]);
  EXPECT_LT(scores[2], scores[0]);
}

TEST(Codec, QualityRisesWithBitrate) {
  const Codec codec = fake_codec();
  const auto frames = clip(2);
  CodecParams lo, hi;
  lo.drive = hi.drive = CodecDrive::bitrate;
  lo.target_bitrate = 5e4;
  hi.target_bitrate = 2e6;
  EXPECT_LT(mean_ssim(codec.encode_decode(frames, lo), frames), mean_ssim(codec.encode_decode(frames, hi), frames));
}

TEST(Codec, SingleFrameClip) {
  const Codec codec = fake_codec();
  EXPECT_EQ(codec.encode_decode(clip(1), crf(10)).size(), 1u);
}

TEST(Codec, BitErrors) {
  const Codec codec = fake_codec();
  const auto frames = clip(2);
  CodecParams p = crf(0);
  p.drive = CodecDrive::bit_flips;
  Rng rng(3, 3);
  const auto clean = codec.bit_error(frames, p, rng);
  EXPECT_EQ(clean, codec.encode_decode(frames, p));
  p.n_bit_flips = 20;
  const auto hit = codec.bit_error(frames, p, rng);
  EXPECT_NE(hit, clean);
  double diff = 0.0;
  for (std::size_t i = 0; i < hit.size(); ++i) diff += test::max_abs_diff(hit[i], clean[i]);
  EXPECT_GT(diff, 0.0);
}

TEST(Codec, EncoderFailureIsReported) {
  ::setenv("FAKE_CODEC_FAIL", "1", 1);
  const Codec codec = fake_codec();
  EXPECT_THROW(codec.encode_decode(clip(1), crf(10)), Error);
  ::unsetenv("FAKE_CODEC_FAIL");
}

TEST(Codec, MissingExecutable) {
  const Codec codec(EncoderConfig::ffmpeg("/nonexistent/encoder"));
  EXPECT_THROW(codec.encode_decode(clip(1), crf(10)), Error);
  EXPECT_THROW(Codec(EncoderConfig{}), Error);
}

TEST(EncoderConfig, JsonRoundTripAndDefaults) {
  EncoderConfig c = EncoderConfig::ffmpeg("/usr/bin/ffmpeg");
  c.max_processes = 5;
  const nlohmann::json j = c;
  const EncoderConfig back = j.get<EncoderConfig>();
  EXPECT_EQ(back.executable, c.executable);
  EXPECT_EQ(back.encode_args, c.encode_args);
  EXPECT_EQ(back.max_processes, 5);
  const EncoderConfig partial = nlohmann::json{{"executable", "x"}}.get<EncoderConfig>();
  EXPECT_EQ(partial.decode_args, EncoderConfig::ffmpeg().decode_args);
}

TEST(EncoderConfig, TemplateSubstitution) {
  EXPECT_EQ(detail::substitute("{width}x{height}", {{"width", "64"}, {"height", "48"}}), "64x48");
  EXPECT_EQ(detail::substitute("{a}{a}", {{"a", "{a}"}}), "{a}{a}");
  EXPECT_EQ(detail::format_number(30.0), "30");
}

TEST(VideoCorruption, CrfSeverityOrdering) {
  const Codec codec = fake_codec();
  const auto s = make_scene(3, 64, 64);
  const Settings settings;
  auto run = [&](int sev, double value) {
    return apply_corruption(make_spec(Kind::crf_compression, sev, value, 1, s.key, settings),
                            {s.image, &s.depth, s.intrinsics}, &codec, settings);
  };
  EXPECT_LT(ssim(run(5, 45), s.image), ssim(run(1, 5), s.image));
}

TEST(VideoCorruption, DeterministicAndNeedsEncoder) {
  const Codec codec = fake_codec();
  const auto s = make_scene(4, 64, 64);
  const auto spec = make_spec(Kind::bit_error, 3, 50, 9, s.key);
  EXPECT_EQ(apply_corruption(spec, {s.image, &s.depth, s.intrinsics}, &codec),
            apply_corruption(spec, {s.image, &s.depth, s.intrinsics}, &codec));
  EXPECT_THROW(apply_corruption(spec, {s.image, &s.depth, s.intrinsics}), UnavailableError);
}
