#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <semaphore>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "c3d/camera.hpp"
#include "c3d/image.hpp"
#include "c3d/io.hpp"
#include "c3d/motion.hpp"
#include "c3d/process.hpp"
#include "c3d/rng.hpp"

namespace c3d {

enum class CodecDrive { crf, bitrate, bit_flips };

struct CodecParams {
  std::string codec_id = "libx265";
  CodecDrive drive = CodecDrive::crf;
  int crf = 23;                 // also the base quality for bit_flips
  double target_bitrate = 0.0;  // bits per second
  int n_bit_flips = 0;
  double frame_rate = 30.0;
};

// How to talk to the external encoder. Arguments are templates: {width},
// {height}, {fps}, {codec}, {crf}, {bitrate} are substituted, and the lone
// tokens {rate_control} / {tolerant} expand to the matching argument lists.
struct EncoderConfig {
  std::string executable;
  std::vector<std::string> encode_args;
  std::vector<std::string> decode_args;
  std::vector<std::string> crf_args;
  std::vector<std::string> bitrate_args;
  std::vector<std::string> tolerant_decode_args;
  std::size_t header_bytes = 512;
  int max_processes = 2;

  static EncoderConfig ffmpeg(std::string executable = "ffmpeg") {
    EncoderConfig c;
    c.executable = std::move(executable);
    c.encode_args = {"-hide_banner", "-loglevel", "error", "-f", "rawvideo", "-pix_fmt", "rgb24",
                     "-s", "{width}x{height}", "-r", "{fps}", "-i", "pipe:0", "-c:v", "{codec}",
                     "-x265-params", "log-level=error", "{rate_control}", "-f", "hevc", "pipe:1"};
    c.decode_args = {"-hide_banner", "-loglevel", "error", "{tolerant}", "-f", "hevc", "-i", "pipe:0",
                     "-f", "rawvideo", "-pix_fmt", "rgb24", "pipe:1"};
    c.crf_args = {"-crf", "{crf}"};
    c.bitrate_args = {"-b:v", "{bitrate}"};
    c.tolerant_decode_args = {"-err_detect", "ignore_err"};
    return c;
  }
};

inline void to_json(nlohmann::json& j, const EncoderConfig& c) {
  j = {{"executable", c.executable},     {"encode_args", c.encode_args},   {"decode_args", c.decode_args},
       {"crf_args", c.crf_args},         {"bitrate_args", c.bitrate_args}, {"tolerant_decode_args", c.tolerant_decode_args},
       {"header_bytes", c.header_bytes}, {"max_processes", c.max_processes}};
}

// Missing fields fall back to the ffmpeg templates.
inline void from_json(const nlohmann::json& j, EncoderConfig& c) {
  c = EncoderConfig::ffmpeg(j.value("executable", std::string("ffmpeg")));
  if (j.contains("encode_args")) j.at("encode_args").get_to(c.encode_args);
  if (j.contains("decode_args")) j.at("decode_args").get_to(c.decode_args);
  if (j.contains("crf_args")) j.at("crf_args").get_to(c.crf_args);
  if (j.contains("bitrate_args")) j.at("bitrate_args").get_to(c.bitrate_args);
  if (j.contains("tolerant_decode_args")) j.at("tolerant_decode_args").get_to(c.tolerant_decode_args);
  c.header_bytes = j.value("header_bytes", c.header_bytes);
  c.max_processes = j.value("max_processes", c.max_processes);
}

namespace detail {

inline std::string substitute(std::string s, const std::vector<std::pair<std::string, std::string>>& vars) {
  for (const auto& [key, value] : vars) {
    const std::string token = "{" + key + "}";
    for (std::size_t pos = s.find(token); pos != std::string::npos; pos = s.find(token, pos + value.size()))
      s.replace(pos, token.size(), value);
  }
  return s;
}

inline std::string format_number(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) return std::to_string(static_cast<long long>(v));
  return std::to_string(v);
}

}  // namespace detail

// Raw 8-bit RGB, frames back to back.
inline std::vector<std::uint8_t> frames_to_raw(const std::vector<RgbImage>& frames) {
  std::vector<std::uint8_t> raw;
  for (const RgbImage& f : frames) {
    const Raster q = quantize(f, 8);
    raw.insert(raw.end(), q.samples.begin(), q.samples.end());
  }
  return raw;
}

inline std::vector<RgbImage> raw_to_frames(const std::vector<std::uint8_t>& raw, int width, int height) {
  const std::size_t frame_bytes = static_cast<std::size_t>(width) * height * 3;
  if (raw.empty() || raw.size() % frame_bytes != 0) throw Error("decoded stream is not a whole number of frames");
  std::vector<RgbImage> frames;
  for (std::size_t off = 0; off < raw.size(); off += frame_bytes) {
    RgbImage f(width, height);
    auto v = f.values();
    for (std::size_t i = 0; i < frame_bytes; ++i) v[i] = static_cast<float>(raw[off + i] / 255.0);
    frames.push_back(std::move(f));
  }
  return frames;
}

// Flips `count` distinct bits chosen uniformly outside the first
// `header_bytes` bytes.
inline void flip_bits(std::vector<std::uint8_t>& stream, int count, std::size_t header_bytes, Rng& rng) {
  if (count <= 0) return;
  if (stream.size() <= header_bytes) throw Error("bit_error: bitstream has no bytes past the header");
  const std::uint64_t bits = static_cast<std::uint64_t>(stream.size() - header_bytes) * 8;
  if (static_cast<std::uint64_t>(count) > bits) throw Error("bit_error: more flips than payload bits");
  std::set<std::uint64_t> chosen;
  while (chosen.size() < static_cast<std::size_t>(count)) chosen.insert(rng.below(bits));
  for (std::uint64_t b : chosen) stream[header_bytes + b / 8] ^= static_cast<std::uint8_t>(1u << (b % 8));
}

inline constexpr int kBitErrorAttempts = 8;

// Adapter around an external encoder process. Concurrent calls are capped
// at `max_processes` live encoder/decoder processes.
class Codec {
 public:
  explicit Codec(EncoderConfig config)
      : config_(std::move(config)), slots_(std::max(1, std::min(config_.max_processes, 64))) {
    if (config_.executable.empty()) throw Error("encoder executable not configured");
  }

  const EncoderConfig& config() const { return config_; }

  std::vector<std::uint8_t> encode(const std::vector<RgbImage>& frames, const CodecParams& p) const {
    if (frames.empty()) throw Error("encode: no frames");
    const int w = frames.front().width(), h = frames.front().height();
    for (const RgbImage& f : frames)
      if (!f.same_shape(w, h)) throw Error("encode: frames differ in size");
    const auto vars = variables(w, h, p);
    std::vector<std::string> argv{config_.executable};
    for (const std::string& a : config_.encode_args) {
      if (a == "{rate_control}") {
        const auto& rc = p.drive == CodecDrive::bitrate ? config_.bitrate_args : config_.crf_args;
        for (const std::string& r : rc) argv.push_back(detail::substitute(r, vars));
      } else {
        argv.push_back(detail::substitute(a, vars));
      }
    }
    const ProcessResult r = run(argv, frames_to_raw(frames));
    if (r.exit_code != 0) throw Error("encoder exited with status " + std::to_string(r.exit_code) + ": " + r.err);
    if (r.out.empty()) throw Error("encoder produced an empty bitstream");
    return r.out;
  }

  std::vector<RgbImage> decode(const std::vector<std::uint8_t>& stream, int width, int height,
                               std::size_t expected_frames, bool tolerant) const {
    std::vector<std::string> argv{config_.executable};
    const auto vars = variables(width, height, CodecParams{});
    for (const std::string& a : config_.decode_args) {
      if (a == "{tolerant}") {
        if (tolerant)
          for (const std::string& t : config_.tolerant_decode_args) argv.push_back(detail::substitute(t, vars));
      } else {
        argv.push_back(detail::substitute(a, vars));
      }
    }
    const ProcessResult r = run(argv, stream);
    if (r.exit_code != 0) throw Error("decoder exited with status " + std::to_string(r.exit_code) + ": " + r.err);
    auto frames = raw_to_frames(r.out, width, height);
    if (frames.size() != expected_frames)
      throw Error("decoder produced " + std::to_string(frames.size()) + " frames, expected " +
                  std::to_string(expected_frames));
    return frames;
  }

  std::vector<RgbImage> encode_decode(const std::vector<RgbImage>& frames, const CodecParams& p) const {
    const auto stream = encode(frames, p);
    return decode(stream, frames.front().width(), frames.front().height(), frames.size(), false);
  }

  // Encodes at the base quality, corrupts the payload, and decodes in
  // error-tolerant mode, retrying with fresh bit positions on failure.
  std::vector<RgbImage> bit_error(const std::vector<RgbImage>& frames, const CodecParams& p, Rng& rng) const {
    if (p.n_bit_flips <= 0) return encode_decode(frames, p);
    const auto clean = encode(frames, p);
    std::string last;
    for (int attempt = 0; attempt < kBitErrorAttempts; ++attempt) {
      auto stream = clean;
      flip_bits(stream, p.n_bit_flips, config_.header_bytes, rng);
      try {
        return decode(stream, frames.front().width(), frames.front().height(), frames.size(), true);
      } catch (const Error& e) {
        last = e.what();
      }
    }
    throw Error("bit_error: decoding failed after " + std::to_string(kBitErrorAttempts) + " attempts (" + last + ")");
  }

 private:
  std::vector<std::pair<std::string, std::string>> variables(int w, int h, const CodecParams& p) const {
    return {{"width", std::to_string(w)},
            {"height", std::to_string(h)},
            {"fps", detail::format_number(p.frame_rate)},
            {"codec", p.codec_id},
            {"crf", std::to_string(p.crf)},
            {"bitrate", detail::format_number(std::round(p.target_bitrate))}};
  }

  ProcessResult run(const std::vector<std::string>& argv, const std::vector<std::uint8_t>& input) const {
    slots_.acquire();
    struct Release {
      std::counting_semaphore<64>& s;
      ~Release() { s.release(); }
    } release{slots_};
    return run_process(argv, input);
  }

  EncoderConfig config_;
  mutable std::counting_semaphore<64> slots_;
};

// Encoder from the environment: C3D_ENCODER names the executable (ffmpeg
// argument templates are assumed).
inline std::optional<EncoderConfig> encoder_from_environment() {
  const char* exe = std::getenv("C3D_ENCODER");
  if (!exe || !*exe) return std::nullopt;
  return EncoderConfig::ffmpeg(exe);
}

struct VideoSynthesis {
  double extent = 0.05;  // z-mode camera travel, meters
  int n_frames = 10;
  double frame_rate = 30.0;
};

inline constexpr std::size_t middle_frame_index(std::size_t n_frames) { return n_frames / 2; }

enum class VideoKind { abr, crf, bit_error };

// Synthesizes a short z-motion clip from the single image, runs it through
// the codec path for `kind`, and returns the middle frame.
inline RgbImage video_corruption(const RgbImage& img, const DepthMap& depth, const CameraIntrinsics& intr,
                                 VideoKind kind, CodecParams p, const Codec& codec, Rng& rng,
                                 const VideoSynthesis& synth = {}) {
  const Trajectory traj = make_trajectory(MotionMode::z, synth.extent, synth.n_frames, rng);
  const std::vector<RgbImage> frames = render_frame_sequence(img, depth, intr, traj);
  p.frame_rate = synth.frame_rate;
  std::vector<RgbImage> out;
  switch (kind) {
    case VideoKind::abr:
      p.drive = CodecDrive::bitrate;
      out = codec.encode_decode(frames, p);
      break;
    case VideoKind::crf:
      p.drive = CodecDrive::crf;
      out = codec.encode_decode(frames, p);
      break;
    case VideoKind::bit_error:
      p.drive = CodecDrive::bit_flips;
      out = codec.bit_error(frames, p, rng);
      break;
  }
  return out.at(middle_frame_index(out.size()));
}

}  // namespace c3d
