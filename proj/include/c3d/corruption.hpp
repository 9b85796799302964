#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "c3d/camera.hpp"
#include "c3d/dof.hpp"
#include "c3d/fog.hpp"
#include "c3d/image.hpp"
#include "c3d/motion.hpp"
#include "c3d/noise.hpp"
#include "c3d/reference2d.hpp"
#include "c3d/rng.hpp"
#include "c3d/video.hpp"

namespace c3d {

enum class Kind {
  near_focus,
  far_focus,
  xy_motion_blur,
  z_motion_blur,
  fog_3d,
  low_light_noise,
  iso_noise,
  color_quant,
  abr_compression,
  crf_compression,
  bit_error,
  defocus_2d,
  motion_2d,
  fog_2d,
};

inline constexpr std::array<Kind, 14> kAllKinds{
    Kind::near_focus,      Kind::far_focus,       Kind::xy_motion_blur, Kind::z_motion_blur, Kind::fog_3d,
    Kind::low_light_noise, Kind::iso_noise,       Kind::color_quant,    Kind::abr_compression,
    Kind::crf_compression, Kind::bit_error,       Kind::defocus_2d,     Kind::motion_2d,     Kind::fog_2d};

inline constexpr int kSeverities = 5;

// Name, calibrated parameter name, needs depth, needs encoder.
struct KindInfo {
  std::string_view name;
  std::string_view parameter;
  bool needs_depth;
  bool needs_encoder;
};

inline constexpr KindInfo info(Kind k) {
  switch (k) {
    case Kind::near_focus: return {"near_focus", "aperture", true, false};
    case Kind::far_focus: return {"far_focus", "aperture", true, false};
    case Kind::xy_motion_blur: return {"xy_motion_blur", "extent", true, false};
    case Kind::z_motion_blur: return {"z_motion_blur", "extent", true, false};
    case Kind::fog_3d: return {"fog_3d", "beta", true, false};
    case Kind::low_light_noise: return {"low_light_noise", "photon_level", false, false};
    case Kind::iso_noise: return {"iso_noise", "read_sigma", false, false};
    case Kind::color_quant: return {"color_quant", "bit_depth", false, false};
    case Kind::abr_compression: return {"abr_compression", "target_bitrate", true, true};
    case Kind::crf_compression: return {"crf_compression", "crf", true, true};
    case Kind::bit_error: return {"bit_error", "n_bit_flips", true, true};
    case Kind::defocus_2d: return {"defocus_2d", "radius", false, false};
    case Kind::motion_2d: return {"motion_2d", "length", false, false};
    case Kind::fog_2d: return {"fog_2d", "beta", false, false};
  }
  return {"?", "?", false, false};
}

inline std::string_view to_string(Kind k) { return info(k).name; }

inline Kind parse_kind(std::string_view s) {
  for (Kind k : kAllKinds)
    if (info(k).name == s) return k;
  throw Error("unknown corruption kind '" + std::string(s) + "'");
}

// Fixed, severity-independent settings shared by every corruption.
struct Settings {
  double focal_length = 0.05;
  int dof_layers = 12;
  int motion_frames = 10;
  std::array<float, 3> atmosphere{0.92f, 0.92f, 0.92f};
  double iso_photon_level = kIsoPhotonLevel;
  double low_light_read_sigma = 0.01;
  VideoSynthesis video{};
  int bit_error_base_crf = 23;
  std::string codec_id = "libx265";
  double fog_2d_reference_depth = 1.0;
};

using KindParams = std::variant<DofParams, MotionParams, FogParams, NoiseParams, CodecParams, Defocus2dParams,
                                Motion2dParams, Fog2dParams>;

struct CorruptionSpec {
  Kind kind = Kind::fog_3d;
  int severity = 1;
  double value = 0.0;  // the calibrated scalar the params were resolved from
  KindParams params;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  Rng rng() const { return Rng(seed, stream_id); }
};

// Stream identity of one work unit; independent of scheduling order.
inline std::uint64_t derive_stream_id(std::uint64_t image_key, Kind kind, int severity) {
  return hash_combine(hash_combine(image_key, static_cast<std::uint64_t>(kind) + 1),
                      static_cast<std::uint64_t>(severity));
}

inline KindParams resolve_params(Kind kind, int severity, double value, const Settings& s = {}) {
  switch (kind) {
    case Kind::near_focus:
    case Kind::far_focus: {
      DofParams p;
      p.aperture = value;
      p.focal_length = s.focal_length;
      p.n_layers = s.dof_layers;
      p.focus_mode = kind == Kind::near_focus ? FocusMode::near : FocusMode::far;
      p.focus_distance = 1.0;  // replaced per image by select_focus_distance
      return p;
    }
    case Kind::xy_motion_blur:
    case Kind::z_motion_blur:
      return MotionParams{value, s.motion_frames, kind == Kind::xy_motion_blur ? MotionMode::xy : MotionMode::z};
    case Kind::fog_3d: return FogParams{value, s.atmosphere};
    case Kind::low_light_noise:
      return NoiseParams{kLowLightIntensityScale[severity - 1], value, s.low_light_read_sigma, 8};
    case Kind::iso_noise: return NoiseParams{1.0, s.iso_photon_level, value, 8};
    case Kind::color_quant: return NoiseParams{1.0, s.iso_photon_level, 0.0, static_cast<int>(std::lround(value))};
    case Kind::abr_compression:
    case Kind::crf_compression:
    case Kind::bit_error: {
      CodecParams p;
      p.codec_id = s.codec_id;
      p.frame_rate = s.video.frame_rate;
      if (kind == Kind::abr_compression) {
        p.drive = CodecDrive::bitrate;
        p.target_bitrate = value;
      } else if (kind == Kind::crf_compression) {
        p.drive = CodecDrive::crf;
        p.crf = static_cast<int>(std::lround(value));
      } else {
        p.drive = CodecDrive::bit_flips;
        p.crf = s.bit_error_base_crf;
        p.n_bit_flips = static_cast<int>(std::lround(value));
      }
      return p;
    }
    case Kind::defocus_2d: return Defocus2dParams{value};
    case Kind::motion_2d: return Motion2dParams{value};
    case Kind::fog_2d: return Fog2dParams{value, s.fog_2d_reference_depth, s.atmosphere};
  }
  throw Error("unhandled corruption kind");
}

inline CorruptionSpec make_spec(Kind kind, int severity, double value, std::uint64_t seed, std::uint64_t image_key,
                                const Settings& s = {}) {
  if (severity < 1 || severity > kSeverities) throw Error("severity must be in 1..5");
  return {kind, severity, value, resolve_params(kind, severity, value, s), seed,
          derive_stream_id(image_key, kind, severity)};
}

// Content hash of everything that determines a spec's output.
inline std::string spec_hash(const CorruptionSpec& spec) {
  std::uint64_t h = hash_string(to_string(spec.kind));
  h = hash_combine(h, static_cast<std::uint64_t>(spec.severity));
  h = hash_combine(h, std::bit_cast<std::uint64_t>(spec.value));
  h = hash_combine(h, spec.seed);
  h = hash_combine(h, spec.stream_id);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

class UnavailableError : public Error {
 public:
  using Error::Error;
};

struct SceneInput {
  const RgbImage& image;
  const DepthMap* depth = nullptr;  // required by geometry-aware kinds
  CameraIntrinsics intrinsics;
};

inline RgbImage apply_corruption(const CorruptionSpec& spec, const SceneInput& scene, const Codec* codec = nullptr,
                                 const Settings& settings = {}) {
  const RgbImage& img = scene.image;
  const KindInfo ki = info(spec.kind);
  if (ki.needs_depth && !scene.depth) throw Error(std::string(ki.name) + " requires a depth map");
  if (ki.needs_encoder && !codec) throw UnavailableError(std::string(ki.name) + ": no video encoder configured");
  Rng rng = spec.rng();
  switch (spec.kind) {
    case Kind::near_focus:
    case Kind::far_focus: {
      DofParams p = std::get<DofParams>(spec.params);
      const double focus = select_focus_distance(*scene.depth, p.focus_mode, rng);
      p.focus_distance = std::max(focus, 2.0 * p.focal_length);
      return refocus(img, *scene.depth, scene.intrinsics, p);
    }
    case Kind::xy_motion_blur:
    case Kind::z_motion_blur: {
      const auto& p = std::get<MotionParams>(spec.params);
      return motion_blur(img, *scene.depth, scene.intrinsics, make_trajectory(p.mode, p.extent, p.n_frames, rng));
    }
    case Kind::fog_3d: return apply_fog(img, *scene.depth, std::get<FogParams>(spec.params));
    case Kind::low_light_noise: return low_light(img, std::get<NoiseParams>(spec.params), rng);
    case Kind::iso_noise: return iso_noise(img, std::get<NoiseParams>(spec.params), rng);
    case Kind::color_quant: return color_quant(img, std::get<NoiseParams>(spec.params).bit_depth);
    case Kind::abr_compression:
    case Kind::crf_compression:
    case Kind::bit_error: {
      const VideoKind vk = spec.kind == Kind::abr_compression   ? VideoKind::abr
                           : spec.kind == Kind::crf_compression ? VideoKind::crf
                                                                : VideoKind::bit_error;
      return video_corruption(img, *scene.depth, scene.intrinsics, vk, std::get<CodecParams>(spec.params), *codec,
                              rng, settings.video);
    }
    case Kind::defocus_2d: return defocus_2d(img, std::get<Defocus2dParams>(spec.params));
    case Kind::motion_2d:
      return motion_2d(img, std::get<Motion2dParams>(spec.params), rng.uniform(0.0, 2.0 * std::numbers::pi));
    case Kind::fog_2d: return fog_2d(img, std::get<Fog2dParams>(spec.params));
  }
  throw Error("unhandled corruption kind");
}

}  // namespace c3d
