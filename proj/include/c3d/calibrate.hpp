#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "c3d/corruption.hpp"
#include "c3d/parallel.hpp"
#include "c3d/ssim.hpp"

namespace c3d {

using SsimLadder = std::array<double, kSeverities>;

inline constexpr SsimLadder kDefaultLadder{0.85, 0.75, 0.65, 0.55, 0.45};

struct CalibrationSample {
  std::string id;
  RgbImage image;
  DepthMap depth;
  CameraIntrinsics intrinsics;
  std::uint64_t key = 0;  // per-image stream key, normally hash_string(id)
};

// Parameter interval from the clean end to the strongest setting; `mild`
// may exceed `strong` for parameters that weaken the corruption as they grow.
struct SearchRange {
  enum class Domain { continuous, integer, discrete_scan };
  double mild = 0.0;
  double strong = 1.0;
  Domain domain = Domain::continuous;
};

inline SearchRange default_search_range(Kind k) {
  using D = SearchRange::Domain;
  switch (k) {
    case Kind::near_focus:
    case Kind::far_focus: return {0.0, 20.0, D::continuous};
    case Kind::xy_motion_blur: return {0.0, 3.0, D::continuous};
    case Kind::z_motion_blur: return {0.0, 3.0, D::continuous};
    case Kind::fog_3d: return {0.0, 2.0, D::continuous};
    case Kind::low_light_noise: return {1e5, 1.0, D::continuous};
    case Kind::iso_noise: return {0.0, 0.5, D::continuous};
    case Kind::color_quant: return {8.0, 1.0, D::discrete_scan};
    case Kind::abr_compression: return {5e6, 5e3, D::continuous};
    case Kind::crf_compression: return {0.0, 51.0, D::integer};
    case Kind::bit_error: return {0.0, 4000.0, D::integer};
    case Kind::defocus_2d: return {0.0, 30.0, D::continuous};
    case Kind::motion_2d: return {0.0, 80.0, D::continuous};
    case Kind::fog_2d: return {0.0, 5.0, D::continuous};
  }
  return {};
}

// Kinds whose targets can come from a reference set of uniform 2D corruptions.
inline bool has_2d_counterpart(Kind k) {
  switch (k) {
    case Kind::near_focus:
    case Kind::far_focus:
    case Kind::xy_motion_blur:
    case Kind::z_motion_blur:
    case Kind::fog_3d: return true;
    default: return false;
  }
}

// Clean/corrupted pairs per severity.
using ReferenceSet = std::array<std::vector<std::pair<RgbImage, RgbImage>>, kSeverities>;

enum class TargetSource { ladder, reference };

inline SsimLadder default_targets(Kind kind, TargetSource source = TargetSource::ladder,
                                  const ReferenceSet* reference = nullptr) {
  if (source == TargetSource::ladder || !has_2d_counterpart(kind)) return kDefaultLadder;
  if (!reference) throw Error(std::string(to_string(kind)) + ": reference targets requested but no reference set given");
  SsimLadder targets{};
  for (int s = 0; s < kSeverities; ++s) {
    const auto& pairs = (*reference)[s];
    if (pairs.empty()) throw Error("reference set has no pairs for severity " + std::to_string(s + 1));
    double sum = 0.0;
    for (const auto& [clean, corrupted] : pairs) sum += ssim(clean, corrupted);
    targets[s] = sum / static_cast<double>(pairs.size());
  }
  return targets;
}

struct CalibrationOptions {
  double tolerance = 0.01;
  int max_iterations = 24;
  int workers = 1;
  // Record the nearer endpoint (unconverged) instead of throwing when a target is not bracketed.
  bool clamp_unbracketed = false;
  Settings settings{};
};

struct CalibrationEntry {
  int severity = 1;
  double value = 0.0;
  double target = 0.0;
  double achieved = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct KindCalibration {
  Kind kind = Kind::fog_3d;
  SsimLadder targets{};
  double clean_value = 0.0;  // mild endpoint
  double clean_ssim = 1.0;   // mean SSIM at the mild endpoint, severity 1
  std::array<CalibrationEntry, kSeverities> entries{};
};

inline double mean_corruption_ssim(Kind kind, int severity, double value, std::span<const CalibrationSample> sample,
                                   std::uint64_t seed, const CalibrationOptions& opt, const Codec* codec = nullptr) {
  if (sample.empty()) throw Error("calibration sample is empty");
  std::vector<double> scores(sample.size());
  parallel_for(sample.size(), opt.workers, [&](std::size_t i) {
    const CalibrationSample& s = sample[i];
    const CorruptionSpec spec = make_spec(kind, severity, value, seed, s.key, opt.settings);
    const RgbImage out = apply_corruption(spec, {s.image, &s.depth, s.intrinsics}, codec, opt.settings);
    scores[i] = ssim(s.image, out);
  });
  double sum = 0.0;
  for (double v : scores) sum += v;
  return sum / static_cast<double>(scores.size());
}

// Fits one parameter per severity so the sample's mean SSIM meets each
// target, by bisection between the range endpoints (or exhaustive scan for
// discrete parameters).
inline KindCalibration calibrate_kind(Kind kind, const SsimLadder& targets, std::span<const CalibrationSample> sample,
                                      const SearchRange& range, std::uint64_t seed, const CalibrationOptions& opt = {},
                                      const Codec* codec = nullptr) {
  for (int s = 1; s < kSeverities; ++s)
    if (!(targets[s] < targets[s - 1])) throw Error("calibration targets must be strictly decreasing");
  const std::string name(to_string(kind));
  KindCalibration result{kind, targets, range.mild, 1.0, {}};
  auto eval = [&](int severity, double value) {
    return mean_corruption_ssim(kind, severity, value, sample, seed, opt, codec);
  };
  const double tol = opt.tolerance;

  if (range.domain == SearchRange::Domain::discrete_scan) {
    const double step = range.strong >= range.mild ? 1.0 : -1.0;
    std::vector<std::pair<double, double>> scan;  // (value, ssim)
    for (double v = range.mild; step > 0 ? v <= range.strong : v >= range.strong; v += step)
      scan.emplace_back(v, eval(1, v));
    result.clean_ssim = scan.front().second;
    for (int s = 0; s < kSeverities; ++s) {
      const auto best = std::min_element(scan.begin(), scan.end(), [&](const auto& a, const auto& b) {
        return std::abs(a.second - targets[s]) < std::abs(b.second - targets[s]);
      });
      result.entries[s] = {s + 1, best->first, targets[s], best->second, static_cast<int>(scan.size()),
                           std::abs(best->second - targets[s]) <= tol};
    }
    return result;
  }

  const bool integer = range.domain == SearchRange::Domain::integer;
  for (int s = 0; s < kSeverities; ++s) {
    const int severity = s + 1;
    const double target = targets[s];
    const double f_mild = eval(severity, range.mild);
    const double f_strong = eval(severity, range.strong);
    if (s == 0) result.clean_ssim = f_mild;
    if (f_mild < f_strong)
      throw Error(name + ": mean SSIM increases toward the strong end of the search range (" + std::to_string(f_mild) +
                  " < " + std::to_string(f_strong) + ")");
    CalibrationEntry e{severity, range.mild, target, f_mild, 0, false};
    if (std::abs(f_mild - target) <= tol) {
      e.converged = true;
    } else if (std::abs(f_strong - target) <= tol) {
      e = {severity, range.strong, target, f_strong, 0, true};
    } else if (opt.clamp_unbracketed && target > f_mild) {
      // keep the mild endpoint
    } else if (opt.clamp_unbracketed && target < f_strong) {
      e = {severity, range.strong, target, f_strong, 0, false};
    } else if (target > f_mild || target < f_strong) {
      throw Error(name + ": search range does not bracket target " + std::to_string(target) + " at severity " +
                  std::to_string(severity) + " (SSIM spans [" + std::to_string(f_strong) + ", " +
                  std::to_string(f_mild) + "])");
    } else {
      double a = range.mild, b = range.strong;
      double fa = f_mild, fb = f_strong;
      for (int it = 1; it <= opt.max_iterations; ++it) {
        double mid = 0.5 * (a + b);
        if (integer) {
          if (std::abs(b - a) <= 1.0) break;
          mid = std::floor(mid);
        }
        const double fm = eval(severity, mid);
        e.iterations = it;
        e.value = mid;
        e.achieved = fm;
        if (std::abs(fm - target) <= tol) {
          e.converged = true;
          break;
        }
        if (fm > target) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
          fb = fm;
        }
      }
      if (!e.converged && integer) {
        // Bracket collapsed to adjacent integers: keep the closer end.
        const bool take_a = std::abs(fa - target) <= std::abs(fb - target);
        e.value = take_a ? a : b;
        e.achieved = take_a ? fa : fb;
        e.converged = std::abs(e.achieved - target) <= tol;
      }
    }
    result.entries[s] = e;
  }
  return result;
}

inline std::string manifest_hash(const std::vector<std::string>& ids) {
  std::uint64_t h = hash_string("manifest");
  for (const auto& id : ids) h = hash_combine(h, hash_string(id));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

class CalibrationTable {
 public:
  static constexpr std::string_view kFormat = "c3d-calibration/1";

  std::uint64_t seed = 0;
  std::vector<std::string> sample_manifest;
  std::vector<KindCalibration> kinds;

  std::string manifest_hash() const { return c3d::manifest_hash(sample_manifest); }

  const KindCalibration* find(Kind k) const {
    for (const auto& kc : kinds)
      if (kc.kind == k) return &kc;
    return nullptr;
  }
  bool covers(Kind k) const { return find(k) != nullptr; }

  double value(Kind k, int severity) const {
    const KindCalibration* kc = find(k);
    if (!kc) throw Error("calibration table has no entry for " + std::string(to_string(k)));
    if (severity < 1 || severity > kSeverities) throw Error("severity must be in 1..5");
    return kc->entries[severity - 1].value;
  }

  void set(KindCalibration kc) {
    for (auto& existing : kinds)
      if (existing.kind == kc.kind) {
        existing = std::move(kc);
        return;
      }
    kinds.push_back(std::move(kc));
  }

  nlohmann::json to_json() const {
    nlohmann::json j{{"format", kFormat},
                     {"seed", seed},
                     {"manifest_hash", manifest_hash()},
                     {"sample_manifest", sample_manifest},
                     {"kinds", nlohmann::json::array()}};
    for (const auto& kc : kinds) {
      nlohmann::json k{{"kind", to_string(kc.kind)},
                       {"parameter", info(kc.kind).parameter},
                       {"targets", kc.targets},
                       {"clean", {{"value", kc.clean_value}, {"ssim", kc.clean_ssim}}},
                       {"entries", nlohmann::json::array()}};
      for (const auto& e : kc.entries)
        k["entries"].push_back({{"severity", e.severity},
                                {"value", e.value},
                                {"target", e.target},
                                {"achieved_ssim", e.achieved},
                                {"iterations", e.iterations},
                                {"converged", e.converged}});
      j["kinds"].push_back(std::move(k));
    }
    return j;
  }

  static CalibrationTable from_json(const nlohmann::json& j) {
    try {
      if (j.at("format").get<std::string>() != kFormat) throw Error("unsupported calibration table format");
      CalibrationTable t;
      t.seed = j.value("seed", std::uint64_t{0});
      t.sample_manifest = j.value("sample_manifest", std::vector<std::string>{});
      for (const auto& k : j.at("kinds")) {
        KindCalibration kc;
        kc.kind = parse_kind(k.at("kind").get<std::string>());
        kc.targets = k.at("targets").get<SsimLadder>();
        kc.clean_value = k.at("clean").at("value").get<double>();
        kc.clean_ssim = k.at("clean").at("ssim").get<double>();
        const auto& entries = k.at("entries");
        if (entries.size() != kSeverities) throw Error("calibration entry needs 5 severities");
        for (int s = 0; s < kSeverities; ++s) {
          const auto& e = entries[s];
          kc.entries[s] = {e.at("severity").get<int>(),     e.at("value").get<double>(),
                           e.at("target").get<double>(),    e.at("achieved_ssim").get<double>(),
                           e.at("iterations").get<int>(),   e.at("converged").get<bool>()};
        }
        t.kinds.push_back(kc);
      }
      return t;
    } catch (const nlohmann::json::exception& e) {
      throw Error(std::string("malformed calibration table: ") + e.what());
    }
  }

  static CalibrationTable load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open calibration table " + path.string());
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw Error("calibration table " + path.string() + " is not valid JSON: " + e.what());
    }
    return from_json(j);
  }

  // Writes to a sibling temporary file and renames it into place.
  void save(const std::filesystem::path& path) const {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
      std::ofstream out(tmp);
      out << to_json().dump(2) << "\n";
      if (!out) throw Error("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
  }
};

}  // namespace c3d
