#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "c3d/bench.hpp"
#include "c3d/builtin_calibration.hpp"
#include "c3d/calibrate.hpp"
#include "c3d/camera.hpp"
#include "c3d/corruption.hpp"
#include "c3d/depth.hpp"
#include "c3d/io.hpp"
#include "c3d/parallel.hpp"
#include "c3d/scenes.hpp"
#include "c3d/ssim.hpp"
#include "c3d/video.hpp"

namespace c3d {

namespace fs = std::filesystem;

struct JobConfig {
  fs::path input_dir;
  fs::path depth_dir;
  fs::path output_dir;
  std::vector<Kind> corruptions;
  std::vector<int> severities{1, 2, 3, 4, 5};
  std::uint64_t seed = 0;
  fs::path calibration_path;  // empty: built-in table
  int workers = 1;
  std::optional<fs::path> intrinsics_path;
  DepthFormat depth_format = DepthFormat::png16_mm;
  std::optional<std::pair<double, double>> predicted_depth_range;
  std::optional<EncoderConfig> encoder;
  Settings settings{};

  static JobConfig from_json(const nlohmann::json& j) {
    JobConfig c;
    try {
      if (j.contains("input_dir")) c.input_dir = j.at("input_dir").get<std::string>();
      if (j.contains("depth_dir")) c.depth_dir = j.at("depth_dir").get<std::string>();
      if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
      if (j.contains("corruptions"))
        for (const auto& k : j.at("corruptions")) c.corruptions.push_back(parse_kind(k.get<std::string>()));
      if (j.contains("severities")) c.severities = j.at("severities").get<std::vector<int>>();
      c.seed = j.value("seed", c.seed);
      if (j.contains("calibration_path")) c.calibration_path = j.at("calibration_path").get<std::string>();
      c.workers = j.value("workers", c.workers);
      if (j.contains("intrinsics_path")) c.intrinsics_path = j.at("intrinsics_path").get<std::string>();
      if (j.contains("depth_format")) c.depth_format = parse_depth_format(j.at("depth_format").get<std::string>());
      if (j.contains("predicted_depth_range")) {
        const auto r = j.at("predicted_depth_range").get<std::vector<double>>();
        if (r.size() != 2) throw Error("predicted_depth_range needs [d_min, d_max]");
        c.predicted_depth_range = std::pair{r[0], r[1]};
      }
      if (j.contains("encoder")) c.encoder = j.at("encoder").get<EncoderConfig>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(std::string("malformed job config: ") + e.what());
    }
    return c;
  }

  static JobConfig load(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config " + path.string());
    try {
      return from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error("config " + path.string() + " is not valid JSON: " + e.what());
    }
  }

  // C3D_ENCODER (encoder executable) and C3D_WORKERS override the file.
  void apply_environment() {
    if (auto enc = encoder_from_environment()) encoder = *enc;
    if (const char* w = std::getenv("C3D_WORKERS"); w && *w) {
      try {
        workers = std::stoi(w);
      } catch (const std::exception&) {
        throw Error(std::string("C3D_WORKERS is not an integer: ") + w);
      }
    }
  }

  std::vector<Kind> kinds() const {
    if (!corruptions.empty()) return corruptions;
    return {kAllKinds.begin(), kAllKinds.end()};
  }

  void validate() const {
    if (input_dir.empty() || !fs::is_directory(input_dir)) throw Error("input_dir does not exist: " + input_dir.string());
    if (!depth_dir.empty() && !fs::is_directory(depth_dir)) throw Error("depth_dir does not exist: " + depth_dir.string());
    if (output_dir.empty()) throw Error("output_dir is required");
    if (severities.empty()) throw Error("severities must be nonempty");
    for (int s : severities)
      if (s < 1 || s > kSeverities) throw Error("severities must lie in 1..5");
    if (workers < 1) throw Error("workers must be at least 1");
    if (!calibration_path.empty() && !fs::exists(calibration_path))
      throw Error("calibration table not found: " + calibration_path.string());
    if (intrinsics_path && !fs::exists(*intrinsics_path))
      throw Error("intrinsics file not found: " + intrinsics_path->string());
    if (predicted_depth_range && !(predicted_depth_range->first > 0.0 && predicted_depth_range->second > predicted_depth_range->first))
      throw Error("predicted_depth_range must satisfy 0 < d_min < d_max");
  }
};

inline bool is_image_file(const fs::path& p) {
  const std::string ext = detail::lower_extension(p);
  return ext == ".png" || ext == ".ppm" || ext == ".pnm";
}

// Files of a directory keyed by stem, sorted.
inline std::map<std::string, fs::path> files_by_stem(const fs::path& dir, bool images_only = true) {
  std::map<std::string, fs::path> out;
  if (dir.empty() || !fs::is_directory(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const fs::path& p = entry.path();
    if (images_only && !is_image_file(p) && detail::lower_extension(p) != ".pfm") continue;
    out.emplace(p.stem().string(), p);
  }
  return out;
}

inline CalibrationTable load_calibration(const fs::path& path) {
  return path.empty() ? builtin_calibration() : CalibrationTable::load(path);
}

inline DepthMap load_job_depth(const JobConfig& cfg, const fs::path& path) {
  if (cfg.predicted_depth_range)
    return normalize_predicted_depth(load_scalar_field(path), cfg.predicted_depth_range->first,
                                     cfg.predicted_depth_range->second);
  return load_depth(path, cfg.depth_format);
}

inline CameraIntrinsics job_intrinsics(const JobConfig& cfg, int width, int height) {
  CameraIntrinsics k = cfg.intrinsics_path ? load_intrinsics(*cfg.intrinsics_path) : default_intrinsics(width, height);
  k.validate(width, height);
  return k;
}

inline fs::path depth_partner(const JobConfig& cfg, const std::string& stem) {
  if (cfg.depth_dir.empty()) return {};
  const std::string ext = cfg.predicted_depth_range ? "" : std::string(depth_extension(cfg.depth_format));
  if (!ext.empty()) {
    fs::path p = cfg.depth_dir / (stem + ext);
    return fs::exists(p) ? p : fs::path{};
  }
  for (const char* e : {".pfm", ".png"}) {
    fs::path p = cfg.depth_dir / (stem + e);
    if (fs::exists(p)) return p;
  }
  return {};
}

inline void write_text_atomic(const fs::path& path, const std::string& text) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    out << text;
    if (!out) throw Error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

struct ManifestRow {
  std::string path;  // relative to the output directory
  std::string kind;
  int severity = 0;
  std::string spec_hash;

  friend bool operator<(const ManifestRow& a, const ManifestRow& b) { return a.path < b.path; }
};

inline constexpr const char* kManifestName = "manifest.tsv";

inline std::vector<ManifestRow> read_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open manifest " + path.string());
  std::vector<ManifestRow> rows;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    ManifestRow r;
    std::string sev;
    std::getline(ss, r.path, '\t');
    std::getline(ss, r.kind, '\t');
    std::getline(ss, sev, '\t');
    std::getline(ss, r.spec_hash, '\t');
    r.severity = std::stoi(sev);
    rows.push_back(std::move(r));
  }
  return rows;
}

struct RunSummary {
  std::size_t written = 0;
  std::size_t failed = 0;
  std::vector<std::string> skipped;      // "<stem> (<reason>)"
  std::vector<std::string> unavailable;  // kinds that could not run
  std::vector<std::string> errors;

  bool ok() const { return failed == 0 && skipped.empty() && unavailable.empty() && errors.empty(); }
  int exit_code() const { return ok() ? 0 : 1; }

  void print(std::ostream& os) const {
    os << "written: " << written << ", failed: " << failed << ", skipped images: " << skipped.size() << "\n";
    for (const auto& s : skipped) os << "  skipped " << s << "\n";
    for (const auto& u : unavailable) os << "  unavailable " << u << "\n";
    for (const auto& e : errors) os << "  error " << e << "\n";
  }
};

// Writes `<out>/<kind>/<severity>/<stem>.png` for every (image, kind,
// severity) unit plus a manifest of all outputs.
inline RunSummary cmd_corrupt(const JobConfig& cfg, std::ostream& log) {
  cfg.validate();
  const std::vector<Kind> kinds = cfg.kinds();
  const CalibrationTable table = load_calibration(cfg.calibration_path);
  for (Kind k : kinds)
    if (!table.covers(k)) throw Error("calibration table has no entry for " + std::string(to_string(k)));

  const auto images = files_by_stem(cfg.input_dir);
  if (images.empty()) throw Error("no images found in " + cfg.input_dir.string());

  std::optional<Codec> codec;
  if (cfg.encoder) codec.emplace(*cfg.encoder);

  RunSummary summary;
  struct Unit {
    std::string stem;
    fs::path image, depth;
    Kind kind;
    int severity;
  };
  std::vector<Unit> units;
  std::set<Kind> unavailable;
  for (const auto& [stem, path] : images) {
    const fs::path depth = depth_partner(cfg, stem);
    bool skipped = false;
    for (Kind k : kinds) {
      const KindInfo ki = info(k);
      if (ki.needs_encoder && !codec) {
        unavailable.insert(k);
        summary.failed += cfg.severities.size();
        continue;
      }
      if (ki.needs_depth && depth.empty()) {
        skipped = true;
        continue;
      }
      for (int s : cfg.severities) units.push_back({stem, path, depth, k, s});
    }
    if (skipped) summary.skipped.push_back(stem + " (no depth partner)");
  }
  for (Kind k : unavailable) summary.unavailable.push_back(std::string(to_string(k)) + ": no video encoder configured");

  fs::create_directories(cfg.output_dir);
  std::vector<std::optional<ManifestRow>> rows(units.size());
  std::vector<std::string> unit_errors(units.size());
  const Codec* codec_ptr = codec ? &*codec : nullptr;
  parallel_for(units.size(), cfg.workers, [&](std::size_t i) {
    const Unit& u = units[i];
    try {
      const RgbImage img = load_rgb(u.image);
      std::optional<DepthMap> depth;
      if (!u.depth.empty() && info(u.kind).needs_depth) {
        depth = load_job_depth(cfg, u.depth);
        require_same_shape(img, *depth);
      }
      const CameraIntrinsics intr = job_intrinsics(cfg, img.width(), img.height());
      const CorruptionSpec spec =
          make_spec(u.kind, u.severity, table.value(u.kind, u.severity), cfg.seed, hash_string(u.stem), cfg.settings);
      const RgbImage out = apply_corruption(spec, {img, depth ? &*depth : nullptr, intr}, codec_ptr, cfg.settings);
      const fs::path rel = fs::path(std::string(to_string(u.kind))) / std::to_string(u.severity) / (u.stem + ".png");
      fs::create_directories((cfg.output_dir / rel).parent_path());
      save_rgb(out, cfg.output_dir / rel);
      rows[i] = ManifestRow{rel.generic_string(), std::string(to_string(u.kind)), u.severity, spec_hash(spec)};
    } catch (const std::exception& e) {
      unit_errors[i] = u.stem + " " + std::string(to_string(u.kind)) + "/" + std::to_string(u.severity) + ": " + e.what();
    }
  });

  std::vector<ManifestRow> manifest;
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (rows[i]) {
      manifest.push_back(*rows[i]);
      ++summary.written;
    } else {
      ++summary.failed;
      summary.errors.push_back(unit_errors[i]);
    }
  }
  std::sort(manifest.begin(), manifest.end());
  std::ostringstream text;
  text << "path\tkind\tseverity\tspec_hash\n";
  for (const auto& r : manifest) text << r.path << "\t" << r.kind << "\t" << r.severity << "\t" << r.spec_hash << "\n";
  write_text_atomic(cfg.output_dir / kManifestName, text.str());
  summary.print(log);
  return summary;
}

struct CalibrateRequest {
  std::optional<int> synthetic_count;  // use the procedural sample instead of input_dir
  int synthetic_size = 128;
  TargetSource targets = TargetSource::ladder;
  fs::path reference_dir;  // <ref>/<kind>/<severity>/<stem>.png
  fs::path output_path;
  CalibrationOptions options{};
  std::map<Kind, SearchRange> ranges;  // overrides of default_search_range
};

inline std::vector<CalibrationSample> load_sample(const JobConfig& cfg) {
  std::vector<CalibrationSample> out;
  for (const auto& [stem, path] : files_by_stem(cfg.input_dir)) {
    const fs::path depth = depth_partner(cfg, stem);
    if (depth.empty()) throw Error("calibration sample image " + stem + " has no depth partner");
    CalibrationSample s{stem, load_rgb(path), load_job_depth(cfg, depth), {}, hash_string(stem)};
    require_same_shape(s.image, s.depth);
    s.intrinsics = job_intrinsics(cfg, s.image.width(), s.image.height());
    out.push_back(std::move(s));
  }
  if (out.empty()) throw Error("no calibration images found in " + cfg.input_dir.string());
  return out;
}

inline ReferenceSet load_reference_set(const fs::path& dir, Kind kind, std::span<const CalibrationSample> sample) {
  ReferenceSet set;
  for (int s = 1; s <= kSeverities; ++s) {
    const fs::path sev_dir = dir / std::string(to_string(kind)) / std::to_string(s);
    for (const auto& cs : sample) {
      const fs::path p = sev_dir / (cs.id + ".png");
      if (!fs::exists(p)) continue;
      RgbImage ref = load_rgb(p);
      if (!ref.same_shape(cs.image)) throw Error(p.string() + ": shape differs from the clean image");
      set[s - 1].emplace_back(cs.image, std::move(ref));
    }
  }
  return set;
}

// Calibrates every requested kind and writes the table only if all succeed.
inline CalibrationTable cmd_calibrate(const JobConfig& cfg, const CalibrateRequest& req, std::ostream& log) {
  if (req.output_path.empty()) throw Error("calibration output path is required");
  std::vector<CalibrationSample> sample;
  if (req.synthetic_count) {
    if (*req.synthetic_count < 1) throw Error("synthetic sample size must be positive");
    sample = synthetic_sample(*req.synthetic_count, req.synthetic_size, req.synthetic_size);
  } else {
    if (cfg.input_dir.empty() || !fs::is_directory(cfg.input_dir))
      throw Error("input_dir does not exist: " + cfg.input_dir.string());
    sample = load_sample(cfg);
  }
  std::optional<Codec> codec;
  if (cfg.encoder) codec.emplace(*cfg.encoder);

  CalibrationOptions opt = req.options;
  opt.workers = cfg.workers;
  opt.settings = cfg.settings;
  CalibrationTable table;
  table.seed = cfg.seed;
  for (const auto& s : sample) table.sample_manifest.push_back(s.id);

  for (Kind k : cfg.kinds()) {
    if (info(k).needs_encoder && !codec) throw UnavailableError(std::string(to_string(k)) + ": no video encoder configured");
    std::optional<ReferenceSet> ref;
    if (req.targets == TargetSource::reference && has_2d_counterpart(k) && !req.reference_dir.empty())
      ref = load_reference_set(req.reference_dir, k, sample);
    const SsimLadder targets = default_targets(k, req.targets, ref ? &*ref : nullptr);
    const auto it = req.ranges.find(k);
    const SearchRange range = it != req.ranges.end() ? it->second : default_search_range(k);
    KindCalibration kc = calibrate_kind(k, targets, sample, range, cfg.seed, opt, codec ? &*codec : nullptr);
    log << to_string(k) << ": clean SSIM " << std::fixed << std::setprecision(4) << kc.clean_ssim;
    for (const auto& e : kc.entries)
      log << " | s" << e.severity << " " << info(k).parameter << "=" << std::setprecision(5) << e.value << " ssim "
          << std::setprecision(4) << e.achieved << (e.converged ? "" : " (not converged)");
    log << "\n" << std::defaultfloat;
    table.set(std::move(kc));
  }
  table.save(req.output_path);
  return table;
}

struct EvaluateRequest {
  fs::path pred_dir;  // <pred>/<kind>/<severity>/<stem>.*, optionally <pred>/clean/<stem>.*
  fs::path gt_dir;    // <gt>/<stem>.*
  std::optional<fs::path> baseline_report;
  fs::path output_path;
  std::string model_name;
  std::uint64_t seed = 0;
  int workers = 1;
};

struct EvaluateResult {
  ErrorReport report;
  std::vector<std::string> problems;  // per-file issues (shape mismatch, missing predictions)
  int exit_code() const { return problems.empty() ? 0 : 1; }
};

inline FloatRaster load_prediction(const fs::path& p) { return load_field(p); }

inline double field_l1(const FloatRaster& pred, const FloatRaster& gt) {
  if (pred.width != gt.width || pred.height != gt.height || pred.channels != gt.channels)
    throw Error("shape mismatch: prediction " + std::to_string(pred.width) + "x" + std::to_string(pred.height) + "x" +
                std::to_string(pred.channels) + " vs ground truth " + std::to_string(gt.width) + "x" +
                std::to_string(gt.height) + "x" + std::to_string(gt.channels));
  return l1_error(pred.samples, gt.samples, gt.channels);
}

inline EvaluateResult cmd_evaluate(const EvaluateRequest& req, std::ostream& log) {
  const auto gt = files_by_stem(req.gt_dir);
  if (gt.empty()) throw Error("no ground-truth files in " + req.gt_dir.string());

  struct Cell {
    CellKey key;
    std::map<std::string, fs::path> files;
  };
  std::vector<Cell> cells;
  std::optional<std::map<std::string, fs::path>> clean;
  if (!fs::is_directory(req.pred_dir)) throw Error("prediction directory not found: " + req.pred_dir.string());
  std::vector<fs::path> kind_dirs;
  for (const auto& e : fs::directory_iterator(req.pred_dir))
    if (e.is_directory()) kind_dirs.push_back(e.path());
  std::sort(kind_dirs.begin(), kind_dirs.end());
  for (const fs::path& kd : kind_dirs) {
    const std::string name = kd.filename().string();
    if (name == "clean") {
      clean = files_by_stem(kd);
      continue;
    }
    for (int s = 1; s <= kSeverities; ++s) {
      auto files = files_by_stem(kd / std::to_string(s));
      if (!files.empty()) cells.push_back({{name, s}, std::move(files)});
    }
  }

  EvaluateResult result;
  ErrorReport& report = result.report;
  report.model_name = req.model_name;
  report.seed = req.seed;

  // Rows are ground-truth stems predicted in at least one cell.
  std::set<std::string> stems;
  for (const auto& c : cells)
    for (const auto& [stem, p] : c.files)
      if (gt.count(stem)) stems.insert(stem);
      else result.problems.push_back(p.string() + ": no ground-truth partner");
  if (stems.empty()) throw Error("no prediction pairs with ground truth by stem");
  report.image_ids.assign(stems.begin(), stems.end());
  report.manifest_hash = manifest_hash(report.image_ids);
  for (const auto& c : cells) report.cells.push_back(c.key);

  const std::size_t n = report.image_ids.size(), m = cells.size();
  Matrix per_image(n, m, std::numeric_limits<double>::quiet_NaN());
  std::vector<std::string> issues(n);
  std::vector<double> clean_errors(n, std::numeric_limits<double>::quiet_NaN());
  parallel_for(n, req.workers, [&](std::size_t r) {
    const std::string& stem = report.image_ids[r];
    std::string msg;
    try {
      const FloatRaster g = load_prediction(gt.at(stem));
      for (std::size_t c = 0; c < m; ++c) {
        const auto it = cells[c].files.find(stem);
        if (it == cells[c].files.end()) {
          msg += stem + ": missing prediction for " + cells[c].key.first + "/" + std::to_string(cells[c].key.second) + "\n";
          continue;
        }
        try {
          per_image(r, c) = field_l1(load_prediction(it->second), g);
        } catch (const std::exception& e) {
          msg += it->second.string() + ": " + e.what() + "\n";
        }
      }
      if (clean) {
        const auto it = clean->find(stem);
        if (it != clean->end()) clean_errors[r] = field_l1(load_prediction(it->second), g);
      }
    } catch (const std::exception& e) {
      msg += stem + ": " + e.what() + "\n";
    }
    issues[r] = msg;
  });
  for (const auto& s : issues) {
    std::istringstream ss(s);
    for (std::string line; std::getline(ss, line);) result.problems.push_back(line);
  }

  // Cell means over the images that produced a value; per-image matrix kept
  // only when complete.
  bool complete = true;
  for (std::size_t c = 0; c < m; ++c) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t r = 0; r < n; ++r)
      if (!std::isnan(per_image(r, c))) {
        sum += per_image(r, c);
        ++count;
      } else {
        complete = false;
      }
    if (count > 0) report.per_cell[cells[c].key] = sum / static_cast<double>(count);
  }
  if (complete) report.per_image = std::move(per_image);
  if (clean) {
    double sum = 0.0;
    std::size_t count = 0;
    for (double v : clean_errors)
      if (!std::isnan(v)) {
        sum += v;
        ++count;
      }
    if (count > 0) report.clean_error = sum / static_cast<double>(count);
  }
  if (req.baseline_report) {
    const ErrorReport baseline = ErrorReport::load(*req.baseline_report);
    report.mce_value = mce(report.per_cell, baseline.per_cell);
    report.baseline_name = baseline.model_name;
  }
  if (!req.output_path.empty()) report.save(req.output_path);
  log << "evaluated " << n << " images over " << m << " cells";
  if (report.mce_value) log << ", mCE " << std::fixed << std::setprecision(2) << *report.mce_value << std::defaultfloat;
  log << "\n";
  for (const auto& p : result.problems) log << "  " << p << "\n";
  return result;
}

namespace detail {

// Diverging blue-white-red color for a value in [-1, 1]; gray when undefined.
inline std::array<float, 3> heat_color(double v) {
  if (std::isnan(v)) return {0.5f, 0.5f, 0.5f};
  const float t = static_cast<float>(std::clamp(v, -1.0, 1.0));
  if (t >= 0) return {1.0f, 1.0f - t, 1.0f - t};
  return {1.0f + t, 1.0f + t, 1.0f};
}

}  // namespace detail

struct ReportRequest {
  fs::path report_path;
  std::optional<fs::path> plot_dir;  // writes correlation.png and errors.png
};

// Per-corruption bar table, mCE line, and (with per-image errors) the
// correlation matrix between corruption cells.
inline int cmd_report(const ReportRequest& req, std::ostream& out) {
  const ErrorReport report = ErrorReport::load(req.report_path);
  out << "model: " << (report.model_name.empty() ? "(unnamed)" : report.model_name)
      << "  manifest: " << report.manifest_hash << "\n";
  if (report.clean_error) out << "clean l1: " << std::fixed << std::setprecision(4) << *report.clean_error << "\n";
  double max_err = 0.0;
  for (const auto& [k, v] : report.per_cell) max_err = std::max(max_err, v);
  std::map<std::string, std::map<int, double>> by_kind;
  for (const auto& [k, v] : report.per_cell) by_kind[k.first][k.second] = v;
  std::size_t width = 10;
  for (const auto& [name, _] : by_kind) width = std::max(width, name.size());
  constexpr int kBar = 30;
  for (const auto& [name, sev] : by_kind) {
    double mean = 0.0;
    for (const auto& [s, v] : sev) mean += v;
    mean /= static_cast<double>(sev.size());
    const int len = max_err > 0.0 ? static_cast<int>(std::lround(kBar * mean / max_err)) : 0;
    out << std::left << std::setw(static_cast<int>(width)) << name << std::right << " " << std::string(len, '#')
        << std::string(kBar - len, ' ') << " " << std::fixed << std::setprecision(4) << mean << "  [";
    for (const auto& [s, v] : sev) out << " s" << s << "=" << std::setprecision(4) << v;
    out << " ]\n";
  }
  if (report.mce_value)
    out << "mCE vs " << (report.baseline_name.empty() ? "baseline" : report.baseline_name) << ": " << std::fixed
        << std::setprecision(2) << *report.mce_value << "\n";
  out << std::defaultfloat;

  std::optional<CorrelationResult> corr;
  if (report.per_image && report.per_image->rows >= 3) {
    corr = correlation_matrix(*report.per_image);
    out << "correlation (pearson, per-image l1):\n";
    for (std::size_t a = 0; a < report.cells.size(); ++a) {
      out << std::left << std::setw(static_cast<int>(width + 3))
          << (report.cells[a].first + "/" + std::to_string(report.cells[a].second)) << std::right;
      for (std::size_t b = 0; b < report.cells.size(); ++b) {
        const double v = corr->values(a, b);
        if (std::isnan(v)) out << "    n/a";
        else out << " " << std::setw(6) << std::fixed << std::setprecision(2) << v;
      }
      out << "\n";
    }
    for (std::size_t c : corr->undefined)
      out << "  undefined: " << report.cells[c].first << "/" << report.cells[c].second << " has zero variance\n";
    out << std::defaultfloat;
  }

  if (req.plot_dir) {
    fs::create_directories(*req.plot_dir);
    if (corr) {
      constexpr int kCellPx = 12;
      const int n = static_cast<int>(report.cells.size());
      RgbImage img(n * kCellPx, n * kCellPx);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const auto c = detail::heat_color(corr->values(a, b));
          for (int y = 0; y < kCellPx; ++y)
            for (int x = 0; x < kCellPx; ++x) img.set_pixel(b * kCellPx + x, a * kCellPx + y, c[0], c[1], c[2]);
        }
      save_rgb(img, *req.plot_dir / "correlation.png");
    }
    if (!by_kind.empty() && max_err > 0.0) {
      constexpr int kBarPx = 16, kHeight = 100;
      const int n = static_cast<int>(report.per_cell.size());
      RgbImage img(n * kBarPx, kHeight, 1.0f);
      int i = 0;
      for (const auto& [name, sev] : by_kind) {
        const float shade = (std::distance(by_kind.begin(), by_kind.find(name)) % 2) ? 0.35f : 0.6f;
        for (const auto& [s, v] : sev) {
          const int h = static_cast<int>(std::lround(kHeight * v / max_err));
          for (int y = kHeight - h; y < kHeight; ++y)
            for (int x = 1; x < kBarPx - 1; ++x) img.set_pixel(i * kBarPx + x, y, shade, shade, 0.8f);
          ++i;
        }
      }
      save_rgb(img, *req.plot_dir / "errors.png");
    }
  }
  return 0;
}

struct PreviewRequest {
  fs::path image_path;
  std::optional<fs::path> depth_path;
  fs::path output_path;
};

// One row per kind: the clean image followed by severities 1..5.
inline RgbImage cmd_preview(const JobConfig& cfg, const PreviewRequest& req, std::ostream& log) {
  const RgbImage img = load_rgb(req.image_path);
  std::optional<DepthMap> depth;
  if (req.depth_path) {
    depth = load_job_depth(cfg, *req.depth_path);
    require_same_shape(img, *depth);
  }
  const CameraIntrinsics intr = job_intrinsics(cfg, img.width(), img.height());
  const CalibrationTable table = load_calibration(cfg.calibration_path);
  std::optional<Codec> codec;
  if (cfg.encoder) codec.emplace(*cfg.encoder);

  std::vector<Kind> kinds;
  for (Kind k : cfg.kinds()) {
    if (info(k).needs_depth && !depth) {
      log << "preview: skipping " << to_string(k) << " (no depth)\n";
      continue;
    }
    if (info(k).needs_encoder && !codec) {
      log << "preview: skipping " << to_string(k) << " (no video encoder configured)\n";
      continue;
    }
    if (!table.covers(k)) throw Error("calibration table has no entry for " + std::string(to_string(k)));
    kinds.push_back(k);
  }
  if (kinds.empty()) throw Error("preview: no corruption kinds can run on this input");

  const int w = img.width(), h = img.height();
  const int cols = 1 + kSeverities;
  RgbImage strip(w * cols, h * static_cast<int>(kinds.size()));
  auto paste = [&](const RgbImage& tile, int col, int row) {
    for (int y = 0; y < h; ++y)
      std::copy_n(tile.pixel(0, y), 3 * w, strip.pixel(col * w, row * h + y));
  };
  const std::string stem = req.image_path.stem().string();
  std::vector<RgbImage> tiles(kinds.size() * kSeverities);
  parallel_for(tiles.size(), cfg.workers, [&](std::size_t i) {
    const Kind k = kinds[i / kSeverities];
    const int s = static_cast<int>(i % kSeverities) + 1;
    const CorruptionSpec spec = make_spec(k, s, table.value(k, s), cfg.seed, hash_string(stem), cfg.settings);
    tiles[i] = apply_corruption(spec, {img, depth ? &*depth : nullptr, intr}, codec ? &*codec : nullptr, cfg.settings);
  });
  for (std::size_t r = 0; r < kinds.size(); ++r) {
    paste(img, 0, static_cast<int>(r));
    for (int s = 0; s < kSeverities; ++s) paste(tiles[r * kSeverities + s], s + 1, static_cast<int>(r));
  }
  if (!req.output_path.empty()) save_rgb(strip, req.output_path);
  return strip;
}

// Writes scenes 0..n-1 as <dir>/images/<id>.png, <dir>/depth/<id>.png
// (millimeters) and <dir>/intrinsics.json.
inline void write_synthetic_dataset(const fs::path& dir, int n, int size) {
  fs::create_directories(dir / "images");
  fs::create_directories(dir / "depth");
  for (int i = 0; i < n; ++i) {
    const CalibrationSample s = make_scene(static_cast<std::uint64_t>(i), size, size);
    save_rgb(s.image, dir / "images" / (s.id + ".png"));
    save_depth(s.depth, dir / "depth" / (s.id + ".png"), DepthFormat::png16_mm);
    if (i == 0) save_intrinsics(s.intrinsics, dir / "intrinsics.json");
  }
}

}  // namespace c3d
