#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "c3d/c3d.hpp"

namespace {

struct CommonFlags {
  std::string config;
  std::string input_dir, depth_dir, output_dir, calibration, intrinsics, depth_format;
  std::vector<std::string> corruptions;
  std::vector<int> severities;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::vector<double> predicted_range;
  std::string encoder;

  void add_to(CLI::App* app) {
    app->add_option("-c,--config", config, "JSON job configuration");
    app->add_option("-i,--input", input_dir, "directory of RGB images");
    app->add_option("-d,--depth", depth_dir, "directory of depth maps paired by file stem");
    app->add_option("-o,--output", output_dir, "output directory");
    app->add_option("--calibration", calibration, "calibration table (default: built-in table)");
    app->add_option("--intrinsics", intrinsics, "camera intrinsics JSON (fx, fy, cx, cy)");
    app->add_option("--depth-format", depth_format, "png16_mm or pfm_m");
    app->add_option("-k,--kinds", corruptions, "corruption kinds")->delimiter(',');
    app->add_option("-s,--severities", severities, "severities in 1..5")->delimiter(',');
    app->add_option("--seed", seed, "base seed");
    app->add_option("-j,--workers", workers, "worker threads");
    app->add_option("--predicted-depth-range", predicted_range, "treat depth as relative prediction: d_min d_max")
        ->expected(2);
    app->add_option("--encoder", encoder, "video encoder executable (ffmpeg-compatible)");
  }

  c3d::JobConfig resolve() const {
    c3d::JobConfig cfg = config.empty() ? c3d::JobConfig{} : c3d::JobConfig::load(config);
    cfg.apply_environment();
    if (!input_dir.empty()) cfg.input_dir = input_dir;
    if (!depth_dir.empty()) cfg.depth_dir = depth_dir;
    if (!output_dir.empty()) cfg.output_dir = output_dir;
    if (!calibration.empty()) cfg.calibration_path = calibration;
    if (!intrinsics.empty()) cfg.intrinsics_path = intrinsics;
    if (!depth_format.empty()) cfg.depth_format = c3d::parse_depth_format(depth_format);
    if (!corruptions.empty()) {
      cfg.corruptions.clear();
      for (const auto& k : corruptions) cfg.corruptions.push_back(c3d::parse_kind(k));
    }
    if (!severities.empty()) cfg.severities = severities;
    if (seed) cfg.seed = *seed;
    if (workers) cfg.workers = *workers;
    if (predicted_range.size() == 2) cfg.predicted_depth_range = std::pair{predicted_range[0], predicted_range[1]};
    if (!encoder.empty()) cfg.encoder = c3d::EncoderConfig::ffmpeg(encoder);
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometry-aware image corruptions: generate, calibrate, evaluate."};
  app.require_subcommand(1);

  CommonFlags corrupt_flags;
  auto* corrupt = app.add_subcommand("corrupt", "write corrupted copies of a dataset");
  corrupt_flags.add_to(corrupt);

  CommonFlags cal_flags;
  auto* calibrate = app.add_subcommand("calibrate", "fit per-severity parameters to SSIM targets");
  cal_flags.add_to(calibrate);
  std::string cal_out = "calibration.json", targets = "ladder", reference_dir;
  std::optional<int> synthetic;
  int synthetic_size = 128;
  double tolerance = 0.01;
  int max_iterations = 24;
  bool clamp_unbracketed = false;
  calibrate->add_option("--table", cal_out, "where to write the calibration table");
  calibrate->add_option("--targets", targets, "ladder or reference")
      ->check(CLI::IsMember({"ladder", "reference"}));
  calibrate->add_option("--reference-dir", reference_dir, "reference corruptions: <dir>/<kind>/<severity>/<stem>.png");
  calibrate->add_option("--synthetic", synthetic, "use N procedural scenes instead of --input");
  calibrate->add_option("--synthetic-size", synthetic_size, "procedural scene size in pixels");
  calibrate->add_option("--tolerance", tolerance, "SSIM tolerance");
  calibrate->add_option("--max-iterations", max_iterations, "bisection iteration cap");
  calibrate->add_flag("--clamp-unbracketed", clamp_unbracketed,
                      "keep the nearer endpoint when a target lies outside the search range");

  auto* evaluate = app.add_subcommand("evaluate", "l1 error report of predictions against ground truth");
  c3d::EvaluateRequest eval_req;
  std::string eval_pred, eval_gt, eval_out = "report.json", baseline;
  evaluate->add_option("--pred", eval_pred, "predictions: <dir>/<kind>/<severity>/<stem>.*")->required();
  evaluate->add_option("--gt", eval_gt, "ground truth: <dir>/<stem>.*")->required();
  evaluate->add_option("--baseline", baseline, "baseline report for mCE");
  evaluate->add_option("--report", eval_out, "where to write the report");
  evaluate->add_option("--model", eval_req.model_name, "model name recorded in the report");
  evaluate->add_option("-j,--workers", eval_req.workers, "worker threads");

  auto* report = app.add_subcommand("report", "print a report as tables and optional plots");
  std::string report_in, plot_dir;
  report->add_option("report", report_in, "error report JSON")->required();
  report->add_option("--plots", plot_dir, "directory for correlation.png and errors.png");

  CommonFlags preview_flags;
  auto* preview = app.add_subcommand("preview", "side-by-side strip of one image across severities");
  preview_flags.add_to(preview);
  std::string preview_image, preview_depth, preview_out = "preview.png";
  preview->add_option("image", preview_image, "RGB image")->required();
  preview->add_option("--depth-map", preview_depth, "depth map for the image");
  preview->add_option("--strip", preview_out, "output PNG");

  auto* synth = app.add_subcommand("synth", "write procedural scenes with depth and intrinsics");
  std::string synth_dir;
  int synth_n = 64, synth_size = 128;
  synth->add_option("dir", synth_dir, "output directory")->required();
  synth->add_option("-n,--count", synth_n, "number of scenes");
  synth->add_option("--size", synth_size, "image size in pixels");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*corrupt) {
      return c3d::cmd_corrupt(corrupt_flags.resolve(), std::cerr).exit_code();
    }
    if (*calibrate) {
      c3d::CalibrateRequest req;
      req.synthetic_count = synthetic;
      req.synthetic_size = synthetic_size;
      req.targets = targets == "reference" ? c3d::TargetSource::reference : c3d::TargetSource::ladder;
      req.reference_dir = reference_dir;
      req.output_path = cal_out;
      req.options.tolerance = tolerance;
      req.options.max_iterations = max_iterations;
      req.options.clamp_unbracketed = clamp_unbracketed;
      c3d::cmd_calibrate(cal_flags.resolve(), req, std::cerr);
      return 0;
    }
    if (*evaluate) {
      eval_req.pred_dir = eval_pred;
      eval_req.gt_dir = eval_gt;
      eval_req.output_path = eval_out;
      if (!baseline.empty()) eval_req.baseline_report = baseline;
      return c3d::cmd_evaluate(eval_req, std::cerr).exit_code();
    }
    if (*report) {
      c3d::ReportRequest req{report_in, {}};
      if (!plot_dir.empty()) req.plot_dir = plot_dir;
      return c3d::cmd_report(req, std::cout);
    }
    if (*preview) {
      c3d::PreviewRequest req{preview_image, {}, preview_out};
      if (!preview_depth.empty()) req.depth_path = preview_depth;
      c3d::cmd_preview(preview_flags.resolve(), req, std::cerr);
      return 0;
    }
    if (*synth) {
      c3d::write_synthetic_dataset(synth_dir, synth_n, synth_size);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
