#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "c3d/corruption.hpp"
#include "c3d/image.hpp"
#include "c3d/reference2d.hpp"

namespace c3d {

// Mean |pred − gt| over all elements, or over the pixels where `mask` is
// nonzero (the mask is per pixel and covers every channel).
inline double l1_error(std::span<const float> pred, std::span<const float> gt, int channels = 1,
                       const Mask* mask = nullptr) {
  if (pred.size() != gt.size()) throw Error("l1_error: shape mismatch");
  if (channels < 1 || pred.size() % static_cast<std::size_t>(channels) != 0)
    throw Error("l1_error: element count is not a multiple of the channel count");
  const std::size_t pixels = pred.size() / channels;
  if (mask && mask->size() != pixels) throw Error("l1_error: mask shape mismatch");
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t p = 0; p < pixels; ++p) {
    if (mask && !(*mask)[p]) continue;
    for (int c = 0; c < channels; ++c) {
      const std::size_t i = p * channels + c;
      sum += std::abs(static_cast<double>(pred[i]) - static_cast<double>(gt[i]));
    }
    n += channels;
  }
  if (n == 0) throw Error("l1_error: mask selects no pixels");
  return sum / static_cast<double>(n);
}

inline double l1_error(const RgbImage& pred, const RgbImage& gt, const Mask* mask = nullptr) {
  if (!pred.same_shape(gt)) throw Error("l1_error: shape mismatch");
  return l1_error(pred.values(), gt.values(), RgbImage::kChannels, mask);
}

// Dense row-major matrix; NaN marks an undefined entry.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

inline bool is_undefined(double v) { return std::isnan(v); }

struct CorrelationResult {
  Matrix values;                       // cells × cells
  std::vector<std::size_t> undefined;  // zero-variance columns
};

enum class CorrelationMode { prediction_error, rgb_error };

// Pearson correlation between the columns of an images × cells matrix.
inline CorrelationResult correlation_matrix(const Matrix& per_image) {
  if (per_image.rows < 3) throw Error("correlation_matrix: need at least 3 images");
  const std::size_t n = per_image.rows, m = per_image.cols;
  std::vector<std::vector<double>> centered(m, std::vector<double>(n));
  std::vector<double> norm(m);
  CorrelationResult out{Matrix(m, m, std::numeric_limits<double>::quiet_NaN()), {}};
  for (std::size_t c = 0; c < m; ++c) {
    double mean = 0.0;
    for (std::size_t r = 0; r < n; ++r) mean += per_image(r, c);
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      centered[c][r] = per_image(r, c) - mean;
      ss += centered[c][r] * centered[c][r];
    }
    norm[c] = std::sqrt(ss);
    if (!(norm[c] > 0.0)) out.undefined.push_back(c);
  }
  for (std::size_t a = 0; a < m; ++a) {
    if (!(norm[a] > 0.0)) continue;
    out.values(a, a) = 1.0;
    for (std::size_t b = a + 1; b < m; ++b) {
      if (!(norm[b] > 0.0)) continue;
      double dot = 0.0;
      for (std::size_t r = 0; r < n; ++r) dot += centered[a][r] * centered[b][r];
      const double rho = std::clamp(dot / (norm[a] * norm[b]), -1.0, 1.0);
      out.values(a, b) = rho;
      out.values(b, a) = rho;
    }
  }
  return out;
}

// Model-free columns: per-image l1 between each corrupted RGB image and its
// clean source. corrupted[cell][image] pairs with clean[image].
inline Matrix rgb_error_matrix(std::span<const RgbImage> clean, const std::vector<std::vector<RgbImage>>& corrupted) {
  Matrix m(clean.size(), corrupted.size());
  for (std::size_t c = 0; c < corrupted.size(); ++c) {
    if (corrupted[c].size() != clean.size()) throw Error("rgb_error_matrix: cell has wrong image count");
    for (std::size_t i = 0; i < clean.size(); ++i) m(i, c) = l1_error(corrupted[c][i], clean[i]);
  }
  return m;
}

using CellKey = std::pair<std::string, int>;  // (corruption, severity)
using ErrorTable = std::map<CellKey, double>;

// 100 × mean over corruptions of Σ_s model / Σ_s baseline.
inline double mce(const ErrorTable& model, const ErrorTable& baseline) {
  if (model.size() != baseline.size()) throw Error("mce: model and baseline cover different cells");
  std::map<std::string, std::pair<double, double>> sums;
  for (const auto& [key, err] : model) {
    const auto it = baseline.find(key);
    if (it == baseline.end())
      throw Error("mce: baseline has no cell " + key.first + "/" + std::to_string(key.second));
    auto& s = sums[key.first];
    s.first += err;
    s.second += it->second;
  }
  if (sums.empty()) throw Error("mce: empty error tables");
  double total = 0.0;
  for (const auto& [name, s] : sums) {
    if (!(s.second > 0.0)) throw Error("mce: baseline error sum is zero for " + name);
    total += s.first / s.second;
  }
  return 100.0 * total / static_cast<double>(sums.size());
}

inline RgbImage reference_2d(Kind kind, const RgbImage& img, const CorruptionSpec& spec) {
  switch (kind) {
    case Kind::defocus_2d:
    case Kind::motion_2d:
    case Kind::fog_2d:
      if (spec.kind != kind) throw Error("reference_2d: spec is for " + std::string(to_string(spec.kind)));
      return apply_corruption(spec, {img, nullptr, {}});
    default: throw Error("reference_2d: " + std::string(to_string(kind)) + " is not a 2D reference corruption");
  }
}

struct ErrorReport {
  ErrorTable per_cell;
  std::vector<std::string> image_ids;  // rows of per_image
  std::vector<CellKey> cells;          // columns of per_image
  std::optional<Matrix> per_image;
  std::optional<double> clean_error;
  std::string model_name;
  std::string manifest_hash;
  std::uint64_t seed = 0;
  std::optional<double> mce_value;
  std::string baseline_name;

  // Rebuilds per_cell as the column means of per_image.
  void aggregate() {
    if (!per_image) return;
    per_cell.clear();
    for (std::size_t c = 0; c < cells.size(); ++c) {
      double sum = 0.0;
      for (std::size_t r = 0; r < per_image->rows; ++r) sum += (*per_image)(r, c);
      per_cell[cells[c]] = sum / static_cast<double>(per_image->rows);
    }
  }

  nlohmann::json to_json() const {
    nlohmann::json j{{"format", "c3d-error-report/1"},
                     {"metadata", {{"model", model_name}, {"manifest_hash", manifest_hash}, {"seed", seed}}},
                     {"per_cell", nlohmann::json::array()}};
    for (const auto& [key, err] : per_cell)
      j["per_cell"].push_back({{"corruption", key.first}, {"severity", key.second}, {"l1", err}});
    if (clean_error) j["clean_error"] = *clean_error;
    if (per_image) {
      nlohmann::json cols = nlohmann::json::array();
      for (const auto& [name, sev] : cells) cols.push_back({name, sev});
      nlohmann::json rows = nlohmann::json::array();
      for (std::size_t r = 0; r < per_image->rows; ++r)
        rows.push_back(std::vector<double>(per_image->data.begin() + r * per_image->cols,
                                           per_image->data.begin() + (r + 1) * per_image->cols));
      j["per_image"] = {{"images", image_ids}, {"cells", cols}, {"errors", rows}};
    }
    if (mce_value) j["mce"] = {{"value", *mce_value}, {"baseline", baseline_name}};
    return j;
  }

  static ErrorReport from_json(const nlohmann::json& j) {
    try {
      ErrorReport r;
      const auto& meta = j.at("metadata");
      r.model_name = meta.value("model", "");
      r.manifest_hash = meta.value("manifest_hash", "");
      r.seed = meta.value("seed", std::uint64_t{0});
      for (const auto& cell : j.at("per_cell"))
        r.per_cell[{cell.at("corruption").get<std::string>(), cell.at("severity").get<int>()}] =
            cell.at("l1").get<double>();
      if (j.contains("clean_error")) r.clean_error = j.at("clean_error").get<double>();
      if (j.contains("per_image")) {
        const auto& pi = j.at("per_image");
        r.image_ids = pi.at("images").get<std::vector<std::string>>();
        for (const auto& c : pi.at("cells")) r.cells.emplace_back(c.at(0).get<std::string>(), c.at(1).get<int>());
        Matrix m(r.image_ids.size(), r.cells.size());
        const auto& rows = pi.at("errors");
        if (rows.size() != m.rows) throw Error("malformed error report: per_image row count");
        for (std::size_t i = 0; i < m.rows; ++i) {
          const auto row = rows[i].get<std::vector<double>>();
          if (row.size() != m.cols) throw Error("malformed error report: per_image column count");
          std::copy(row.begin(), row.end(), m.data.begin() + i * m.cols);
        }
        r.per_image = std::move(m);
      }
      if (j.contains("mce")) {
        r.mce_value = j.at("mce").at("value").get<double>();
        r.baseline_name = j.at("mce").value("baseline", "");
      }
      return r;
    } catch (const nlohmann::json::exception& e) {
      throw Error(std::string("malformed error report: ") + e.what());
    }
  }

  static ErrorReport load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open error report " + path.string());
    try {
      return from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(path.string() + " is not valid JSON: " + e.what());
    }
  }

  void save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    out << to_json().dump(2) << "\n";
    if (!out) throw Error("cannot write " + path.string());
  }
};

}  // namespace c3d
