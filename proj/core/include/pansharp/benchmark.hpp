#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "pansharp/fusion.hpp"
#include "pansharp/metrics.hpp"

namespace pansharp::bench {

enum class ReportFormat { Csv, Json, TextTable };

ReportFormat parse_report_format(std::string_view name);
std::string_view report_format_name(ReportFormat format);

struct SyntheticSource {
  std::uint64_t seed = 7;
  std::size_t size = 512;
  std::size_t bands = 3;
};

struct MethodSpec {
  std::string label;  // unique within a config; defaults to the method id
  fusion::FusionParams params;
};

struct DatasetConfig {
  std::string name = "dataset";
  std::filesystem::path ms_path;
  std::filesystem::path pan_path;
  std::optional<std::filesystem::path> truth_path;
  /// When set, inputs are generated instead of loaded.
  std::optional<SyntheticSource> synthetic;
  int ratio = 4;
  double ergas_ratio = 0.25;  // h/l pixel-size ratio
  std::vector<MethodSpec> methods;
  std::filesystem::path output_dir = "pansharp-out";
  std::set<ReportFormat> report_formats = {ReportFormat::Csv, ReportFormat::Json,
                                           ReportFormat::TextTable};
  bool save_images = true;
  bool parallel = true;

  void validate() const;
};

/// Ratio 4, ERGAS ratio 1/4, all six method families with default parameters.
DatasetConfig default_config();

/// Parses the JSON config document. Relative paths resolve against base_dir.
DatasetConfig config_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir);
DatasetConfig load_config(const std::filesystem::path& path);
nlohmann::json config_to_json(const DatasetConfig& cfg);

struct MethodRow {
  std::string label;
  fusion::Method method = fusion::Method::Brovey;
  std::optional<metrics::MetricReport> report;       // fused vs upsampled MS, SCC vs PAN
  std::optional<metrics::MetricReport> consistency;  // box-mean downsampled fused vs MS
  std::optional<metrics::MetricReport> synthesis;    // fused vs ground truth, if known
  fusion::FusionDiagnostics diagnostics;
  std::optional<std::string> error;
  double runtime_seconds = 0.0;

  bool ok() const noexcept { return !error && report.has_value(); }
  friend bool operator==(const MethodRow&, const MethodRow&) = default;
};

struct BenchmarkReport {
  std::string dataset;
  std::vector<MethodRow> rows;
  /// Metric key ("cc", "ergas", ...) -> label of the best successful row.
  std::map<std::string, std::string> best_per_metric;

  std::size_t failures() const;
  friend bool operator==(const BenchmarkReport&, const BenchmarkReport&) = default;
};

/// Best row per metric: max for CC/Quality/SCC, min for ERGAS/RASE/RMSE.
/// Ties keep the earlier row; failed rows never win.
std::map<std::string, std::string> best_per_metric(const std::vector<MethodRow>& rows);

/// Wald consistency: box-mean downsample `fused` by ratio and compare with
/// the original MS at its native resolution.
metrics::MetricReport wald_consistency(const MultiBandImage& fused, const MultiBandImage& original_ms,
                                       int ratio, double ratio_h_over_l = 0.25);

/// Fuses with every configured method and scores each result. A failing
/// method is recorded on its row and does not stop the others. Fused images
/// and the requested report files are written to cfg.output_dir.
BenchmarkReport run_benchmark(const DatasetConfig& cfg);

}  // namespace pansharp::bench
