#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "pansharp/benchmark.hpp"

namespace pansharp::bench {

/// Header `method,cc,ergas,quality,rase,rmse,scc`, one line per row, values
/// fixed-point with 4 decimals. Failed rows and missing values leave empty fields.
std::string render_csv(const BenchmarkReport& report);

/// Full structure including per-band values. Runtimes are collected under a
/// top-level "runtimes" object so reports can be compared without them.
nlohmann::json report_to_json(const BenchmarkReport& report);
BenchmarkReport report_from_json(const nlohmann::json& doc);

/// Tab-separated metrics-by-method table. The best value of each metric is
/// suffixed with '*'.
std::string render_text_table(const BenchmarkReport& report);

/// Display name for a row: the conventional method name when the label is
/// the method id, the label otherwise.
std::string display_name(const MethodRow& row);

void emit_report(const BenchmarkReport& report, ReportFormat format,
                 const std::filesystem::path& path);

/// Default file name for a format: report.csv, report.json, report.txt.
std::string report_file_name(ReportFormat format);

nlohmann::json metric_report_to_json(const metrics::MetricReport& report);
metrics::MetricReport metric_report_from_json(const nlohmann::json& doc);

}  // namespace pansharp::bench
