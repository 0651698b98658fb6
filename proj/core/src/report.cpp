#include "pansharp/report.hpp"

#include <fmt/format.h>

#include <fstream>

#include "pansharp/error.hpp"

namespace pansharp::bench {

using nlohmann::json;

namespace {

std::string fixed4(double v) { return fmt::format("{:.4f}", v); }

json optional_report(const std::optional<metrics::MetricReport>& r) {
  return r ? metric_report_to_json(*r) : json(nullptr);
}

std::optional<metrics::MetricReport> optional_report(const json& j) {
  if (j.is_null()) return std::nullopt;
  return metric_report_from_json(j);
}

template <typename T>
json optional_value(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_value(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace

json metric_report_to_json(const metrics::MetricReport& r) {
  json bands = json::array();
  for (const auto& b : r.per_band) bands.push_back({{"cc", b.cc}, {"rmse", b.rmse}, {"uqi", b.uqi}});
  const auto& a = r.aggregate;
  return {{"per_band", std::move(bands)},
          {"aggregate",
           {{"cc", a.cc},
            {"ergas", a.ergas},
            {"quality", a.quality},
            {"rase", a.rase},
            {"rmse", a.rmse},
            {"scc", optional_value(a.scc)}}},
          {"ratio_h_over_l", r.ratio_h_over_l}};
}

metrics::MetricReport metric_report_from_json(const json& j) {
  metrics::MetricReport r;
  for (const auto& b : j.at("per_band")) {
    r.per_band.push_back({b.at("cc").get<double>(), b.at("rmse").get<double>(),
                          b.at("uqi").get<double>()});
  }
  const json& a = j.at("aggregate");
  r.aggregate.cc = a.at("cc").get<double>();
  r.aggregate.ergas = a.at("ergas").get<double>();
  r.aggregate.quality = a.at("quality").get<double>();
  r.aggregate.rase = a.at("rase").get<double>();
  r.aggregate.rmse = a.at("rmse").get<double>();
  r.aggregate.scc = optional_value<double>(a, "scc");
  r.ratio_h_over_l = j.at("ratio_h_over_l").get<double>();
  return r;
}

std::string render_csv(const BenchmarkReport& report) {
  std::string out = "method";
  for (metrics::Metric m : metrics::kAllMetrics) {
    out += ',';
    out += metrics::metric_key(m);
  }
  out += '\n';
  for (const auto& row : report.rows) {
    out += row.label;
    for (metrics::Metric m : metrics::kAllMetrics) {
      out += ',';
      if (!row.ok()) continue;
      if (const auto v = metrics::metric_value(row.report->aggregate, m)) out += fixed4(*v);
    }
    out += '\n';
  }
  return out;
}

json report_to_json(const BenchmarkReport& report) {
  json rows = json::array();
  json runtimes = json::object();
  for (const auto& row : report.rows) {
    const auto& d = row.diagnostics;
    rows.push_back({{"label", row.label},
                    {"method", fusion::method_name(row.method)},
                    {"report", optional_report(row.report)},
                    {"consistency", optional_report(row.consistency)},
                    {"synthesis", optional_report(row.synthesis)},
                    {"diagnostics",
                     {{"solved_alpha", optional_value(d.solved_alpha)},
                      {"pca_eigenvalues", optional_value(d.pca_eigenvalues)},
                      {"injected_detail_energy", d.injected_detail_energy}}},
                    {"error", optional_value(row.error)}});
    runtimes[row.label] = row.runtime_seconds;
  }
  return {{"dataset", report.dataset},
          {"rows", std::move(rows)},
          {"best_per_metric", report.best_per_metric},
          {"runtimes", std::move(runtimes)}};
}

BenchmarkReport report_from_json(const json& doc) {
  try {
    BenchmarkReport report;
    report.dataset = doc.at("dataset").get<std::string>();
    const json runtimes = doc.value("runtimes", json::object());
    for (const auto& j : doc.at("rows")) {
      MethodRow row;
      row.label = j.at("label").get<std::string>();
      row.method = fusion::parse_method(j.at("method").get<std::string>());
      row.report = optional_report(j.value("report", json(nullptr)));
      row.consistency = optional_report(j.value("consistency", json(nullptr)));
      row.synthesis = optional_report(j.value("synthesis", json(nullptr)));
      if (j.contains("diagnostics")) {
        const json& d = j.at("diagnostics");
        row.diagnostics.solved_alpha = optional_value<std::vector<double>>(d, "solved_alpha");
        row.diagnostics.pca_eigenvalues = optional_value<std::vector<double>>(d, "pca_eigenvalues");
        row.diagnostics.injected_detail_energy = d.value("injected_detail_energy", 0.0);
      }
      row.error = optional_value<std::string>(j, "error");
      row.runtime_seconds = runtimes.value(row.label, 0.0);
      report.rows.push_back(std::move(row));
    }
    if (doc.contains("best_per_metric")) {
      report.best_per_metric = doc.at("best_per_metric").get<std::map<std::string, std::string>>();
    } else {
      report.best_per_metric = best_per_metric(report.rows);
    }
    return report;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("benchmark report JSON: ") + e.what());
  }
}

std::string display_name(const MethodRow& row) {
  if (row.label != fusion::method_name(row.method)) return row.label;
  switch (row.method) {
    case fusion::Method::Brovey: return "Brovey";
    case fusion::Method::Ihs: return "IHS";
    case fusion::Method::AdaptiveIhs: return "Adaptive-IHS";
    case fusion::Method::Pca: return "PCA";
    case fusion::Method::Hpf: return "HPF";
    case fusion::Method::DwtAtrous: return "DWT";
    case fusion::Method::DwtMallat: return "DWT-Mallat";
    case fusion::Method::Identity: return "Identity";
  }
  return row.label;
}

std::string render_text_table(const BenchmarkReport& report) {
  std::string out = report.dataset + '\n';
  for (const auto& row : report.rows) out += '\t' + display_name(row);
  out += '\n';
  for (metrics::Metric m : metrics::kAllMetrics) {
    const std::string key(metrics::metric_key(m));
    const auto best = report.best_per_metric.find(key);
    out += metrics::metric_label(m);
    for (const auto& row : report.rows) {
      out += '\t';
      const auto v = row.ok() ? metrics::metric_value(row.report->aggregate, m) : std::nullopt;
      if (!v) {
        out += '-';
        continue;
      }
      out += fixed4(*v);
      if (best != report.best_per_metric.end() && best->second == row.label) out += '*';
    }
    out += '\n';
  }
  for (const auto& row : report.rows) {
    if (row.error) out += "! " + row.label + " failed: " + *row.error + '\n';
  }
  return out;
}

std::string report_file_name(ReportFormat format) {
  switch (format) {
    case ReportFormat::Csv: return "report.csv";
    case ReportFormat::Json: return "report.json";
    case ReportFormat::TextTable: return "report.txt";
  }
  return "report";
}

void emit_report(const BenchmarkReport& report, ReportFormat format,
                 const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write report '" + path.string() + "'");
  switch (format) {
    case ReportFormat::Csv: out << render_csv(report); break;
    case ReportFormat::Json: out << report_to_json(report).dump(2) << '\n'; break;
    case ReportFormat::TextTable: out << render_text_table(report); break;
  }
  if (!out) throw IoError("write failed for report '" + path.string() + "'");
}

}  // namespace pansharp::bench
