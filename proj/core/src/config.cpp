#include <fstream>
#include <string>

#include "pansharp/benchmark.hpp"
#include "pansharp/error.hpp"

namespace pansharp::bench {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::optional<preprocess::HistogramMode> parse_histmatch(const std::string& name) {
  if (name == "none") return std::nullopt;
  return preprocess::parse_histogram_mode(name);
}

std::string histmatch_name(const std::optional<preprocess::HistogramMode>& mode) {
  return mode ? std::string(preprocess::histogram_mode_name(*mode)) : "none";
}

// Fields shared by the document root (defaults) and per-method overrides.
void apply_params(const json& j, fusion::FusionParams& p) {
  if (j.contains("resample")) p.resample = preprocess::parse_resample(j.at("resample").get<std::string>());
  if (j.contains("histmatch")) p.histmatch = parse_histmatch(j.at("histmatch").get<std::string>());
  if (j.contains("levels")) p.levels = j.at("levels").get<int>();
  if (j.contains("rule")) p.dwt_rule = fusion::parse_dwt_rule(j.at("rule").get<std::string>());
  if (j.contains("alpha")) p.alpha = j.at("alpha").get<std::vector<double>>();
  if (j.contains("hpf_kernel")) {
    const json& k = j.at("hpf_kernel");
    p.hpf_kernel = multires::Kernel2D(k.at("width").get<std::size_t>(),
                                      k.at("height").get<std::size_t>(),
                                      k.at("taps").get<std::vector<double>>());
  }
}

fs::path resolve(const fs::path& p, const fs::path& base) {
  return p.is_absolute() || base.empty() ? p : base / p;
}

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  if (name == "text-table" || name == "text") return ReportFormat::TextTable;
  throw InvalidArgument("unknown report format '" + std::string(name) + "'");
}

std::string_view report_format_name(ReportFormat format) {
  switch (format) {
    case ReportFormat::Csv: return "csv";
    case ReportFormat::Json: return "json";
    case ReportFormat::TextTable: return "text-table";
  }
  return "";
}

void DatasetConfig::validate() const {
  if (ratio < 1) throw InvalidArgument("config: ratio must be >= 1");
  if (methods.empty()) throw InvalidArgument("config: at least one method is required");
  if (!synthetic) {
    if (ms_path.empty() || pan_path.empty()) {
      throw InvalidArgument("config: 'ms' and 'pan' paths are required without 'synthetic'");
    }
    if (ms_path == pan_path) throw InvalidArgument("config: 'ms' and 'pan' must be different files");
  }
  std::set<std::string> labels;
  for (const auto& m : methods) {
    if (m.label.empty()) throw InvalidArgument("config: empty method label");
    if (!labels.insert(m.label).second) {
      throw InvalidArgument("config: duplicate method label '" + m.label + "'");
    }
  }
}

DatasetConfig default_config() {
  DatasetConfig cfg;
  for (fusion::Method m : fusion::all_methods()) {
    MethodSpec spec;
    spec.label = std::string(fusion::method_name(m));
    spec.params.method = m;
    cfg.methods.push_back(std::move(spec));
  }
  return cfg;
}

DatasetConfig config_from_json(const json& doc, const fs::path& base_dir) {
  if (!doc.is_object()) throw InvalidArgument("config: document must be an object");
  try {
    DatasetConfig cfg;
    cfg.name = doc.value("name", cfg.name);
    if (doc.contains("ms")) cfg.ms_path = resolve(doc.at("ms").get<std::string>(), base_dir);
    if (doc.contains("pan")) cfg.pan_path = resolve(doc.at("pan").get<std::string>(), base_dir);
    if (doc.contains("truth")) cfg.truth_path = resolve(doc.at("truth").get<std::string>(), base_dir);
    if (doc.contains("synthetic")) {
      const json& s = doc.at("synthetic");
      SyntheticSource src;
      src.seed = s.value("seed", src.seed);
      src.size = s.value("size", src.size);
      src.bands = s.value("bands", src.bands);
      cfg.synthetic = src;
    }
    cfg.ratio = doc.value("ratio", cfg.ratio);
    cfg.ergas_ratio = doc.value("ergas_ratio", 1.0 / static_cast<double>(cfg.ratio));
    if (doc.contains("output_dir")) {
      cfg.output_dir = resolve(doc.at("output_dir").get<std::string>(), base_dir);
    } else {
      cfg.output_dir = resolve(cfg.output_dir, base_dir);
    }
    if (doc.contains("report_formats")) {
      cfg.report_formats.clear();
      for (const auto& f : doc.at("report_formats")) {
        cfg.report_formats.insert(parse_report_format(f.get<std::string>()));
      }
    }
    cfg.save_images = doc.value("save_images", cfg.save_images);
    cfg.parallel = doc.value("parallel", cfg.parallel);

    fusion::FusionParams defaults;
    apply_params(doc, defaults);

    if (!doc.contains("methods")) {
      for (fusion::Method m : fusion::all_methods()) {
        MethodSpec spec{std::string(fusion::method_name(m)), defaults};
        spec.params.method = m;
        cfg.methods.push_back(std::move(spec));
      }
    } else {
      for (const auto& entry : doc.at("methods")) {
        MethodSpec spec{"", defaults};
        if (entry.is_string()) {
          spec.params.method = fusion::parse_method(entry.get<std::string>());
        } else {
          spec.params.method = fusion::parse_method(entry.at("method").get<std::string>());
          apply_params(entry, spec.params);
          spec.label = entry.value("label", std::string());
        }
        if (spec.label.empty()) spec.label = std::string(fusion::method_name(spec.params.method));
        cfg.methods.push_back(std::move(spec));
      }
    }
    for (auto& m : cfg.methods) m.params.ratio = cfg.ratio;
    cfg.validate();
    return cfg;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
}

DatasetConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument("config '" + path.string() + "': " + e.what());
  }
  return config_from_json(doc, path.parent_path());
}

json config_to_json(const DatasetConfig& cfg) {
  json doc;
  doc["name"] = cfg.name;
  if (cfg.synthetic) {
    doc["synthetic"] = {{"seed", cfg.synthetic->seed},
                        {"size", cfg.synthetic->size},
                        {"bands", cfg.synthetic->bands}};
  } else {
    doc["ms"] = cfg.ms_path.string();
    doc["pan"] = cfg.pan_path.string();
  }
  if (cfg.truth_path) doc["truth"] = cfg.truth_path->string();
  doc["ratio"] = cfg.ratio;
  doc["ergas_ratio"] = cfg.ergas_ratio;
  doc["output_dir"] = cfg.output_dir.string();
  doc["report_formats"] = json::array();
  for (ReportFormat f : cfg.report_formats) doc["report_formats"].push_back(report_format_name(f));
  doc["save_images"] = cfg.save_images;
  doc["parallel"] = cfg.parallel;
  doc["methods"] = json::array();
  for (const auto& m : cfg.methods) {
    const auto& p = m.params;
    json e = {{"label", m.label},
              {"method", fusion::method_name(p.method)},
              {"resample", preprocess::resample_name(p.resample)},
              {"histmatch", histmatch_name(p.histmatch)},
              {"levels", p.levels},
              {"rule", fusion::dwt_rule_name(p.dwt_rule)}};
    if (p.alpha) e["alpha"] = *p.alpha;
    if (!(p.hpf_kernel == multires::Kernel2D::highpass3())) {
      e["hpf_kernel"] = {{"width", p.hpf_kernel.width()},
                         {"height", p.hpf_kernel.height()},
                         {"taps", std::vector<double>(p.hpf_kernel.taps().begin(),
                                                      p.hpf_kernel.taps().end())}};
    }
    doc["methods"].push_back(std::move(e));
  }
  return doc;
}

}  // namespace pansharp::bench
