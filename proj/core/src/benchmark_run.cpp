#include <chrono>
#include <exception>
#include <future>
#include <string>

#include "pansharp/benchmark.hpp"
#include "pansharp/error.hpp"
#include "pansharp/image_io.hpp"
#include "pansharp/report.hpp"
#include "pansharp/synth.hpp"

namespace pansharp::bench {

namespace fs = std::filesystem;

namespace {

struct Inputs {
  MultiBandImage ms;
  Raster pan;
  std::optional<MultiBandImage> truth;
};

Raster single_band(const MultiBandImage& img, const fs::path& path) {
  if (img.band_count() != 1) {
    throw InvalidArgument("PAN image '" + path.string() + "' has " +
                          std::to_string(img.band_count()) + " bands, expected 1");
  }
  return img[0];
}

Inputs load_inputs(const DatasetConfig& cfg) {
  if (cfg.synthetic) {
    SyntheticDataset d =
        synth_dataset(cfg.synthetic->seed, cfg.synthetic->size, cfg.ratio, cfg.synthetic->bands);
    return {std::move(d.ms), std::move(d.pan), std::move(d.truth)};
  }
  MultiBandImage ms = io::load_image(cfg.ms_path);
  Raster pan = single_band(io::load_image(cfg.pan_path), cfg.pan_path);
  std::optional<MultiBandImage> truth;
  if (cfg.truth_path) truth = io::load_image(*cfg.truth_path);
  const auto r = static_cast<std::size_t>(cfg.ratio);
  if (pan.width() != ms.width() * r || pan.height() != ms.height() * r) {
    throw DimensionMismatch("PAN " + std::to_string(pan.width()) + "x" +
                            std::to_string(pan.height()) + " is not MS " +
                            std::to_string(ms.width()) + "x" + std::to_string(ms.height()) +
                            " times ratio " + std::to_string(cfg.ratio));
  }
  return {std::move(ms), std::move(pan), std::move(truth)};
}

MethodRow run_method(const DatasetConfig& cfg, const MethodSpec& spec, const Inputs& in) {
  MethodRow row;
  row.label = spec.label;
  row.method = spec.params.method;
  const auto start = std::chrono::steady_clock::now();
  try {
    fusion::FusionParams params = spec.params;
    params.ratio = cfg.ratio;
    fusion::FusionResult result = fusion::fuse(in.ms, in.pan, params);
    const MultiBandImage up = preprocess::upsample(in.ms, cfg.ratio, params.resample);
    row.diagnostics = result.diagnostics;
    row.report = metrics::full_report(up, result.fused, in.pan, cfg.ergas_ratio);
    row.consistency = wald_consistency(result.fused, in.ms, cfg.ratio, cfg.ergas_ratio);
    if (in.truth) {
      row.synthesis = metrics::full_report(*in.truth, result.fused, in.pan, cfg.ergas_ratio);
    }
    row.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cfg.save_images) {
      io::save_image(result.fused, cfg.output_dir / (spec.label + ".psrw"), io::ImageFormat::RawF64);
      if (result.fused.band_count() == 1 || result.fused.band_count() == 3) {
        io::save_image(result.fused, cfg.output_dir / (spec.label + ".png"), io::ImageFormat::Png8,
                       io::ClampMode::ClampToDepth);
      }
    }
  } catch (const std::exception& e) {
    row.report.reset();
    row.consistency.reset();
    row.synthesis.reset();
    row.error = e.what();
    row.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return row;
}

}  // namespace

std::size_t BenchmarkReport::failures() const {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.ok() ? 0 : 1;
  return n;
}

std::map<std::string, std::string> best_per_metric(const std::vector<MethodRow>& rows) {
  std::map<std::string, std::string> best;
  for (metrics::Metric m : metrics::kAllMetrics) {
    const bool higher = metrics::higher_is_better(m);
    std::optional<double> best_value;
    std::string best_label;
    for (const auto& row : rows) {
      if (!row.ok()) continue;
      const auto v = metrics::metric_value(row.report->aggregate, m);
      if (!v) continue;
      if (!best_value || (higher ? *v > *best_value : *v < *best_value)) {
        best_value = v;
        best_label = row.label;
      }
    }
    if (best_value) best[std::string(metrics::metric_key(m))] = best_label;
  }
  return best;
}

metrics::MetricReport wald_consistency(const MultiBandImage& fused, const MultiBandImage& original_ms,
                                       int ratio, double ratio_h_over_l) {
  if (ratio < 1) throw InvalidArgument("wald consistency: ratio must be >= 1");
  const auto r = static_cast<std::size_t>(ratio);
  if (fused.width() != original_ms.width() * r || fused.height() != original_ms.height() * r) {
    throw DimensionMismatch("wald consistency: fused " + std::to_string(fused.width()) + "x" +
                            std::to_string(fused.height()) + " is not MS " +
                            std::to_string(original_ms.width()) + "x" +
                            std::to_string(original_ms.height()) + " times " +
                            std::to_string(ratio));
  }
  const MultiBandImage down = preprocess::downsample(fused, ratio, preprocess::Downsample::BoxMean);
  return metrics::spectral_report(original_ms, down, ratio_h_over_l);
}

BenchmarkReport run_benchmark(const DatasetConfig& cfg) {
  cfg.validate();
  const Inputs in = load_inputs(cfg);
  if (cfg.save_images || !cfg.report_formats.empty()) {
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + cfg.output_dir.string() + "'");
  }

  BenchmarkReport report;
  report.dataset = cfg.name;
  if (cfg.parallel) {
    // Inputs are shared read-only; each task owns its row and output files.
    std::vector<std::future<MethodRow>> tasks;
    tasks.reserve(cfg.methods.size());
    for (const auto& spec : cfg.methods) {
      tasks.push_back(std::async(std::launch::async, run_method, std::cref(cfg), std::cref(spec),
                                 std::cref(in)));
    }
    for (auto& t : tasks) report.rows.push_back(t.get());
  } else {
    for (const auto& spec : cfg.methods) report.rows.push_back(run_method(cfg, spec, in));
  }
  report.best_per_metric = best_per_metric(report.rows);

  for (ReportFormat f : cfg.report_formats) {
    emit_report(report, f, cfg.output_dir / report_file_name(f));
  }
  return report;
}

}  // namespace pansharp::bench
