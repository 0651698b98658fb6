// pansharp: fuse PAN/MS pairs, score them, and run the benchmark matrix.
//
// Exit codes: 0 success, 1 a method or metric failed, 2 configuration or I/O error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "pansharp/benchmark.hpp"
#include "pansharp/error.hpp"
#include "pansharp/fusion.hpp"
#include "pansharp/image_io.hpp"
#include "pansharp/metrics.hpp"
#include "pansharp/report.hpp"
#include "pansharp/synth.hpp"

namespace fs = std::filesystem;
using namespace pansharp;

namespace {

constexpr int kOk = 0;
constexpr int kPartialFailure = 1;
constexpr int kConfigError = 2;

struct RunOptions {
  std::string config;
  std::string output_dir;
  bool quiet = false;
};

struct FuseOptions {
  std::string method = "dwt_atrous";
  std::string ms, pan, out;
  int ratio = 4;
  int levels = 2;
  std::string rule = "additive";
  std::string resample = "bicubic";
  std::string histmatch = "mean_std";
  std::string format;
};

struct MetricsOptions {
  std::string ref, fused, pan;
  double ratio_hl = 0.25;
  std::string resample = "bicubic";
};

struct SynthOptions {
  std::uint64_t seed = 7;
  std::size_t size = 512;
  int ratio = 4;
  std::size_t bands = 3;
  std::string out_dir;
};

Raster single_band(const MultiBandImage& img, const std::string& what) {
  if (img.band_count() != 1) {
    throw InvalidArgument(what + " must have exactly one band, it has " +
                          std::to_string(img.band_count()));
  }
  return img[0];
}

int run_cmd(const RunOptions& o) {
  bench::DatasetConfig cfg = bench::load_config(o.config);
  if (!o.output_dir.empty()) cfg.output_dir = o.output_dir;
  const bench::BenchmarkReport report = bench::run_benchmark(cfg);
  if (!o.quiet) std::cout << bench::render_text_table(report);
  return report.failures() == 0 ? kOk : kPartialFailure;
}

int fuse_cmd(const FuseOptions& o) {
  fusion::FusionParams p;
  p.method = fusion::parse_method(o.method);
  p.ratio = o.ratio;
  p.levels = o.levels;
  p.dwt_rule = fusion::parse_dwt_rule(o.rule);
  p.resample = preprocess::parse_resample(o.resample);
  if (o.histmatch == "none") {
    p.histmatch.reset();
  } else {
    p.histmatch = preprocess::parse_histogram_mode(o.histmatch);
  }
  const MultiBandImage ms = io::load_image(o.ms);
  const Raster pan = single_band(io::load_image(o.pan), "PAN image");
  const fusion::FusionResult result = fusion::fuse(ms, pan, p);
  const io::ImageFormat format = o.format.empty() ? io::format_for_path(o.out)
                                                  : io::parse_format(o.format);
  const io::ClampMode clamp = format == io::ImageFormat::RawF64 ? io::ClampMode::None
                                                                 : io::ClampMode::ClampToDepth;
  io::save_image(result.fused, o.out, format, clamp);
  if (result.diagnostics.solved_alpha) {
    std::cerr << "solved alpha:";
    for (double a : *result.diagnostics.solved_alpha) std::cerr << ' ' << a;
    std::cerr << '\n';
  }
  return kOk;
}

int metrics_cmd(const MetricsOptions& o) {
  MultiBandImage ref = io::load_image(o.ref);
  const MultiBandImage fused = io::load_image(o.fused);
  const Raster pan = single_band(io::load_image(o.pan), "PAN image");
  if (ref.width() != fused.width()) {
    if (fused.width() % ref.width() != 0 || fused.height() % ref.height() != 0 ||
        fused.width() / ref.width() != fused.height() / ref.height()) {
      throw DimensionMismatch("reference size is not an integer fraction of the fused size");
    }
    ref = preprocess::upsample(ref, static_cast<int>(fused.width() / ref.width()),
                               preprocess::parse_resample(o.resample));
  }
  const metrics::MetricReport rep = metrics::full_report(ref, fused, pan, o.ratio_hl);
  std::cout << bench::metric_report_to_json(rep).dump(2) << '\n';
  return kOk;
}

int synth_cmd(const SynthOptions& o) {
  const bench::SyntheticDataset d = bench::synth_dataset(o.seed, o.size, o.ratio, o.bands);
  const fs::path dir(o.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "'");
  io::save_image(d.truth, dir / "truth.psrw", io::ImageFormat::RawF64);
  io::save_image(d.ms, dir / "ms.psrw", io::ImageFormat::RawF64);
  io::save_image(MultiBandImage({d.pan}), dir / "pan.psrw", io::ImageFormat::RawF64);

  bench::DatasetConfig cfg = bench::default_config();
  cfg.name = "synthetic-seed-" + std::to_string(o.seed);
  cfg.ms_path = "ms.psrw";
  cfg.pan_path = "pan.psrw";
  cfg.truth_path = "truth.psrw";
  cfg.ratio = o.ratio;
  cfg.ergas_ratio = 1.0 / o.ratio;
  cfg.output_dir = "results";
  std::ofstream(dir / "config.json") << bench::config_to_json(cfg).dump(2) << '\n';
  std::cout << "wrote " << (dir / "truth.psrw").string() << ", ms.psrw, pan.psrw, config.json\n";
  return kOk;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const IoError& e) {
    std::cerr << "pansharp: " << e.what() << '\n';
    return kConfigError;
  } catch (const InvalidArgument& e) {
    std::cerr << "pansharp: " << e.what() << '\n';
    return kConfigError;
  } catch (const DimensionMismatch& e) {
    std::cerr << "pansharp: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "pansharp: " << e.what() << '\n';
    return kPartialFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pansharpening toolkit: fusion methods, quality metrics and benchmark"};
  app.require_subcommand(1);

  RunOptions run;
  auto* run_app = app.add_subcommand("run", "Run every configured method and write reports");
  run_app->add_option("--config", run.config, "JSON dataset config")->required()->check(CLI::ExistingFile);
  run_app->add_option("--output-dir", run.output_dir, "Override the config's output_dir");
  run_app->add_flag("--quiet", run.quiet, "Do not print the table");

  FuseOptions fuse;
  auto* fuse_app = app.add_subcommand("fuse", "Fuse one MS/PAN pair");
  fuse_app->add_option("--method", fuse.method,
                       "brovey|ihs|adaptive_ihs|pca|hpf|dwt_atrous|dwt_mallat")->required();
  fuse_app->add_option("--ms", fuse.ms, "Multispectral image")->required();
  fuse_app->add_option("--pan", fuse.pan, "Panchromatic image")->required();
  fuse_app->add_option("--out", fuse.out, "Output path (.psrw, .png or .tif)")->required();
  fuse_app->add_option("--ratio", fuse.ratio, "PAN/MS size ratio")->capture_default_str();
  fuse_app->add_option("--levels", fuse.levels, "Wavelet levels")->capture_default_str();
  fuse_app->add_option("--rule", fuse.rule, "additive|substitutive")->capture_default_str();
  fuse_app->add_option("--resample", fuse.resample, "nearest|bilinear|bicubic")->capture_default_str();
  fuse_app->add_option("--histmatch", fuse.histmatch, "mean_std|cdf|none")->capture_default_str();
  fuse_app->add_option("--format", fuse.format, "Output format (default: from extension)");

  MetricsOptions met;
  auto* met_app = app.add_subcommand("metrics", "Score a fused image, JSON on stdout");
  met_app->add_option("--ref", met.ref, "Reference MS image (upsampled if smaller)")->required();
  met_app->add_option("--fused", met.fused, "Fused image")->required();
  met_app->add_option("--pan", met.pan, "Panchromatic image")->required();
  met_app->add_option("--ratio-hl", met.ratio_hl, "h/l pixel-size ratio for ERGAS")->capture_default_str();
  met_app->add_option("--resample", met.resample, "Reference upsampling method")->capture_default_str();

  SynthOptions syn;
  auto* syn_app = app.add_subcommand("synth", "Write a seeded synthetic dataset and config");
  syn_app->add_option("--seed", syn.seed)->capture_default_str();
  syn_app->add_option("--size", syn.size, "Ground-truth / PAN size in pixels")->capture_default_str();
  syn_app->add_option("--ratio", syn.ratio)->capture_default_str();
  syn_app->add_option("--bands", syn.bands)->capture_default_str();
  syn_app->add_option("--out-dir", syn.out_dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  if (*run_app) return guarded([&] { return run_cmd(run); });
  if (*fuse_app) return guarded([&] { return fuse_cmd(fuse); });
  if (*met_app) return guarded([&] { return metrics_cmd(met); });
  return guarded([&] { return synth_cmd(syn); });
}
