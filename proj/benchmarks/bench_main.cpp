#include <benchmark/benchmark.h>

#include "pansharp/convolution.hpp"
#include "pansharp/fusion.hpp"
#include "pansharp/metrics.hpp"
#include "pansharp/preprocess.hpp"
#include "pansharp/synth.hpp"
#include "pansharp/wavelet.hpp"

using namespace pansharp;

namespace {

const bench::SyntheticDataset& dataset(std::size_t size) {
  static const bench::SyntheticDataset d256 = bench::synth_dataset(7, 256, 4, 3);
  static const bench::SyntheticDataset d512 = bench::synth_dataset(7, 512, 4, 3);
  return size == 256 ? d256 : d512;
}

void BM_Convolve3x3(benchmark::State& state) {
  const Raster& pan = dataset(static_cast<std::size_t>(state.range(0))).pan;
  const auto k = multires::Kernel2D::highpass3();
  for (auto _ : state) benchmark::DoNotOptimize(multires::convolve2d(pan, k, multires::Boundary::Replicate));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(pan.size()));
}
BENCHMARK(BM_Convolve3x3)->Arg(256)->Arg(512);

void BM_AtrousDecompose(benchmark::State& state) {
  const Raster& pan = dataset(512).pan;
  for (auto _ : state) benchmark::DoNotOptimize(multires::atrous_decompose(pan, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_AtrousDecompose)->Arg(1)->Arg(2)->Arg(3);

void BM_MallatDecompose(benchmark::State& state) {
  const Raster& pan = dataset(512).pan;
  for (auto _ : state) benchmark::DoNotOptimize(multires::mallat_decompose(pan, 3));
}
BENCHMARK(BM_MallatDecompose);

void BM_UpsampleBicubic(benchmark::State& state) {
  const MultiBandImage& ms = dataset(512).ms;
  for (auto _ : state) benchmark::DoNotOptimize(preprocess::upsample(ms, 4, preprocess::Resample::Bicubic));
}
BENCHMARK(BM_UpsampleBicubic);

void BM_Fuse(benchmark::State& state) {
  const auto& d = dataset(512);
  fusion::FusionParams p;
  p.method = fusion::all_methods()[static_cast<std::size_t>(state.range(0))];
  state.SetLabel(std::string(fusion::method_name(p.method)));
  for (auto _ : state) benchmark::DoNotOptimize(fusion::fuse(d.ms, d.pan, p));
}
BENCHMARK(BM_Fuse)->DenseRange(0, 6)->Unit(benchmark::kMillisecond);

void BM_FullReport(benchmark::State& state) {
  const auto& d = dataset(512);
  for (auto _ : state) benchmark::DoNotOptimize(metrics::full_report(d.truth, d.truth, d.pan));
}
BENCHMARK(BM_FullReport)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
