#include "pansharp/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "pansharp/error.hpp"
#include "pansharp/preprocess.hpp"

namespace pansharp::bench {

namespace {

class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : rng_(seed) {}
  // 53 random bits mapped to [0, 1); independent of the standard library's
  // distribution implementations.
  double next() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double between(double lo, double hi) { return lo + (hi - lo) * next(); }

 private:
  std::mt19937_64 rng_;
};

struct Blob {
  double cx, cy, sigma, amplitude;
};

}  // namespace

SyntheticDataset synth_dataset(std::uint64_t seed, std::size_t truth_size, int ratio,
                               std::size_t band_count) {
  if (ratio < 1) throw InvalidArgument("synthetic dataset ratio must be >= 1");
  if (band_count < 1) throw InvalidArgument("synthetic dataset needs at least one band");
  if (truth_size == 0 || truth_size % static_cast<std::size_t>(ratio) != 0) {
    throw DimensionMismatch("synthetic truth size " + std::to_string(truth_size) +
                            " is not divisible by ratio " + std::to_string(ratio));
  }
  Uniform u(seed);
  const auto s = static_cast<double>(truth_size);

  std::vector<double> base(band_count), gx(band_count), gy(band_count);
  for (std::size_t b = 0; b < band_count; ++b) {
    base[b] = u.between(250.0, 450.0);
    gx[b] = u.between(-80.0, 80.0);
    gy[b] = u.between(-80.0, 80.0);
  }

  const std::size_t blob_count = 24 + truth_size * truth_size / 512;
  std::vector<Blob> blobs(blob_count);
  std::vector<std::vector<double>> gain(blob_count, std::vector<double>(band_count));
  const double log_lo = 0.0;
  const double log_hi = std::log(std::max(2.0, s / 8.0));
  for (std::size_t k = 0; k < blob_count; ++k) {
    blobs[k] = {u.between(0.0, s), u.between(0.0, s), std::exp(u.between(log_lo, log_hi)),
                u.between(-150.0, 150.0)};
    for (std::size_t b = 0; b < band_count; ++b) gain[k][b] = u.between(0.6, 1.4);
  }

  std::vector<std::vector<double>> planes(band_count, std::vector<double>(truth_size * truth_size));
  for (std::size_t b = 0; b < band_count; ++b) {
    for (std::size_t y = 0; y < truth_size; ++y) {
      for (std::size_t x = 0; x < truth_size; ++x) {
        planes[b][y * truth_size + x] = base[b] + gx[b] * ((static_cast<double>(x) + 0.5) / s - 0.5) +
                                        gy[b] * ((static_cast<double>(y) + 0.5) / s - 0.5);
      }
    }
  }
  const auto last = static_cast<double>(truth_size - 1);
  for (std::size_t k = 0; k < blob_count; ++k) {
    const Blob& bl = blobs[k];
    const double reach = 4.0 * bl.sigma;
    const auto x0 = static_cast<std::size_t>(std::clamp(std::floor(bl.cx - reach), 0.0, last));
    const auto x1 = static_cast<std::size_t>(std::clamp(std::ceil(bl.cx + reach), 0.0, last));
    const auto y0 = static_cast<std::size_t>(std::clamp(std::floor(bl.cy - reach), 0.0, last));
    const auto y1 = static_cast<std::size_t>(std::clamp(std::ceil(bl.cy + reach), 0.0, last));
    const double inv = 1.0 / (2.0 * bl.sigma * bl.sigma);
    for (std::size_t y = y0; y <= y1; ++y) {
      const double dy = static_cast<double>(y) + 0.5 - bl.cy;
      for (std::size_t x = x0; x <= x1; ++x) {
        const double dx = static_cast<double>(x) + 0.5 - bl.cx;
        const double v = bl.amplitude * std::exp(-(dx * dx + dy * dy) * inv);
        for (std::size_t b = 0; b < band_count; ++b) planes[b][y * truth_size + x] += gain[k][b] * v;
      }
    }
  }
  // Keep radiance strictly positive.
  for (auto& p : planes) {
    const double lo = *std::min_element(p.begin(), p.end());
    if (lo < 10.0) {
      for (double& v : p) v += 10.0 - lo;
    }
  }

  std::vector<double> weights(band_count);
  double wsum = 0.0;
  for (double& w : weights) {
    w = u.between(0.5, 1.5);
    wsum += w;
  }
  for (double& w : weights) w /= wsum;

  std::vector<double> pan(truth_size * truth_size, 0.0);
  for (std::size_t b = 0; b < band_count; ++b) {
    for (std::size_t k = 0; k < pan.size(); ++k) pan[k] += weights[b] * planes[b][k];
  }

  std::vector<Raster> bands;
  bands.reserve(band_count);
  for (auto& p : planes) bands.emplace_back(truth_size, truth_size, std::move(p));
  MultiBandImage truth(std::move(bands));
  MultiBandImage ms = preprocess::downsample(truth, ratio, preprocess::Downsample::BoxMean);
  return {std::move(truth), std::move(ms), Raster(truth_size, truth_size, std::move(pan)),
          std::move(weights)};
}

}  // namespace pansharp::bench
