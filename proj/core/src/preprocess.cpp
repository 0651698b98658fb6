#include "pansharp/preprocess.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "pansharp/error.hpp"

namespace pansharp::preprocess {

namespace {

void require_factor(int factor) {
  if (factor < 1) {
    throw InvalidArgument("resampling factor must be >= 1, got " + std::to_string(factor));
  }
}

double catmull_rom(double t) {
  constexpr double a = -0.5;
  t = std::abs(t);
  if (t <= 1.0) return ((a + 2.0) * t - (a + 3.0)) * t * t + 1.0;
  if (t < 2.0) return ((a * t - 5.0 * a) * t + 8.0 * a) * t - 4.0 * a;
  return 0.0;
}

// Interpolation weights along one axis: for each output index, the input
// taps (edge-clamped) and their weights.
struct AxisTaps {
  std::vector<std::array<std::size_t, 4>> index;
  std::vector<std::array<double, 4>> weight;
  int taps = 0;
};

AxisTaps axis_taps(std::size_t in_len, int factor, Resample method) {
  const std::size_t out_len = in_len * static_cast<std::size_t>(factor);
  AxisTaps t;
  t.index.resize(out_len);
  t.weight.resize(out_len);
  const auto last = static_cast<std::ptrdiff_t>(in_len) - 1;
  auto clamp_index = [last](std::ptrdiff_t i) {
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(i, 0, last));
  };
  for (std::size_t o = 0; o < out_len; ++o) {
    const double u = (static_cast<double>(o) + 0.5) / factor - 0.5;
    switch (method) {
      case Resample::Nearest:
        t.taps = 1;
        t.index[o] = {o / static_cast<std::size_t>(factor), 0, 0, 0};
        t.weight[o] = {1.0, 0, 0, 0};
        break;
      case Resample::Bilinear: {
        t.taps = 2;
        const double base = std::floor(u);
        const double frac = u - base;
        const auto i0 = static_cast<std::ptrdiff_t>(base);
        t.index[o] = {clamp_index(i0), clamp_index(i0 + 1), 0, 0};
        t.weight[o] = {1.0 - frac, frac, 0, 0};
        break;
      }
      case Resample::Bicubic: {
        t.taps = 4;
        const double base = std::floor(u);
        const double frac = u - base;
        const auto i0 = static_cast<std::ptrdiff_t>(base);
        for (int k = 0; k < 4; ++k) {
          t.index[o][k] = clamp_index(i0 - 1 + k);
          t.weight[o][k] = catmull_rom(frac - (k - 1));
        }
        break;
      }
    }
  }
  return t;
}

void require_divisible(const Raster& r, int factor) {
  const auto f = static_cast<std::size_t>(factor);
  if (r.width() % f != 0 || r.height() % f != 0) {
    throw DimensionMismatch("raster " + std::to_string(r.width()) + "x" +
                            std::to_string(r.height()) + " is not divisible by factor " +
                            std::to_string(factor));
  }
}

}  // namespace

Resample parse_resample(std::string_view name) {
  if (name == "nearest") return Resample::Nearest;
  if (name == "bilinear") return Resample::Bilinear;
  if (name == "bicubic") return Resample::Bicubic;
  throw InvalidArgument("unknown resampling method '" + std::string(name) + "'");
}

std::string_view resample_name(Resample method) {
  switch (method) {
    case Resample::Nearest: return "nearest";
    case Resample::Bilinear: return "bilinear";
    case Resample::Bicubic: return "bicubic";
  }
  return "unknown";
}

HistogramMode parse_histogram_mode(std::string_view name) {
  if (name == "mean_std") return HistogramMode::MeanStd;
  if (name == "cdf") return HistogramMode::Cdf;
  throw InvalidArgument("unknown histogram-match mode '" + std::string(name) + "'");
}

std::string_view histogram_mode_name(HistogramMode mode) {
  return mode == HistogramMode::MeanStd ? "mean_std" : "cdf";
}

Raster upsample(const Raster& r, int factor, Resample method) {
  require_factor(factor);
  if (factor == 1) return r;
  const std::size_t w = r.width();
  const std::size_t h = r.height();
  const std::size_t ow = w * static_cast<std::size_t>(factor);
  const std::size_t oh = h * static_cast<std::size_t>(factor);
  const AxisTaps tx = axis_taps(w, factor, method);
  const AxisTaps ty = axis_taps(h, factor, method);

  // Separable: rows first into a (ow x h) buffer, then columns.
  std::vector<double> horiz(ow * h);
  for (std::size_t y = 0; y < h; ++y) {
    const auto row = r.row(y);
    for (std::size_t x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int k = 0; k < tx.taps; ++k) acc += tx.weight[x][k] * row[tx.index[x][k]];
      horiz[y * ow + x] = acc;
    }
  }
  std::vector<double> out(ow * oh);
  for (std::size_t y = 0; y < oh; ++y) {
    for (std::size_t x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int k = 0; k < ty.taps; ++k) acc += ty.weight[y][k] * horiz[ty.index[y][k] * ow + x];
      out[y * ow + x] = acc;
    }
  }
  return Raster(ow, oh, std::move(out));
}

MultiBandImage upsample(const MultiBandImage& img, int factor, Resample method) {
  std::vector<Raster> bands;
  bands.reserve(img.band_count());
  for (const auto& b : img.bands()) bands.push_back(upsample(b, factor, method));
  return MultiBandImage(std::move(bands));
}

Raster downsample(const Raster& r, int factor, Downsample filter) {
  require_factor(factor);
  require_divisible(r, factor);
  const auto f = static_cast<std::size_t>(factor);
  const std::size_t ow = r.width() / f;
  const std::size_t oh = r.height() / f;
  std::vector<double> out(ow * oh);
  const double inv = 1.0 / static_cast<double>(f * f);
  for (std::size_t y = 0; y < oh; ++y) {
    for (std::size_t x = 0; x < ow; ++x) {
      if (filter == Downsample::Decimate) {
        out[y * ow + x] = r(x * f, y * f);
        continue;
      }
      double acc = 0.0;
      for (std::size_t dy = 0; dy < f; ++dy) {
        for (std::size_t dx = 0; dx < f; ++dx) acc += r(x * f + dx, y * f + dy);
      }
      // One correction pass around the first estimate. It makes the mean of
      // a constant block exactly that constant, so box mean undoes nearest
      // upsampling bit for bit.
      const double m = acc * inv;
      double corr = 0.0;
      for (std::size_t dy = 0; dy < f; ++dy) {
        for (std::size_t dx = 0; dx < f; ++dx) corr += r(x * f + dx, y * f + dy) - m;
      }
      out[y * ow + x] = m + corr * inv;
    }
  }
  return Raster(ow, oh, std::move(out));
}

MultiBandImage downsample(const MultiBandImage& img, int factor, Downsample filter) {
  std::vector<Raster> bands;
  bands.reserve(img.band_count());
  for (const auto& b : img.bands()) bands.push_back(downsample(b, factor, filter));
  return MultiBandImage(std::move(bands));
}

Raster histogram_match(const Raster& src, const Raster& reference, HistogramMode mode) {
  const BandStats s = band_stats(src);
  const BandStats ref = band_stats(reference);

  if (ref.std == 0.0) return Raster(src.width(), src.height(), ref.mean);

  if (mode == HistogramMode::MeanStd) {
    if (s.std == 0.0) {
      throw DegenerateInput(
          "histogram match: source is constant but the reference is not; the affine map is "
          "undefined");
    }
    const double gain = ref.std / s.std;
    std::vector<double> out(src.size());
    const auto in = src.samples();
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = (in[k] - s.mean) * gain + ref.mean;
    return Raster(src.width(), src.height(), std::move(out));
  }

  // Rank-order mapping.
  const auto in = src.samples();
  const std::size_t n = in.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return in[a] < in[b]; });

  std::vector<double> sorted_ref(reference.samples().begin(), reference.samples().end());
  std::sort(sorted_ref.begin(), sorted_ref.end());
  const double m = static_cast<double>(sorted_ref.size());
  auto quantile = [&](double p) {
    const double pos = std::clamp(p * m - 0.5, 0.0, m - 1.0);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted_ref.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return frac == 0.0 ? sorted_ref[lo] : sorted_ref[lo] + frac * (sorted_ref[hi] - sorted_ref[lo]);
  };

  std::vector<double> out(n);
  const double nn = static_cast<double>(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && in[order[j + 1]] == in[order[i]]) ++j;
    const double midrank = 0.5 * static_cast<double>(i + j);
    const double value = quantile((midrank + 0.5) / nn);
    for (std::size_t k = i; k <= j; ++k) out[order[k]] = value;
    i = j + 1;
  }
  return Raster(src.width(), src.height(), std::move(out));
}

}  // namespace pansharp::preprocess
