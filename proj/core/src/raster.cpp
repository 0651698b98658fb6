#include "pansharp/raster.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pansharp/error.hpp"

namespace pansharp {

namespace {

void require_shape(std::size_t width, std::size_t height) {
  if (width == 0 || height == 0) {
    throw InvalidArgument("raster dimensions must be at least 1x1, got " +
                          std::to_string(width) + "x" + std::to_string(height));
  }
}

void require_same_shape(const Raster& a, const Raster& b, const char* what) {
  if (!a.same_shape(b)) {
    throw DimensionMismatch(std::string(what) + ": raster shapes differ (" +
                            std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                            " vs " + std::to_string(b.width()) + "x" +
                            std::to_string(b.height()) + ")");
  }
}

}  // namespace

Raster::Raster(std::size_t width, std::size_t height, double fill)
    : width_(width), height_(height) {
  require_shape(width, height);
  if (!std::isfinite(fill)) throw InvalidArgument("raster fill value is not finite");
  samples_.assign(width * height, fill);
}

Raster::Raster(std::size_t width, std::size_t height, std::vector<double> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
  require_shape(width, height);
  if (samples_.size() != width * height) {
    throw InvalidArgument("raster sample count " + std::to_string(samples_.size()) +
                          " does not match " + std::to_string(width) + "x" +
                          std::to_string(height));
  }
  auto bad = std::find_if(samples_.begin(), samples_.end(),
                          [](double v) { return !std::isfinite(v); });
  if (bad != samples_.end()) {
    const auto idx = static_cast<std::size_t>(bad - samples_.begin());
    throw InvalidArgument("non-finite sample at (" + std::to_string(idx % width) + ", " +
                          std::to_string(idx / width) + ")");
  }
}

Raster Raster::generate(std::size_t width, std::size_t height,
                        const std::function<double(std::size_t, std::size_t)>& fn) {
  require_shape(width, height);
  std::vector<double> out(width * height);
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) out[y * width + x] = fn(x, y);
  }
  return Raster(width, height, std::move(out));
}

Raster operator+(const Raster& a, const Raster& b) {
  require_same_shape(a, b, "raster addition");
  std::vector<double> out(a.size());
  std::transform(a.samples().begin(), a.samples().end(), b.samples().begin(), out.begin(),
                 std::plus<>());
  return Raster(a.width(), a.height(), std::move(out));
}

Raster operator-(const Raster& a, const Raster& b) {
  require_same_shape(a, b, "raster subtraction");
  std::vector<double> out(a.size());
  std::transform(a.samples().begin(), a.samples().end(), b.samples().begin(), out.begin(),
                 std::minus<>());
  return Raster(a.width(), a.height(), std::move(out));
}

Raster operator*(double s, const Raster& r) {
  std::vector<double> out(r.size());
  std::transform(r.samples().begin(), r.samples().end(), out.begin(),
                 [s](double v) { return s * v; });
  return Raster(r.width(), r.height(), std::move(out));
}

Raster add_scalar(const Raster& r, double c) {
  std::vector<double> out(r.size());
  std::transform(r.samples().begin(), r.samples().end(), out.begin(),
                 [c](double v) { return v + c; });
  return Raster(r.width(), r.height(), std::move(out));
}

MultiBandImage::MultiBandImage(std::vector<Raster> bands) : bands_(std::move(bands)) {
  if (bands_.empty()) throw InvalidArgument("multi-band image needs at least one band");
  for (std::size_t i = 1; i < bands_.size(); ++i) {
    if (!bands_[i].same_shape(bands_[0])) {
      throw DimensionMismatch("band " + std::to_string(i) + " is " +
                              std::to_string(bands_[i].width()) + "x" +
                              std::to_string(bands_[i].height()) + ", band 0 is " +
                              std::to_string(bands_[0].width()) + "x" +
                              std::to_string(bands_[0].height()));
    }
  }
}

BandStats band_stats(const Raster& r) {
  const auto s = r.samples();
  const double n = static_cast<double>(s.size());
  double sum = 0.0;
  double lo = s.front();
  double hi = s.front();
  for (double v : s) {
    sum += v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (lo == hi) return {lo, 0.0, lo, hi};
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : s) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / n), lo, hi};
}

Raster band_mean(const MultiBandImage& img) {
  std::vector<double> acc(img.pixel_count(), 0.0);
  for (const auto& band : img.bands()) {
    const auto s = band.samples();
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += s[k];
  }
  const double inv = 1.0 / static_cast<double>(img.band_count());
  for (double& v : acc) v *= inv;
  return Raster(img.width(), img.height(), std::move(acc));
}

}  // namespace pansharp
