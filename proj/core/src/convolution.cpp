#include "pansharp/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pansharp/error.hpp"

namespace pansharp::multires {

Kernel2D::Kernel2D(std::size_t width, std::size_t height, std::vector<double> taps)
    : width_(width), height_(height), taps_(std::move(taps)) {
  if (width % 2 == 0 || height % 2 == 0) {
    throw InvalidArgument("kernel dimensions must be odd, got " + std::to_string(width) + "x" +
                          std::to_string(height));
  }
  if (taps_.size() != width * height) throw InvalidArgument("kernel tap count mismatch");
  for (double t : taps_) {
    if (!std::isfinite(t)) throw InvalidArgument("kernel taps must be finite");
  }
}

Kernel2D Kernel2D::identity3() { return Kernel2D(3, 3, {0, 0, 0, 0, 1, 0, 0, 0, 0}); }

Kernel2D Kernel2D::laplacian8() { return Kernel2D(3, 3, {-1, -1, -1, -1, 8, -1, -1, -1, -1}); }

Kernel2D Kernel2D::highpass3() {
  std::vector<double> t = {-1, -1, -1, -1, 8, -1, -1, -1, -1};
  for (double& v : t) v /= 9.0;
  return Kernel2D(3, 3, std::move(t));
}

double Kernel2D::sum() const noexcept { return std::accumulate(taps_.begin(), taps_.end(), 0.0); }

bool Kernel2D::is_zero_sum() const noexcept {
  double mag = 0.0;
  for (double t : taps_) mag += std::abs(t);
  return std::abs(sum()) <= 1e-12 * std::max(mag, 1.0);
}

std::size_t boundary_index(std::ptrdiff_t i, std::size_t n, Boundary boundary) noexcept {
  const auto len = static_cast<std::ptrdiff_t>(n);
  if (i >= 0 && i < len) return static_cast<std::size_t>(i);
  if (boundary == Boundary::Replicate) return i < 0 ? 0 : n - 1;
  // Half-sample symmetric extension has period 2n.
  const std::ptrdiff_t period = 2 * len;
  std::ptrdiff_t m = i % period;
  if (m < 0) m += period;
  return static_cast<std::size_t>(m < len ? m : period - 1 - m);
}

Raster convolve2d(const Raster& r, const Kernel2D& k, Boundary boundary) {
  const std::size_t w = r.width();
  const std::size_t h = r.height();
  const auto cx = static_cast<std::ptrdiff_t>(k.width() / 2);
  const auto cy = static_cast<std::ptrdiff_t>(k.height() / 2);
  std::vector<double> out(w * h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      double acc = 0.0;
      for (std::size_t j = 0; j < k.height(); ++j) {
        const std::size_t sy = boundary_index(
            static_cast<std::ptrdiff_t>(y) - (static_cast<std::ptrdiff_t>(j) - cy), h, boundary);
        for (std::size_t i = 0; i < k.width(); ++i) {
          const std::size_t sx = boundary_index(
              static_cast<std::ptrdiff_t>(x) - (static_cast<std::ptrdiff_t>(i) - cx), w, boundary);
          acc += k(i, j) * r(sx, sy);
        }
      }
      out[y * w + x] = acc;
    }
  }
  return Raster(w, h, std::move(out));
}

Raster convolve_separable(const Raster& r, std::span<const double> taps, std::size_t dilation,
                          Boundary boundary) {
  if (taps.size() % 2 == 0) throw InvalidArgument("separable kernel needs an odd tap count");
  if (dilation == 0) throw InvalidArgument("dilation must be >= 1");
  const std::size_t w = r.width();
  const std::size_t h = r.height();
  const auto half = static_cast<std::ptrdiff_t>(taps.size() / 2);
  const auto step = static_cast<std::ptrdiff_t>(dilation);

  std::vector<double> tmp(w * h);
  for (std::size_t y = 0; y < h; ++y) {
    const auto row = r.row(y);
    for (std::size_t x = 0; x < w; ++x) {
      double acc = 0.0;
      for (std::ptrdiff_t t = -half; t <= half; ++t) {
        const std::size_t sx =
            boundary_index(static_cast<std::ptrdiff_t>(x) - t * step, w, boundary);
        acc += taps[static_cast<std::size_t>(t + half)] * row[sx];
      }
      tmp[y * w + x] = acc;
    }
  }
  std::vector<double> out(w * h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      double acc = 0.0;
      for (std::ptrdiff_t t = -half; t <= half; ++t) {
        const std::size_t sy =
            boundary_index(static_cast<std::ptrdiff_t>(y) - t * step, h, boundary);
        acc += taps[static_cast<std::size_t>(t + half)] * tmp[sy * w + x];
      }
      out[y * w + x] = acc;
    }
  }
  return Raster(w, h, std::move(out));
}

}  // namespace pansharp::multires
