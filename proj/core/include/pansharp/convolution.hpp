#pragma once

#include <span>
#include <vector>

#include "pansharp/raster.hpp"

namespace pansharp::multires {

enum class Boundary {
  Replicate,  // clamp to the edge sample
  Symmetric,  // half-sample mirror: index -1 reads 0, -2 reads 1
};

/// Odd x odd convolution kernel with finite taps, row-major.
class Kernel2D {
 public:
  Kernel2D(std::size_t width, std::size_t height, std::vector<double> taps);

  static Kernel2D identity3();
  /// 8-neighbour Laplacian [[-1,-1,-1],[-1,8,-1],[-1,-1,-1]].
  static Kernel2D laplacian8();
  /// The Laplacian scaled by 1/9; default high-pass filter for detail injection.
  static Kernel2D highpass3();

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  double operator()(std::size_t x, std::size_t y) const noexcept { return taps_[y * width_ + x]; }
  std::span<const double> taps() const noexcept { return taps_; }

  double sum() const noexcept;
  /// True when |sum| is negligible relative to the tap magnitudes.
  bool is_zero_sum() const noexcept;

  friend bool operator==(const Kernel2D&, const Kernel2D&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<double> taps_;
};

/// Maps a possibly out-of-range index onto [0, n) under the boundary rule.
std::size_t boundary_index(std::ptrdiff_t i, std::size_t n, Boundary boundary) noexcept;

/// True 2-D convolution: out(x, y) = sum k(i, j) * r(x - (i - cx), y - (j - cy)).
Raster convolve2d(const Raster& r, const Kernel2D& k, Boundary boundary);

/// Separable convolution with the same symmetric 1-D taps along x then y.
/// Taps are spaced `dilation` samples apart (holes in between).
Raster convolve_separable(const Raster& r, std::span<const double> taps, std::size_t dilation,
                          Boundary boundary);

}  // namespace pansharp::multires
