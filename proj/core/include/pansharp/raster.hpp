#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace pansharp {

/// One band: a row-major grid of finite 64-bit samples.
///
/// Rasters are immutable values. Algorithms assemble a std::vector<double>
/// and hand it to the constructor, which validates the shape and rejects
/// NaN/Inf.
class Raster {
 public:
  Raster(std::size_t width, std::size_t height, double fill = 0.0);
  Raster(std::size_t width, std::size_t height, std::vector<double> samples);

  /// Builds a raster by evaluating fn(x, y) at every pixel.
  static Raster generate(std::size_t width, std::size_t height,
                         const std::function<double(std::size_t, std::size_t)>& fn);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return samples_.size(); }

  double operator()(std::size_t x, std::size_t y) const noexcept {
    return samples_[y * width_ + x];
  }
  std::span<const double> samples() const noexcept { return samples_; }
  std::span<const double> row(std::size_t y) const noexcept {
    return std::span<const double>(samples_).subspan(y * width_, width_);
  }

  bool same_shape(const Raster& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<double> samples_;
};

/// Element-wise helpers. All require identical shapes.
Raster operator+(const Raster& a, const Raster& b);
Raster operator-(const Raster& a, const Raster& b);
Raster operator*(double s, const Raster& r);
inline Raster operator*(const Raster& r, double s) { return s * r; }
Raster add_scalar(const Raster& r, double c);

/// N co-registered bands of identical size. Band index i is meaningful.
class MultiBandImage {
 public:
  explicit MultiBandImage(std::vector<Raster> bands);

  std::size_t band_count() const noexcept { return bands_.size(); }
  std::size_t width() const noexcept { return bands_.front().width(); }
  std::size_t height() const noexcept { return bands_.front().height(); }
  std::size_t pixel_count() const noexcept { return bands_.front().size(); }

  const Raster& band(std::size_t i) const { return bands_.at(i); }
  const Raster& operator[](std::size_t i) const noexcept { return bands_[i]; }
  std::span<const Raster> bands() const noexcept { return bands_; }

  bool same_shape(const MultiBandImage& other) const noexcept {
    return band_count() == other.band_count() && width() == other.width() &&
           height() == other.height();
  }

  friend bool operator==(const MultiBandImage&, const MultiBandImage&) = default;

 private:
  std::vector<Raster> bands_;
};

struct BandStats {
  double mean;
  double std;  // population (divisor w*h)
  double min;
  double max;
};

BandStats band_stats(const Raster& r);

/// Unweighted mean across bands, pixel by pixel.
Raster band_mean(const MultiBandImage& img);

}  // namespace pansharp
