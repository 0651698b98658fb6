#include "pansharp/wavelet.hpp"

#include <string>

#include "pansharp/convolution.hpp"
#include "pansharp/error.hpp"

namespace pansharp::multires {

namespace {

void require_levels(int levels) {
  if (levels < 1) throw InvalidArgument("decomposition needs levels >= 1");
}

struct HaarBands {
  Raster ll, lh, hl, hh;
};

HaarBands haar_analyze(const Raster& r) {
  const std::size_t w = r.width() / 2;
  const std::size_t h = r.height() / 2;
  std::vector<double> ll(w * h), lh(w * h), hl(w * h), hh(w * h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const double a = r(2 * x, 2 * y);
      const double b = r(2 * x + 1, 2 * y);
      const double c = r(2 * x, 2 * y + 1);
      const double d = r(2 * x + 1, 2 * y + 1);
      const std::size_t k = y * w + x;
      ll[k] = 0.5 * (a + b + c + d);
      lh[k] = 0.5 * (a + b - c - d);
      hl[k] = 0.5 * (a - b + c - d);
      hh[k] = 0.5 * (a - b - c + d);
    }
  }
  return {Raster(w, h, std::move(ll)), Raster(w, h, std::move(lh)), Raster(w, h, std::move(hl)),
          Raster(w, h, std::move(hh))};
}

Raster haar_synthesize(const Raster& ll, const Raster& lh, const Raster& hl, const Raster& hh) {
  const std::size_t w = ll.width();
  const std::size_t h = ll.height();
  const std::size_t ow = 2 * w;
  std::vector<double> out(4 * w * h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const double s = ll(x, y);
      const double v = lh(x, y);
      const double u = hl(x, y);
      const double t = hh(x, y);
      out[(2 * y) * ow + 2 * x] = 0.5 * (s + v + u + t);
      out[(2 * y) * ow + 2 * x + 1] = 0.5 * (s + v - u - t);
      out[(2 * y + 1) * ow + 2 * x] = 0.5 * (s - v + u - t);
      out[(2 * y + 1) * ow + 2 * x + 1] = 0.5 * (s - v - u + t);
    }
  }
  return Raster(ow, 2 * h, std::move(out));
}

}  // namespace

WaveletStack::WaveletStack(WaveletScheme scheme, std::vector<Raster> detail_planes,
                           Raster residual)
    : scheme_(scheme), planes_(std::move(detail_planes)), residual_(std::move(residual)) {
  if (scheme_ == WaveletScheme::Atrous) {
    for (const auto& p : planes_) {
      if (!p.same_shape(residual_)) {
        throw DimensionMismatch("à trous planes must all match the residual size");
      }
    }
    return;
  }
  if (planes_.size() % 3 != 0) {
    throw InvalidArgument("Mallat stack needs three detail sub-bands per level");
  }
  const std::size_t lv = planes_.size() / 3;
  for (std::size_t j = 0; j < lv; ++j) {
    // Level j+1 is 2^(lv-1-j) times larger than the residual.
    const std::size_t scale = std::size_t{1} << (lv - 1 - j);
    for (std::size_t s = 0; s < 3; ++s) {
      const Raster& p = planes_[3 * j + s];
      if (p.width() != residual_.width() * scale || p.height() != residual_.height() * scale) {
        throw DimensionMismatch("Mallat sub-band at level " + std::to_string(j + 1) +
                                " has inconsistent size");
      }
    }
  }
}

std::size_t WaveletStack::levels() const noexcept {
  return scheme_ == WaveletScheme::Atrous ? planes_.size() : planes_.size() / 3;
}

WaveletStack WaveletStack::without_residual() const {
  return WaveletStack(scheme_, planes_, Raster(residual_.width(), residual_.height(), 0.0));
}

WaveletStack atrous_decompose(const Raster& r, int levels) {
  require_levels(levels);
  std::vector<Raster> planes;
  planes.reserve(static_cast<std::size_t>(levels));
  Raster smooth = r;
  std::size_t dilation = 1;
  for (int j = 0; j < levels; ++j) {
    Raster next = convolve_separable(smooth, kB3Spline, dilation, Boundary::Symmetric);
    planes.push_back(smooth - next);
    smooth = std::move(next);
    dilation *= 2;
  }
  return WaveletStack(WaveletScheme::Atrous, std::move(planes), std::move(smooth));
}

Raster atrous_reconstruct(const WaveletStack& stack) {
  if (stack.scheme() != WaveletScheme::Atrous) {
    throw InvalidArgument("atrous_reconstruct called on a Mallat stack");
  }
  // Coarse to fine, mirroring how the planes were peeled off.
  Raster out = stack.residual();
  const auto& planes = stack.detail_planes();
  for (auto it = planes.rbegin(); it != planes.rend(); ++it) out = out + *it;
  return out;
}

WaveletStack mallat_decompose(const Raster& r, int levels) {
  require_levels(levels);
  const std::size_t block = std::size_t{1} << levels;
  if (r.width() % block != 0 || r.height() % block != 0) {
    throw DimensionMismatch("Mallat decomposition of " + std::to_string(r.width()) + "x" +
                            std::to_string(r.height()) + " needs sizes divisible by " +
                            std::to_string(block));
  }
  std::vector<Raster> planes;
  planes.reserve(3 * static_cast<std::size_t>(levels));
  Raster ll = r;
  for (int j = 0; j < levels; ++j) {
    HaarBands b = haar_analyze(ll);
    planes.push_back(std::move(b.lh));
    planes.push_back(std::move(b.hl));
    planes.push_back(std::move(b.hh));
    ll = std::move(b.ll);
  }
  return WaveletStack(WaveletScheme::MallatHaar, std::move(planes), std::move(ll));
}

Raster mallat_reconstruct(const WaveletStack& stack) {
  if (stack.scheme() != WaveletScheme::MallatHaar) {
    throw InvalidArgument("mallat_reconstruct called on an à trous stack");
  }
  const auto& planes = stack.detail_planes();
  Raster ll = stack.residual();
  for (std::size_t j = stack.levels(); j-- > 0;) {
    ll = haar_synthesize(ll, planes[3 * j], planes[3 * j + 1], planes[3 * j + 2]);
  }
  return ll;
}

Raster reconstruct(const WaveletStack& stack) {
  return stack.scheme() == WaveletScheme::Atrous ? atrous_reconstruct(stack)
                                                 : mallat_reconstruct(stack);
}

WaveletStack decompose(const Raster& r, int levels, WaveletScheme scheme) {
  return scheme == WaveletScheme::Atrous ? atrous_decompose(r, levels)
                                         : mallat_decompose(r, levels);
}

}  // namespace pansharp::multires
