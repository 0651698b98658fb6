#pragma once

#include <array>
#include <vector>

#include "pansharp/raster.hpp"

namespace pansharp::multires {

enum class WaveletScheme { Atrous, MallatHaar };

/// Separable B3-spline smoothing taps used by the à trous transform.
inline constexpr std::array<double, 5> kB3Spline = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16,
                                                    1.0 / 16};

/// Detail planes plus low-frequency residual of a multiresolution decomposition.
///
/// À trous: every plane and the residual share the input size; planes are
/// ordered fine to coarse.
///
/// Mallat/Haar: three sub-bands per level, stored level by level (finest
/// first) in the order LH, HL, HH. The first letter is the filter applied
/// along x, the second along y, so LH holds horizontal edges. Level j
/// (1-based) planes are (w / 2^j) x (h / 2^j); the residual is the coarsest LL.
class WaveletStack {
 public:
  WaveletStack(WaveletScheme scheme, std::vector<Raster> detail_planes, Raster residual);

  WaveletScheme scheme() const noexcept { return scheme_; }
  const std::vector<Raster>& detail_planes() const noexcept { return planes_; }
  const Raster& residual() const noexcept { return residual_; }
  /// Decomposition depth: planes for à trous, planes / 3 for Mallat.
  std::size_t levels() const noexcept;

  /// Copy with the residual replaced by zeros (detail-only stack).
  WaveletStack without_residual() const;

 private:
  WaveletScheme scheme_;
  std::vector<Raster> planes_;
  Raster residual_;
};

/// smooth[0] = r, smooth[j+1] = smooth[j] convolved with the B3 spline dilated
/// by 2^j (symmetric boundary); plane[j] = smooth[j] - smooth[j+1].
WaveletStack atrous_decompose(const Raster& r, int levels);
/// Sum of detail planes plus residual.
Raster atrous_reconstruct(const WaveletStack& stack);

/// Orthonormal 2-D Haar analysis; width and height must be divisible by 2^levels.
WaveletStack mallat_decompose(const Raster& r, int levels);
Raster mallat_reconstruct(const WaveletStack& stack);

/// Dispatches on stack.scheme().
Raster reconstruct(const WaveletStack& stack);
WaveletStack decompose(const Raster& r, int levels, WaveletScheme scheme);

}  // namespace pansharp::multires
