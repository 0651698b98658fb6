#pragma once

#include <vector>

#include "pansharp/raster.hpp"

namespace pansharp::multires {

/// Principal-component model of an N-band image.
///
/// basis is N x N row-major with rows as principal directions, sorted by
/// descending eigenvalue. Each row is signed so its entries sum to a
/// non-negative value (ties: first non-zero entry positive).
struct PcaModel {
  std::size_t band_count = 0;
  std::vector<double> basis;
  std::vector<double> band_means;
  std::vector<double> eigenvalues;

  double at(std::size_t row, std::size_t col) const { return basis[row * band_count + col]; }
};

struct PcaResult {
  MultiBandImage components;
  PcaModel model;
};

/// Population covariance of the bands, row-major N x N.
std::vector<double> band_covariance(const MultiBandImage& img);

/// components = basis * (pixel - means). Requires >= 2 bands and at least
/// one non-constant band.
PcaResult pca_forward(const MultiBandImage& ms);

/// pixel = basis^T * components + means.
MultiBandImage pca_inverse(const MultiBandImage& components, const PcaModel& model);

}  // namespace pansharp::multires
