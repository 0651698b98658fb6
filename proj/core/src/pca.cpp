#include "pansharp/pca.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pansharp/error.hpp"

namespace pansharp::multires {

std::vector<double> band_covariance(const MultiBandImage& img) {
  const std::size_t nb = img.band_count();
  const std::size_t n = img.pixel_count();
  std::vector<double> means(nb);
  for (std::size_t b = 0; b < nb; ++b) means[b] = band_stats(img[b]).mean;
  std::vector<double> cov(nb * nb, 0.0);
  for (std::size_t i = 0; i < nb; ++i) {
    const auto si = img[i].samples();
    for (std::size_t j = i; j < nb; ++j) {
      const auto sj = img[j].samples();
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += (si[k] - means[i]) * (sj[k] - means[j]);
      cov[i * nb + j] = cov[j * nb + i] = acc / static_cast<double>(n);
    }
  }
  return cov;
}

PcaResult pca_forward(const MultiBandImage& ms) {
  const std::size_t nb = ms.band_count();
  if (nb < 2) {
    throw InvalidArgument("PCA needs at least 2 bands, image has " + std::to_string(nb));
  }
  const std::vector<double> cov = band_covariance(ms);
  double trace = 0.0;
  for (std::size_t i = 0; i < nb; ++i) trace += cov[i * nb + i];
  if (trace <= 0.0) throw DegenerateInput("PCA: every band is constant (covariance rank 0)");

  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> c(
      cov.data(), static_cast<Eigen::Index>(nb), static_cast<Eigen::Index>(nb));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(c);
  if (solver.info() != Eigen::Success) throw DegenerateInput("PCA eigen-decomposition failed");

  // Eigen returns ascending eigenvalues; columns are eigenvectors.
  PcaModel model;
  model.band_count = nb;
  model.basis.resize(nb * nb);
  model.eigenvalues.resize(nb);
  model.band_means.resize(nb);
  for (std::size_t b = 0; b < nb; ++b) model.band_means[b] = band_stats(ms[b]).mean;
  for (std::size_t r = 0; r < nb; ++r) {
    const auto col = static_cast<Eigen::Index>(nb - 1 - r);
    model.eigenvalues[r] = solver.eigenvalues()(col);
    Eigen::VectorXd v = solver.eigenvectors().col(col);
    double sum = v.sum();
    double sign = 1.0;
    if (std::abs(sum) > 1e-12) {
      sign = sum < 0.0 ? -1.0 : 1.0;
    } else {
      for (Eigen::Index k = 0; k < v.size(); ++k) {
        if (std::abs(v(k)) > 1e-12) {
          sign = v(k) < 0.0 ? -1.0 : 1.0;
          break;
        }
      }
    }
    for (std::size_t k = 0; k < nb; ++k) {
      model.basis[r * nb + k] = sign * v(static_cast<Eigen::Index>(k));
    }
  }

  const std::size_t n = ms.pixel_count();
  std::vector<std::vector<double>> comps(nb, std::vector<double>(n));
  std::vector<double> centred(nb);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t b = 0; b < nb; ++b) centred[b] = ms[b].samples()[k] - model.band_means[b];
    for (std::size_t r = 0; r < nb; ++r) {
      double acc = 0.0;
      for (std::size_t b = 0; b < nb; ++b) acc += model.basis[r * nb + b] * centred[b];
      comps[r][k] = acc;
    }
  }
  std::vector<Raster> bands;
  bands.reserve(nb);
  for (auto& c_r : comps) bands.emplace_back(ms.width(), ms.height(), std::move(c_r));
  return {MultiBandImage(std::move(bands)), std::move(model)};
}

MultiBandImage pca_inverse(const MultiBandImage& components, const PcaModel& model) {
  const std::size_t nb = model.band_count;
  if (components.band_count() != nb || model.basis.size() != nb * nb ||
      model.band_means.size() != nb) {
    throw DimensionMismatch("PCA inverse: " + std::to_string(components.band_count()) +
                            " components for a " + std::to_string(nb) + "-band model");
  }
  const std::size_t n = components.pixel_count();
  std::vector<std::vector<double>> out(nb, std::vector<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t b = 0; b < nb; ++b) {
      double acc = model.band_means[b];
      for (std::size_t r = 0; r < nb; ++r) acc += model.basis[r * nb + b] * components[r].samples()[k];
      out[b][k] = acc;
    }
  }
  std::vector<Raster> bands;
  bands.reserve(nb);
  for (auto& o : out) bands.emplace_back(components.width(), components.height(), std::move(o));
  return MultiBandImage(std::move(bands));
}

}  // namespace pansharp::multires
