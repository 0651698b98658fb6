#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "pansharp/raster.hpp"

namespace pansharp::metrics {

/// Pearson correlation. Throws DegenerateInput if either raster is constant.
double cc(const Raster& reference, const Raster& fused);

double rmse(const Raster& reference, const Raster& fused);

/// (100 / mu) * sqrt(mean_i RMSE_i^2), mu the mean of every reference sample.
double rase(const MultiBandImage& reference, const MultiBandImage& fused);

/// The three factors of the universal quality index.
struct UqiFactors {
  double correlation;  // sigma_RF / (sigma_R sigma_F)
  double luminance;    // 2 mean_R mean_F / (mean_R^2 + mean_F^2)
  double contrast;     // 2 sigma_R sigma_F / (sigma_R^2 + sigma_F^2)
  double product() const noexcept { return correlation * luminance * contrast; }
};

/// Global (single-window) UQI:
/// 4 sigma_RF mean_R mean_F / ((sigma_R^2 + sigma_F^2)(mean_R^2 + mean_F^2)).
double uqi(const Raster& reference, const Raster& fused);
UqiFactors uqi_factors(const Raster& reference, const Raster& fused);

/// 100 * ratio_h_over_l * sqrt(mean_i (RMSE_i / mu_i)^2), mu_i the reference band means.
double ergas(const MultiBandImage& reference, const MultiBandImage& fused,
             double ratio_h_over_l = 0.25);

/// Mean over bands of cc(laplacian(F_i), laplacian(P)), 8-neighbour
/// Laplacian with replicated borders.
double scc(const MultiBandImage& fused, const Raster& pan);

struct BandMetrics {
  double cc = 0.0;
  double rmse = 0.0;
  double uqi = 0.0;
  friend bool operator==(const BandMetrics&, const BandMetrics&) = default;
};

struct AggregateMetrics {
  double cc = 0.0;       // band mean
  double ergas = 0.0;
  double quality = 0.0;  // band-mean UQI
  double rase = 0.0;
  double rmse = 0.0;     // band mean
  std::optional<double> scc;  // absent when no PAN is involved
  friend bool operator==(const AggregateMetrics&, const AggregateMetrics&) = default;
};

struct MetricReport {
  std::vector<BandMetrics> per_band;
  AggregateMetrics aggregate;
  double ratio_h_over_l = 0.25;
  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

/// All six indices of fused against the reference on the same grid, plus SCC against PAN.
MetricReport full_report(const MultiBandImage& reference, const MultiBandImage& fused,
                         const Raster& pan, double ratio_h_over_l = 0.25);

/// Same as full_report without SCC.
MetricReport spectral_report(const MultiBandImage& reference, const MultiBandImage& fused,
                             double ratio_h_over_l = 0.25);

/// Report columns in table order.
enum class Metric { Cc, Ergas, Quality, Rase, Rmse, Scc };
inline constexpr std::array kAllMetrics = {Metric::Cc,   Metric::Ergas, Metric::Quality,
                                           Metric::Rase, Metric::Rmse,  Metric::Scc};

std::string_view metric_key(Metric m);    // "cc", "ergas", ...
std::string_view metric_label(Metric m);  // "CC", "ERGAS", "Quality", ...
bool higher_is_better(Metric m);
std::optional<double> metric_value(const AggregateMetrics& a, Metric m);

}  // namespace pansharp::metrics
