#include "pansharp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pansharp/convolution.hpp"
#include "pansharp/error.hpp"

namespace pansharp::metrics {

namespace {

void require_same(const Raster& a, const Raster& b, const char* what) {
  if (!a.same_shape(b)) {
    throw DimensionMismatch(std::string(what) + ": reference " + std::to_string(a.width()) +
                            "x" + std::to_string(a.height()) + " vs fused " +
                            std::to_string(b.width()) + "x" + std::to_string(b.height()));
  }
}

void require_same(const MultiBandImage& a, const MultiBandImage& b, const char* what) {
  if (a.band_count() != b.band_count()) {
    throw DimensionMismatch(std::string(what) + ": " + std::to_string(a.band_count()) +
                            " reference bands vs " + std::to_string(b.band_count()) +
                            " fused bands");
  }
  require_same(a[0], b[0], what);
}

struct Moments {
  double mean_r, mean_f, var_r, var_f, cov;
};

Moments moments(const Raster& r, const Raster& f) {
  const auto a = r.samples();
  const auto b = f.samples();
  const double n = static_cast<double>(a.size());
  double sa = 0.0, sb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    sa += a[k];
    sb += b[k];
  }
  Moments m{sa / n, sb / n, 0.0, 0.0, 0.0};
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double da = a[k] - m.mean_r;
    const double db = b[k] - m.mean_f;
    m.var_r += da * da;
    m.var_f += db * db;
    m.cov += da * db;
  }
  m.var_r /= n;
  m.var_f /= n;
  m.cov /= n;
  return m;
}

double mean_of(const Raster& r) {
  double s = 0.0;
  for (double v : r.samples()) s += v;
  return s / static_cast<double>(r.size());
}

}  // namespace

double cc(const Raster& reference, const Raster& fused) {
  require_same(reference, fused, "cc");
  const Moments m = moments(reference, fused);
  if (m.var_r == 0.0 || m.var_f == 0.0) {
    throw DegenerateInput("cc: correlation is undefined for a constant image");
  }
  return std::clamp(m.cov / std::sqrt(m.var_r * m.var_f), -1.0, 1.0);
}

double rmse(const Raster& reference, const Raster& fused) {
  require_same(reference, fused, "rmse");
  const auto a = reference.samples();
  const auto b = fused.samples();
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(acc / static_cast<double>(a.size()));
}

double rase(const MultiBandImage& reference, const MultiBandImage& fused) {
  require_same(reference, fused, "rase");
  double mu = 0.0;
  double sum_sq = 0.0;
  for (std::size_t b = 0; b < reference.band_count(); ++b) {
    mu += mean_of(reference[b]);
    const double e = rmse(reference[b], fused[b]);
    sum_sq += e * e;
  }
  const double nb = static_cast<double>(reference.band_count());
  mu /= nb;
  if (mu == 0.0) throw DegenerateInput("rase: reference mean radiance is zero");
  return 100.0 / mu * std::sqrt(sum_sq / nb);
}

UqiFactors uqi_factors(const Raster& reference, const Raster& fused) {
  require_same(reference, fused, "uqi");
  const Moments m = moments(reference, fused);
  if (m.var_r == 0.0 || m.var_f == 0.0) {
    throw DegenerateInput("uqi factors: correlation factor undefined for a constant image");
  }
  const double mean_sq = m.mean_r * m.mean_r + m.mean_f * m.mean_f;
  if (mean_sq == 0.0) throw DegenerateInput("uqi factors: both means are zero");
  const double sr = std::sqrt(m.var_r);
  const double sf = std::sqrt(m.var_f);
  return {m.cov / (sr * sf), 2.0 * m.mean_r * m.mean_f / mean_sq,
          2.0 * sr * sf / (m.var_r + m.var_f)};
}

double uqi(const Raster& reference, const Raster& fused) {
  require_same(reference, fused, "uqi");
  const Moments m = moments(reference, fused);
  const double denom =
      (m.var_r + m.var_f) * (m.mean_r * m.mean_r + m.mean_f * m.mean_f);
  if (denom == 0.0) {
    throw DegenerateInput("uqi: denominator is zero (both images constant, or both means zero)");
  }
  return 4.0 * m.cov * m.mean_r * m.mean_f / denom;
}

double ergas(const MultiBandImage& reference, const MultiBandImage& fused,
             double ratio_h_over_l) {
  require_same(reference, fused, "ergas");
  double acc = 0.0;
  for (std::size_t b = 0; b < reference.band_count(); ++b) {
    const double mu = mean_of(reference[b]);
    if (mu == 0.0) {
      throw DegenerateInput("ergas: reference band " + std::to_string(b) + " has zero mean");
    }
    const double rel = rmse(reference[b], fused[b]) / mu;
    acc += rel * rel;
  }
  return 100.0 * ratio_h_over_l *
         std::sqrt(acc / static_cast<double>(reference.band_count()));
}

double scc(const MultiBandImage& fused, const Raster& pan) {
  require_same(fused[0], pan, "scc");
  const auto lap = multires::Kernel2D::laplacian8();
  const Raster pan_edges = multires::convolve2d(pan, lap, multires::Boundary::Replicate);
  double acc = 0.0;
  for (const auto& band : fused.bands()) {
    acc += cc(multires::convolve2d(band, lap, multires::Boundary::Replicate), pan_edges);
  }
  return acc / static_cast<double>(fused.band_count());
}

MetricReport spectral_report(const MultiBandImage& reference, const MultiBandImage& fused,
                             double ratio_h_over_l) {
  require_same(reference, fused, "metric report");
  MetricReport rep;
  rep.ratio_h_over_l = ratio_h_over_l;
  const double nb = static_cast<double>(reference.band_count());
  for (std::size_t b = 0; b < reference.band_count(); ++b) {
    BandMetrics m{cc(reference[b], fused[b]), rmse(reference[b], fused[b]),
                  uqi(reference[b], fused[b])};
    rep.aggregate.cc += m.cc / nb;
    rep.aggregate.rmse += m.rmse / nb;
    rep.aggregate.quality += m.uqi / nb;
    rep.per_band.push_back(m);
  }
  rep.aggregate.rase = rase(reference, fused);
  rep.aggregate.ergas = ergas(reference, fused, ratio_h_over_l);
  return rep;
}

MetricReport full_report(const MultiBandImage& reference, const MultiBandImage& fused,
                         const Raster& pan, double ratio_h_over_l) {
  MetricReport rep = spectral_report(reference, fused, ratio_h_over_l);
  rep.aggregate.scc = scc(fused, pan);
  return rep;
}

std::string_view metric_key(Metric m) {
  switch (m) {
    case Metric::Cc: return "cc";
    case Metric::Ergas: return "ergas";
    case Metric::Quality: return "quality";
    case Metric::Rase: return "rase";
    case Metric::Rmse: return "rmse";
    case Metric::Scc: return "scc";
  }
  return "";
}

std::string_view metric_label(Metric m) {
  switch (m) {
    case Metric::Cc: return "CC";
    case Metric::Ergas: return "ERGAS";
    case Metric::Quality: return "Quality";
    case Metric::Rase: return "RASE";
    case Metric::Rmse: return "RMSE";
    case Metric::Scc: return "SCC";
  }
  return "";
}

bool higher_is_better(Metric m) {
  return m == Metric::Cc || m == Metric::Quality || m == Metric::Scc;
}

std::optional<double> metric_value(const AggregateMetrics& a, Metric m) {
  switch (m) {
    case Metric::Cc: return a.cc;
    case Metric::Ergas: return a.ergas;
    case Metric::Quality: return a.quality;
    case Metric::Rase: return a.rase;
    case Metric::Rmse: return a.rmse;
    case Metric::Scc: return a.scc;
  }
  return std::nullopt;
}

}  // namespace pansharp::metrics
