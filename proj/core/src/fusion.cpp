#include "pansharp/fusion.hpp"

#include <array>
#include <cmath>
#include <string>

#include "pansharp/error.hpp"
#include "pansharp/nnls.hpp"
#include "pansharp/pca.hpp"

namespace pansharp::fusion {

namespace {

using preprocess::HistogramMode;

constexpr std::array kReportMethods = {Method::Brovey, Method::Ihs,       Method::AdaptiveIhs,
                                       Method::Pca,    Method::Hpf,       Method::DwtAtrous,
                                       Method::DwtMallat};

MultiBandImage prepare(const MultiBandImage& ms, const Raster& pan, const FusionParams& params) {
  params.validate(ms.band_count());
  const auto r = static_cast<std::size_t>(params.ratio);
  if (pan.width() != ms.width() * r || pan.height() != ms.height() * r) {
    throw DimensionMismatch("PAN is " + std::to_string(pan.width()) + "x" +
                            std::to_string(pan.height()) + " but MS " +
                            std::to_string(ms.width()) + "x" + std::to_string(ms.height()) +
                            " times ratio " + std::to_string(params.ratio) + " is " +
                            std::to_string(ms.width() * r) + "x" +
                            std::to_string(ms.height() * r));
  }
  return preprocess::upsample(ms, params.ratio, params.resample);
}

// PAN matched to `reference`. For detail-only injection a flat PAN carries no
// detail whatever its gain, so it is passed through instead of failing the
// affine match.
Raster matched_pan(const Raster& pan, const Raster& reference,
                   const std::optional<HistogramMode>& mode, bool detail_only) {
  if (!mode) return pan;
  if (detail_only && band_stats(pan).std == 0.0) return pan;
  return preprocess::histogram_match(pan, reference, *mode);
}

FusionResult finish(MultiBandImage fused, const MultiBandImage& up, Method method,
                    FusionDiagnostics diag = {}) {
  double energy = 0.0;
  for (std::size_t b = 0; b < up.band_count(); ++b) {
    const auto f = fused[b].samples();
    const auto u = up[b].samples();
    for (std::size_t k = 0; k < f.size(); ++k) energy += (f[k] - u[k]) * (f[k] - u[k]);
  }
  diag.injected_detail_energy =
      energy / static_cast<double>(up.band_count() * up.pixel_count());
  return {std::move(fused), method, std::move(diag)};
}

// Convolution with a zero-sum kernel written as sum k * (neighbour - centre).
// Equal to convolve2d in exact arithmetic, and exactly zero on flat regions.
Raster zero_sum_response(const Raster& r, const multires::Kernel2D& k) {
  const auto w = static_cast<std::ptrdiff_t>(r.width());
  const auto h = static_cast<std::ptrdiff_t>(r.height());
  const auto cx = static_cast<std::ptrdiff_t>(k.width() / 2);
  const auto cy = static_cast<std::ptrdiff_t>(k.height() / 2);
  std::vector<double> out(r.size());
  for (std::ptrdiff_t y = 0; y < h; ++y) {
    for (std::ptrdiff_t x = 0; x < w; ++x) {
      const double c = r(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
      double acc = 0.0;
      for (std::size_t j = 0; j < k.height(); ++j) {
        const std::size_t sy = multires::boundary_index(
            y - (static_cast<std::ptrdiff_t>(j) - cy), r.height(), multires::Boundary::Replicate);
        for (std::size_t i = 0; i < k.width(); ++i) {
          const std::size_t sx = multires::boundary_index(
              x - (static_cast<std::ptrdiff_t>(i) - cx), r.width(), multires::Boundary::Replicate);
          acc += k(i, j) * (r(sx, sy) - c);
        }
      }
      out[static_cast<std::size_t>(y * w + x)] = acc;
    }
  }
  return Raster(r.width(), r.height(), std::move(out));
}

MultiBandImage add_to_each(const MultiBandImage& up, const Raster& detail) {
  std::vector<Raster> out;
  out.reserve(up.band_count());
  for (const auto& b : up.bands()) out.push_back(b + detail);
  return MultiBandImage(std::move(out));
}

FusionResult substitute_intensity(const MultiBandImage& up, const Raster& pan,
                                  const FusionParams& params, std::span<const double> alpha,
                                  Method method, FusionDiagnostics diag) {
  const Raster i = intensity(up, alpha);
  const Raster matched = matched_pan(pan, i, params.histmatch, false);
  return finish(add_to_each(up, matched - i), up, method, std::move(diag));
}

}  // namespace

Method parse_method(std::string_view name) {
  if (name == "brovey") return Method::Brovey;
  if (name == "ihs") return Method::Ihs;
  if (name == "adaptive_ihs") return Method::AdaptiveIhs;
  if (name == "pca") return Method::Pca;
  if (name == "hpf") return Method::Hpf;
  if (name == "dwt_atrous" || name == "dwt") return Method::DwtAtrous;
  if (name == "dwt_mallat") return Method::DwtMallat;
  if (name == "identity") return Method::Identity;
  throw InvalidArgument("unknown fusion method '" + std::string(name) + "'");
}

std::string_view method_name(Method method) {
  switch (method) {
    case Method::Brovey: return "brovey";
    case Method::Ihs: return "ihs";
    case Method::AdaptiveIhs: return "adaptive_ihs";
    case Method::Pca: return "pca";
    case Method::Hpf: return "hpf";
    case Method::DwtAtrous: return "dwt_atrous";
    case Method::DwtMallat: return "dwt_mallat";
    case Method::Identity: return "identity";
  }
  return "unknown";
}

DwtRule parse_dwt_rule(std::string_view name) {
  if (name == "additive") return DwtRule::Additive;
  if (name == "substitutive") return DwtRule::Substitutive;
  throw InvalidArgument("unknown DWT fusion rule '" + std::string(name) + "'");
}

std::string_view dwt_rule_name(DwtRule rule) {
  return rule == DwtRule::Additive ? "additive" : "substitutive";
}

std::span<const Method> all_methods() { return kReportMethods; }

void FusionParams::validate(std::size_t band_count) const {
  if (ratio < 1) throw InvalidArgument("fusion ratio must be >= 1");
  if (levels < 1) throw InvalidArgument("wavelet levels must be >= 1");
  if (alpha) {
    if (alpha->size() != band_count) {
      throw InvalidArgument("alpha has " + std::to_string(alpha->size()) + " weights for " +
                            std::to_string(band_count) + " bands");
    }
    double sum = 0.0;
    for (double a : *alpha) {
      if (!std::isfinite(a)) throw InvalidArgument("alpha weights must be finite");
      sum += a;
    }
    if (!(sum > 0.0)) throw InvalidArgument("alpha weights must have a positive sum");
  }
}

Raster intensity(const MultiBandImage& img, std::span<const double> alpha) {
  if (alpha.size() != img.band_count()) {
    throw InvalidArgument("intensity: weight count does not match band count");
  }
  std::vector<double> out(img.pixel_count(), 0.0);
  for (std::size_t b = 0; b < img.band_count(); ++b) {
    const auto s = img[b].samples();
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += alpha[b] * s[k];
  }
  return Raster(img.width(), img.height(), std::move(out));
}

std::vector<double> solve_adaptive_alpha(const MultiBandImage& ms_upsampled, const Raster& pan) {
  if (!pan.same_shape(ms_upsampled[0])) {
    throw DimensionMismatch("adaptive alpha: PAN and upsampled MS differ in size");
  }
  std::vector<std::vector<double>> columns;
  columns.reserve(ms_upsampled.band_count());
  for (const auto& b : ms_upsampled.bands()) columns.emplace_back(b.samples().begin(), b.samples().end());
  const std::vector<double> target(pan.samples().begin(), pan.samples().end());
  return nnls(columns, target).x;
}

FusionResult fuse_brovey(const MultiBandImage& ms, const Raster& pan, const FusionParams& params) {
  if (ms.band_count() != 3) {
    throw InvalidArgument("Brovey needs exactly 3 bands, image has " +
                          std::to_string(ms.band_count()));
  }
  const MultiBandImage up = prepare(ms, pan, params);
  const std::size_t n = up.pixel_count();
  const auto p = pan.samples();
  std::array<std::vector<double>, 3> out;
  for (auto& o : out) o.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double sum = up[0].samples()[k] + up[1].samples()[k] + up[2].samples()[k];
    for (std::size_t b = 0; b < 3; ++b) {
      out[b][k] = sum == 0.0 ? 0.0 : up[b].samples()[k] / sum * p[k];
    }
  }
  std::vector<Raster> bands;
  for (auto& o : out) bands.emplace_back(up.width(), up.height(), std::move(o));
  return finish(MultiBandImage(std::move(bands)), up, Method::Brovey);
}

FusionResult fuse_ihs(const MultiBandImage& ms, const Raster& pan, const FusionParams& params) {
  if (ms.band_count() < 2) throw InvalidArgument("IHS needs at least 2 bands");
  const MultiBandImage up = prepare(ms, pan, params);
  const std::vector<double> alpha =
      params.alpha ? *params.alpha
                   : std::vector<double>(ms.band_count(), 1.0 / static_cast<double>(ms.band_count()));
  return substitute_intensity(up, pan, params, alpha, Method::Ihs, {});
}

FusionResult fuse_adaptive_ihs(const MultiBandImage& ms, const Raster& pan,
                               const FusionParams& params) {
  if (ms.band_count() < 2) throw InvalidArgument("adaptive IHS needs at least 2 bands");
  const MultiBandImage up = prepare(ms, pan, params);
  std::vector<double> alpha = solve_adaptive_alpha(up, pan);
  FusionDiagnostics diag;
  diag.solved_alpha = alpha;
  return substitute_intensity(up, pan, params, alpha, Method::AdaptiveIhs, std::move(diag));
}

FusionResult fuse_pca(const MultiBandImage& ms, const Raster& pan, const FusionParams& params) {
  const MultiBandImage up = prepare(ms, pan, params);
  const multires::PcaResult pca = multires::pca_forward(up);
  std::vector<Raster> comps(pca.components.bands().begin(), pca.components.bands().end());
  comps[0] = matched_pan(pan, comps[0], params.histmatch, false);
  MultiBandImage fused = multires::pca_inverse(MultiBandImage(std::move(comps)), pca.model);
  FusionDiagnostics diag;
  diag.pca_eigenvalues = pca.model.eigenvalues;
  return finish(std::move(fused), up, Method::Pca, std::move(diag));
}

FusionResult fuse_hpf(const MultiBandImage& ms, const Raster& pan, const FusionParams& params) {
  if (!params.hpf_kernel.is_zero_sum()) {
    throw InvalidArgument("HPF kernel must be zero-sum, taps sum to " +
                          std::to_string(params.hpf_kernel.sum()));
  }
  const MultiBandImage up = prepare(ms, pan, params);
  const Raster detail = zero_sum_response(pan, params.hpf_kernel);
  return finish(add_to_each(up, detail), up, Method::Hpf);
}

FusionResult fuse_dwt(const MultiBandImage& ms, const Raster& pan, const FusionParams& params,
                      multires::WaveletScheme scheme) {
  const MultiBandImage up = prepare(ms, pan, params);
  std::vector<Raster> out;
  out.reserve(up.band_count());
  for (const auto& band : up.bands()) {
    const Raster p = matched_pan(pan, band, params.histmatch, true);
    const multires::WaveletStack pan_stack = multires::decompose(p, params.levels, scheme);
    if (params.dwt_rule == DwtRule::Additive) {
      out.push_back(band + multires::reconstruct(pan_stack.without_residual()));
    } else {
      const multires::WaveletStack ms_stack = multires::decompose(band, params.levels, scheme);
      out.push_back(multires::reconstruct(
          multires::WaveletStack(scheme, pan_stack.detail_planes(), ms_stack.residual())));
    }
  }
  const Method m = scheme == multires::WaveletScheme::Atrous ? Method::DwtAtrous : Method::DwtMallat;
  return finish(MultiBandImage(std::move(out)), up, m);
}

FusionResult fuse_identity(const MultiBandImage& ms, const Raster& pan,
                           const FusionParams& params) {
  MultiBandImage up = prepare(ms, pan, params);
  return finish(up, up, Method::Identity);
}

FusionResult fuse(const MultiBandImage& ms, const Raster& pan, const FusionParams& params) {
  switch (params.method) {
    case Method::Brovey: return fuse_brovey(ms, pan, params);
    case Method::Ihs: return fuse_ihs(ms, pan, params);
    case Method::AdaptiveIhs: return fuse_adaptive_ihs(ms, pan, params);
    case Method::Pca: return fuse_pca(ms, pan, params);
    case Method::Hpf: return fuse_hpf(ms, pan, params);
    case Method::DwtAtrous: return fuse_dwt(ms, pan, params, multires::WaveletScheme::Atrous);
    case Method::DwtMallat: return fuse_dwt(ms, pan, params, multires::WaveletScheme::MallatHaar);
    case Method::Identity: return fuse_identity(ms, pan, params);
  }
  throw InvalidArgument("unknown fusion method");
}

}  // namespace pansharp::fusion
