#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pansharp/convolution.hpp"
#include "pansharp/preprocess.hpp"
#include "pansharp/raster.hpp"
#include "pansharp/wavelet.hpp"

namespace pansharp::fusion {

enum class Method {
  Brovey,
  Ihs,
  AdaptiveIhs,
  Pca,
  Hpf,
  DwtAtrous,
  DwtMallat,
  Identity,  // fused := upsampled MS; a baseline for the benchmark, not a real method
};

enum class DwtRule { Additive, Substitutive };

Method parse_method(std::string_view name);
std::string_view method_name(Method method);
DwtRule parse_dwt_rule(std::string_view name);
std::string_view dwt_rule_name(DwtRule rule);

/// The six families from the literature, in report order (Identity excluded).
std::span<const Method> all_methods();

struct FusionParams {
  Method method = Method::Brovey;
  int ratio = 4;  // PAN size / MS size
  preprocess::Resample resample = preprocess::Resample::Bicubic;
  /// How PAN is matched to the component it replaces; nullopt injects PAN as is.
  std::optional<preprocess::HistogramMode> histmatch = preprocess::HistogramMode::MeanStd;
  multires::Kernel2D hpf_kernel = multires::Kernel2D::highpass3();
  int levels = 2;
  DwtRule dwt_rule = DwtRule::Additive;
  /// IHS intensity weights; defaults to 1/N each.
  std::optional<std::vector<double>> alpha;

  /// Throws InvalidArgument when a field violates its contract for an
  /// image with `band_count` bands.
  void validate(std::size_t band_count) const;
};

struct FusionDiagnostics {
  std::optional<std::vector<double>> solved_alpha;
  std::optional<std::vector<double>> pca_eigenvalues;
  /// Mean squared difference between fused and upsampled MS.
  double injected_detail_energy = 0.0;
  friend bool operator==(const FusionDiagnostics&, const FusionDiagnostics&) = default;
};

struct FusionResult {
  MultiBandImage fused;
  Method method;
  FusionDiagnostics diagnostics;
};

/// Runs params.method. MS is upsampled to the PAN grid first; PAN must be
/// exactly params.ratio times larger than MS in both directions.
FusionResult fuse(const MultiBandImage& ms, const Raster& pan, const FusionParams& params);

/// out_i = ms_i / sum_j ms_j * pan. Pixels whose band sum is zero output 0.
/// Requires exactly three bands.
FusionResult fuse_brovey(const MultiBandImage& ms, const Raster& pan, const FusionParams& params);

/// I = sum alpha_i M_i; P' = PAN matched to I; out_i = M_i + (P' - I).
FusionResult fuse_ihs(const MultiBandImage& ms, const Raster& pan, const FusionParams& params);

/// IHS with alpha from solve_adaptive_alpha.
FusionResult fuse_adaptive_ihs(const MultiBandImage& ms, const Raster& pan,
                               const FusionParams& params);

/// Replaces the first principal component with PAN matched to it.
FusionResult fuse_pca(const MultiBandImage& ms, const Raster& pan, const FusionParams& params);

/// out_i = M_i + conv(PAN, hpf_kernel); the kernel must be zero-sum.
FusionResult fuse_hpf(const MultiBandImage& ms, const Raster& pan, const FusionParams& params);

/// Wavelet fusion, à trous or Mallat/Haar. Additive: out_i = M_i plus the
/// detail planes of PAN matched to M_i. Substitutive: M_i's detail planes are
/// replaced by PAN's before reconstruction.
FusionResult fuse_dwt(const MultiBandImage& ms, const Raster& pan, const FusionParams& params,
                      multires::WaveletScheme scheme);

FusionResult fuse_identity(const MultiBandImage& ms, const Raster& pan,
                           const FusionParams& params);

/// Non-negative weights minimising ||sum alpha_i M_i - pan||^2 over the
/// upsampled MS bands. Throws DegenerateInput for collinear bands.
std::vector<double> solve_adaptive_alpha(const MultiBandImage& ms_upsampled, const Raster& pan);

/// sum alpha_i * band_i.
Raster intensity(const MultiBandImage& img, std::span<const double> alpha);

}  // namespace pansharp::fusion
