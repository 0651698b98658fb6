#pragma once

#include <string_view>

#include "pansharp/raster.hpp"

namespace pansharp::preprocess {

enum class Resample { Nearest, Bilinear, Bicubic };
enum class Downsample { BoxMean, Decimate };
enum class HistogramMode { MeanStd, Cdf };

Resample parse_resample(std::string_view name);
std::string_view resample_name(Resample method);
HistogramMode parse_histogram_mode(std::string_view name);
std::string_view histogram_mode_name(HistogramMode mode);

/// Enlarges every band by an integer factor.
///
/// Sample centres are aligned: output pixel i maps to input coordinate
/// (i + 0.5) / factor - 0.5. Out-of-range taps replicate the edge sample.
/// Bicubic uses the Catmull-Rom kernel (a = -0.5). Nearest replicates each
/// input sample into a factor x factor block.
Raster upsample(const Raster& r, int factor, Resample method);
MultiBandImage upsample(const MultiBandImage& img, int factor, Resample method);

/// Shrinks by an integer factor; width and height must be divisible by it.
/// BoxMean averages each factor x factor block, Decimate keeps its top-left sample.
Raster downsample(const Raster& r, int factor, Downsample filter);
MultiBandImage downsample(const MultiBandImage& img, int factor, Downsample filter);

/// Maps the distribution of `src` onto that of `reference`.
///
/// MeanStd applies the affine map giving src the reference mean and
/// population std. A constant src matched against a constant reference yields
/// the reference constant; a constant src against a varying reference throws
/// DegenerateInput.
///
/// Cdf is a rank-order mapping: the sample with (mid-)rank r out of n takes
/// the reference quantile at p = (r + 0.5) / n, linearly interpolated between
/// sorted reference samples. Equal src values map to equal outputs. When the
/// rasters have the same size the sorted output equals the sorted reference.
Raster histogram_match(const Raster& src, const Raster& reference, HistogramMode mode);

}  // namespace pansharp::preprocess
