#pragma once

#include <cstdint>
#include <vector>

#include "pansharp/raster.hpp"

namespace pansharp::bench {

struct SyntheticDataset {
  MultiBandImage truth;  // high-resolution ground truth, truth_size x truth_size
  MultiBandImage ms;     // truth box-averaged by ratio
  Raster pan;            // weighted band mean of truth
  std::vector<double> pan_weights;  // normalised to sum 1
};

/// Seeded synthetic scene: per band a positive base level, a linear gradient
/// and Gaussian blobs of log-uniform size (1 px up to truth_size / 8). Blob
/// amplitudes are shared across bands with per-band gains, so bands are
/// correlated without being collinear. The same seed always yields
/// bit-identical rasters (std::mt19937_64 and a fixed uniform mapping).
SyntheticDataset synth_dataset(std::uint64_t seed, std::size_t truth_size, int ratio,
                               std::size_t band_count = 3);

}  // namespace pansharp::bench
