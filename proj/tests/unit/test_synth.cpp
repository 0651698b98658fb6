#include <doctest.h>

#include "pansharp/error.hpp"
#include "pansharp/preprocess.hpp"
#include "pansharp/synth.hpp"

using namespace pansharp;
using namespace pansharp::bench;

TEST_CASE("same seed, same bits") {
  const SyntheticDataset a = synth_dataset(7, 64, 4, 3);
  const SyntheticDataset b = synth_dataset(7, 64, 4, 3);
  CHECK(a.truth == b.truth);
  CHECK(a.ms == b.ms);
  CHECK(a.pan == b.pan);
  CHECK(a.pan_weights == b.pan_weights);
  CHECK_FALSE(synth_dataset(8, 64, 4, 3).truth == a.truth);
}

TEST_CASE("shapes and construction") {
  const SyntheticDataset d = synth_dataset(3, 64, 4, 4);
  CHECK(d.truth.band_count() == 4);
  CHECK(d.truth.width() == 64);
  CHECK(d.ms.width() == 16);
  CHECK(d.pan.width() == 64);
  CHECK(d.ms == preprocess::downsample(d.truth, 4, preprocess::Downsample::BoxMean));
  double wsum = 0;
  for (double w : d.pan_weights) wsum += w;
  CHECK(wsum == doctest::Approx(1.0));
  for (std::size_t k = 0; k < d.pan.size(); ++k) {
    double p = 0;
    for (std::size_t b = 0; b < 4; ++b) p += d.pan_weights[b] * d.truth[b].samples()[k];
    CHECK(d.pan.samples()[k] == doctest::Approx(p).epsilon(1e-12));
  }
  for (const auto& band : d.truth.bands()) {
    const BandStats s = band_stats(band);
    CHECK(s.min >= 10.0);
    CHECK(s.std > 0.0);
  }
}

TEST_CASE("invalid arguments") {
  CHECK_THROWS_AS(synth_dataset(1, 30, 4), DimensionMismatch);
  CHECK_THROWS_AS(synth_dataset(1, 32, 0), InvalidArgument);
  CHECK_THROWS_AS(synth_dataset(1, 32, 4, 0), InvalidArgument);
}
