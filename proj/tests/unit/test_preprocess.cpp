#include <doctest.h>

#include <algorithm>

#include "oracles/naive.hpp"
#include "oracles/random_images.hpp"
#include "pansharp/error.hpp"
#include "pansharp/preprocess.hpp"

using namespace pansharp;
using namespace pansharp::preprocess;
using testing::max_abs_diff;

TEST_CASE("upsample keeps constants and the factor-1 identity") {
  testing::Rng rng(1);
  for (auto m : {Resample::Nearest, Resample::Bilinear, Resample::Bicubic}) {
    const Raster c = upsample(Raster(2, 2, 7.25), 4, m);
    CHECK(c.width() == 8);
    CHECK(c.height() == 8);
    CHECK(max_abs_diff(c, Raster(8, 8, 7.25)) < 1e-12);
    const Raster r = testing::random_raster(rng, 5, 3);
    CHECK(upsample(r, 1, m) == r);
  }
  CHECK_THROWS_AS(upsample(Raster(2, 2), 0, Resample::Bilinear), InvalidArgument);
}

TEST_CASE("bilinear and bicubic reproduce ramps in the interior") {
  // Ramp along x: value = x. Under the centre convention output sample i sits
  // at input coordinate (i + 0.5) / k - 0.5, so the exact line is that value.
  const Raster ramp = Raster::generate(4, 1, [](std::size_t x, std::size_t) { return double(x); });
  const Raster bl = upsample(ramp, 2, Resample::Bilinear);
  for (std::size_t i = 1; i + 1 < bl.width(); ++i) {
    CHECK(std::abs(bl(i, 0) - ((i + 0.5) / 2.0 - 0.5)) < 1e-12);
  }
  const Raster ramp2 =
      Raster::generate(12, 12, [](std::size_t x, std::size_t y) { return 3.0 * x - 2.0 * y + 1; });
  for (int k : {2, 3, 4}) {
    const Raster bc = upsample(ramp2, k, Resample::Bicubic);
    // Bicubic taps reach two samples out, so stay 2 input pixels from the border.
    for (std::size_t y = 2 * k + k; y + 3 * k < bc.height(); ++y) {
      for (std::size_t x = 2 * k + k; x + 3 * k < bc.width(); ++x) {
        const double u = (x + 0.5) / k - 0.5;
        const double v = (y + 0.5) / k - 0.5;
        CHECK(std::abs(bc(x, y) - (3.0 * u - 2.0 * v + 1)) < 1e-10);
      }
    }
  }
}

TEST_CASE("downsample box mean and decimate") {
  const Raster blocks(4, 4, std::vector<double>{1, 1, 2, 2,  //
                                                1, 1, 2, 2,  //
                                                3, 3, 4, 4,  //
                                                3, 3, 4, 4});
  CHECK(downsample(blocks, 2, Downsample::BoxMean) == Raster(2, 2, std::vector<double>{1, 2, 3, 4}));
  CHECK_THROWS_AS(downsample(Raster(5, 4), 2, Downsample::BoxMean), DimensionMismatch);

  testing::Rng rng(2);
  for (int t = 0; t < 10; ++t) {
    const Raster r = testing::random_raster(rng, 6, 4);
    CHECK(downsample(upsample(r, 3, Resample::Nearest), 3, Downsample::Decimate) == r);
    CHECK(downsample(upsample(r, 3, Resample::Nearest), 3, Downsample::BoxMean) == r);
  }
}

TEST_CASE("box mean matches a brute-force block average") {
  testing::Rng rng(4);
  const Raster r = testing::random_raster(rng, 8, 8);
  const Raster d = downsample(r, 2, Downsample::BoxMean);
  for (std::size_t y = 0; y < 4; ++y) {
    for (std::size_t x = 0; x < 4; ++x) {
      double s = 0;
      for (std::size_t dy = 0; dy < 2; ++dy)
        for (std::size_t dx = 0; dx < 2; ++dx) s += r(2 * x + dx, 2 * y + dy);
      CHECK(std::abs(d(x, y) - s / 4) < 1e-15);
    }
  }
}

TEST_CASE("bilinear upsampling then box mean preserves the global mean") {
  testing::Rng rng(8);
  for (int k : {2, 3, 4}) {
    const Raster r = testing::random_raster(rng, 9, 7, 0, 100);
    const Raster back = downsample(upsample(r, k, Resample::Bilinear), k, Downsample::BoxMean);
    CHECK(std::abs(oracle::mean(back) - oracle::mean(r)) < 1e-9);
  }
}

TEST_CASE("histogram match, moment mode") {
  testing::Rng rng(6);
  const Raster x = testing::random_raster(rng, 6, 6);
  CHECK(max_abs_diff(histogram_match(x, x, HistogramMode::MeanStd), x) < 1e-12);

  const Raster src(2, 1, std::vector<double>{0, 2});
  const Raster ref(2, 1, std::vector<double>{10, 30});
  CHECK(max_abs_diff(histogram_match(src, ref, HistogramMode::MeanStd), ref) < 1e-12);

  for (int t = 0; t < 10; ++t) {
    const Raster a = testing::random_raster(rng, 7, 5, -3, 9);
    const Raster b = testing::random_raster(rng, 4, 4, 100, 180);
    const BandStats s = band_stats(histogram_match(a, b, HistogramMode::MeanStd));
    const BandStats target = band_stats(b);
    CHECK(std::abs(s.mean - target.mean) < 1e-12);
    CHECK(std::abs(s.std - target.std) < 1e-12);
  }

  CHECK_THROWS_AS(histogram_match(Raster(3, 3, 1.0), x, HistogramMode::MeanStd), DegenerateInput);
}

TEST_CASE("histogram match, constant inputs") {
  for (auto mode : {HistogramMode::MeanStd, HistogramMode::Cdf}) {
    CHECK(histogram_match(Raster(3, 2, 4.0), Raster(5, 5, 9.5), mode) == Raster(3, 2, 9.5));
  }
}

TEST_CASE("histogram match, rank mode") {
  testing::Rng rng(9);
  const Raster src = testing::random_raster(rng, 5, 5);
  const Raster ref = testing::random_raster(rng, 5, 5, 50, 70);
  const Raster out = histogram_match(src, ref, HistogramMode::Cdf);
  std::vector<double> a(out.samples().begin(), out.samples().end());
  std::vector<double> b(ref.samples().begin(), ref.samples().end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  CHECK(a == b);
  // Order preserving.
  for (std::size_t i = 0; i < src.size(); ++i)
    for (std::size_t j = 0; j < src.size(); ++j)
      if (src.samples()[i] < src.samples()[j]) CHECK(out.samples()[i] <= out.samples()[j]);

  // Ties share one value.
  const Raster tied(4, 1, std::vector<double>{1, 1, 2, 3});
  const Raster r4(4, 1, std::vector<double>{10, 20, 30, 40});
  const Raster m = histogram_match(tied, r4, HistogramMode::Cdf);
  CHECK(m(0, 0) == m(1, 0));
  CHECK(m(0, 0) == doctest::Approx(15.0));
  CHECK(m(2, 0) == 30.0);
  CHECK(m(3, 0) == 40.0);
}

TEST_CASE("operations are per-band independent") {
  testing::Rng rng(10);
  const MultiBandImage img = testing::random_image(rng, 4, 4, 3);
  const MultiBandImage permuted({img[2], img[0], img[1]});
  const MultiBandImage up = upsample(img, 2, Resample::Bicubic);
  const MultiBandImage upp = upsample(permuted, 2, Resample::Bicubic);
  CHECK(upp[0] == up[2]);
  CHECK(upp[1] == up[0]);
  CHECK(upp[2] == up[1]);
}
