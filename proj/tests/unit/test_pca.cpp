#include <doctest.h>

#include "oracles/random_images.hpp"
#include "pansharp/error.hpp"
#include "pansharp/pca.hpp"

using namespace pansharp;
using namespace pansharp::multires;
using testing::max_abs_diff;

TEST_CASE("two perfectly correlated bands") {
  const Raster a(2, 2, std::vector<double>{0, 1, 2, 3});
  const Raster b = a * 2.0;
  const PcaResult r = pca_forward(MultiBandImage({a, b}));
  const double s5 = std::sqrt(5.0);
  CHECK(r.model.at(0, 0) == doctest::Approx(1 / s5));
  CHECK(r.model.at(0, 1) == doctest::Approx(2 / s5));
  CHECK(r.model.eigenvalues[0] == doctest::Approx(5 * 1.25));
  CHECK(r.model.eigenvalues[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(max_abs_diff(r.components[1], Raster(2, 2, 0.0)) < 1e-12);
}

TEST_CASE("basis is orthonormal, sorted and sign normalised") {
  testing::Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + rng.next() % 4;
    const MultiBandImage img = testing::random_image(rng, 6, 5, n, 0, 100);
    const PcaModel m = pca_forward(img).model;
    for (std::size_t i = 0; i < n; ++i) {
      double row_sum = 0;
      for (std::size_t j = 0; j < n; ++j) {
        double dot = 0;
        for (std::size_t k = 0; k < n; ++k) dot += m.at(i, k) * m.at(j, k);
        CHECK(dot == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-10));
        row_sum += m.at(i, j);
      }
      CHECK(row_sum >= 0.0);
      if (i > 0) CHECK(m.eigenvalues[i] <= m.eigenvalues[i - 1]);
    }
  }
}

TEST_CASE("components are decorrelated with eigenvalue variance") {
  testing::Rng rng(2);
  const Raster base = testing::random_raster(rng, 8, 8);
  const MultiBandImage img({base * 3.0 + testing::random_raster(rng, 8, 8),
                            base + testing::random_raster(rng, 8, 8) * 0.5,
                            testing::random_raster(rng, 8, 8)});
  const PcaResult r = pca_forward(img);
  const std::vector<double> cov = band_covariance(r.components);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(cov[i * 3 + j] ==
            doctest::Approx(i == j ? r.model.eigenvalues[i] : 0.0).epsilon(1e-9).scale(1.0));
}

TEST_CASE("forward then inverse is the identity") {
  testing::Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    const MultiBandImage img = testing::random_image(rng, 5, 7, 4, -20, 300);
    const PcaResult r = pca_forward(img);
    CHECK(max_abs_diff(pca_inverse(r.components, r.model), img) < 1e-9);
  }
}

TEST_CASE("covariance oracle and degenerate inputs") {
  const MultiBandImage img({Raster(2, 1, std::vector<double>{1, 3}),
                            Raster(2, 1, std::vector<double>{4, 0})});
  const std::vector<double> c = band_covariance(img);
  CHECK(c[0] == doctest::Approx(1.0));
  CHECK(c[1] == doctest::Approx(-2.0));
  CHECK(c[3] == doctest::Approx(4.0));
  CHECK_THROWS_AS(pca_forward(MultiBandImage({Raster(3, 3, 1.0)})), InvalidArgument);
  CHECK_THROWS_AS(pca_forward(MultiBandImage({Raster(3, 3, 1.0), Raster(3, 3, 2.0)})),
                  DegenerateInput);
}
