#include <doctest.h>

#include "oracles/random_images.hpp"
#include "pansharp/error.hpp"
#include "pansharp/nnls.hpp"

using namespace pansharp;
using namespace pansharp::fusion;

namespace {

double objective(const std::vector<std::vector<double>>& cols, const std::vector<double>& b,
                 const std::vector<double>& x) {
  double s = 0;
  for (std::size_t k = 0; k < b.size(); ++k) {
    double v = -b[k];
    for (std::size_t j = 0; j < cols.size(); ++j) v += cols[j][k] * x[j];
    s += v * v;
  }
  return s;
}

}  // namespace

TEST_CASE("unconstrained optimum inside the orthant") {
  const std::vector<std::vector<double>> cols = {{1, 0, 1}, {0, 1, 1}};
  const std::vector<double> b = {2, 3, 5};
  const NnlsSolution s = nnls(cols, b);
  CHECK(s.x[0] == doctest::Approx(2.0));
  CHECK(s.x[1] == doctest::Approx(3.0));
  CHECK(s.residual_norm_sq == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("negative least-squares weight is clamped") {
  // b depends negatively on the second column.
  const std::vector<std::vector<double>> cols = {{1, 2, 3, 4}, {1, 0, 1, 0}};
  const std::vector<double> b = {0, 2, 2, 4};
  const NnlsSolution s = nnls(cols, b);
  CHECK(s.x[1] == 0.0);
  CHECK(s.x[0] == doctest::Approx(26.0 / 30.0));
}

TEST_CASE("agrees with a grid search on small problems") {
  testing::Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    std::vector<std::vector<double>> cols(2, std::vector<double>(6));
    std::vector<double> b(6);
    for (auto& c : cols)
      for (double& v : c) v = rng.uniform(-1, 1);
    for (double& v : b) v = rng.uniform(-1, 1);
    const NnlsSolution s = nnls(cols, b);
    CHECK(s.x[0] >= 0.0);
    CHECK(s.x[1] >= 0.0);
    CHECK(objective(cols, b, s.x) == doctest::Approx(s.residual_norm_sq).epsilon(1e-9).scale(1.0));
    double best = objective(cols, b, {0, 0});
    for (int i = 0; i <= 400; ++i)
      for (int j = 0; j <= 400; ++j) best = std::min(best, objective(cols, b, {i * 0.01, j * 0.01}));
    CHECK(s.residual_norm_sq <= best + 1e-12);
  }
}

TEST_CASE("KKT conditions hold") {
  testing::Rng rng(12);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + rng.next() % 4;
    std::vector<std::vector<double>> cols(n, std::vector<double>(20));
    std::vector<double> b(20);
    for (auto& c : cols)
      for (double& v : c) v = rng.uniform(0, 1);
    for (double& v : b) v = rng.uniform(-1, 2);
    const NnlsSolution s = nnls(cols, b);
    for (std::size_t j = 0; j < n; ++j) {
      // gradient of 0.5||Ax - b||^2 along column j
      double g = 0;
      for (std::size_t k = 0; k < b.size(); ++k) {
        double r = -b[k];
        for (std::size_t i = 0; i < n; ++i) r += cols[i][k] * s.x[i];
        g += cols[j][k] * r;
      }
      CHECK(s.x[j] >= 0.0);
      CHECK(g >= -1e-9);
      if (s.x[j] > 1e-12) CHECK(std::abs(g) < 1e-9);
    }
  }
}

TEST_CASE("singular Gram matrix is rejected") {
  const std::vector<std::vector<double>> cols = {{1, 2, 3}, {2, 4, 6}};
  CHECK_THROWS_AS(nnls(cols, {1, 1, 1}), DegenerateInput);
  CHECK_THROWS_AS(nnls_gram({1, 0, 0}, {1, 1}, 1), InvalidArgument);
}
