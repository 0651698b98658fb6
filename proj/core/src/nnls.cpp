#include "pansharp/nnls.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pansharp/error.hpp"

namespace pansharp::fusion {

namespace {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Unconstrained least squares restricted to the passive set.
Vector solve_passive(const Matrix& g, const Vector& h, const std::vector<bool>& passive) {
  const auto n = g.rows();
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (passive[static_cast<std::size_t>(i)]) idx.push_back(i);
  }
  Vector z = Vector::Zero(n);
  if (idx.empty()) return z;
  const auto m = static_cast<Eigen::Index>(idx.size());
  Matrix gs(m, m);
  Vector hs(m);
  for (Eigen::Index a = 0; a < m; ++a) {
    hs(a) = h(idx[static_cast<std::size_t>(a)]);
    for (Eigen::Index b = 0; b < m; ++b) {
      gs(a, b) = g(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
    }
  }
  const Vector zs = gs.ldlt().solve(hs);
  for (Eigen::Index a = 0; a < m; ++a) z(idx[static_cast<std::size_t>(a)]) = zs(a);
  return z;
}

}  // namespace

NnlsSolution nnls_gram(const std::vector<double>& gram, const std::vector<double>& atb,
                       double btb) {
  const std::size_t n = atb.size();
  if (n == 0 || gram.size() != n * n) throw InvalidArgument("NNLS: inconsistent system size");
  const auto ni = static_cast<Eigen::Index>(n);
  Matrix g(ni, ni);
  Vector h(ni);
  for (std::size_t i = 0; i < n; ++i) {
    h(static_cast<Eigen::Index>(i)) = atb[i];
    for (std::size_t j = 0; j < n; ++j) {
      g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = gram[i * n + j];
    }
  }

  const Eigen::SelfAdjointEigenSolver<Matrix> spectrum(g, Eigen::EigenvaluesOnly);
  const double lmax = spectrum.eigenvalues().maxCoeff();
  const double lmin = spectrum.eigenvalues().minCoeff();
  if (!(lmax > 0.0) || lmin <= 1e-12 * lmax) {
    throw DegenerateInput(
        "NNLS: band Gram matrix is rank deficient (collinear bands); the weights are not unique");
  }

  // Dual-feasibility tolerance on the gradient w = h - G x.
  const double tol = 1e-12 * std::max({lmax, h.cwiseAbs().maxCoeff(), 1e-300});
  std::vector<bool> passive(n, false);
  Vector x = Vector::Zero(ni);
  const int max_iter = 30 * static_cast<int>(n) + 30;
  int iter = 0;

  while (iter < max_iter) {
    const Vector w = h - g * x;
    Eigen::Index best = -1;
    double best_w = tol;
    for (Eigen::Index i = 0; i < ni; ++i) {
      if (!passive[static_cast<std::size_t>(i)] && w(i) > best_w) {
        best_w = w(i);
        best = i;
      }
    }
    if (best < 0) break;
    passive[static_cast<std::size_t>(best)] = true;

    // Inner loop: step back towards feasibility until the passive solution is positive.
    while (true) {
      ++iter;
      const Vector z = solve_passive(g, h, passive);
      bool feasible = true;
      for (Eigen::Index i = 0; i < ni; ++i) {
        if (passive[static_cast<std::size_t>(i)] && z(i) <= 0.0) feasible = false;
      }
      if (feasible) {
        x = z;
        break;
      }
      double alpha = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < ni; ++i) {
        if (passive[static_cast<std::size_t>(i)] && z(i) <= 0.0) {
          alpha = std::min(alpha, x(i) / (x(i) - z(i)));
        }
      }
      x += alpha * (z - x);
      for (Eigen::Index i = 0; i < ni; ++i) {
        if (passive[static_cast<std::size_t>(i)] && std::abs(x(i)) <= 1e-15) {
          passive[static_cast<std::size_t>(i)] = false;
          x(i) = 0.0;
        }
      }
      if (iter >= max_iter) break;
    }
  }

  NnlsSolution out;
  out.x.assign(x.data(), x.data() + n);
  // ||Ax - b||^2 = x'Gx - 2x'h + b'b
  out.residual_norm_sq = std::max(0.0, x.dot(g * x) - 2.0 * x.dot(h) + btb);
  out.iterations = iter;
  return out;
}

NnlsSolution nnls(const std::vector<std::vector<double>>& columns, const std::vector<double>& b) {
  const std::size_t n = columns.size();
  if (n == 0) throw InvalidArgument("NNLS: no columns");
  for (const auto& c : columns) {
    if (c.size() != b.size()) throw DimensionMismatch("NNLS: column length differs from b");
  }
  std::vector<double> gram(n * n);
  std::vector<double> atb(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < b.size(); ++k) acc += columns[i][k] * columns[j][k];
      gram[i * n + j] = gram[j * n + i] = acc;
    }
    double acc = 0.0;
    for (std::size_t k = 0; k < b.size(); ++k) acc += columns[i][k] * b[k];
    atb[i] = acc;
  }
  double btb = 0.0;
  for (double v : b) btb += v * v;
  return nnls_gram(gram, atb, btb);
}

}  // namespace pansharp::fusion
