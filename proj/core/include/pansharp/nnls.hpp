#pragma once

#include <vector>

namespace pansharp::fusion {

struct NnlsSolution {
  std::vector<double> x;
  double residual_norm_sq;  // ||A x - b||^2
  int iterations;
};

/// Lawson-Hanson active-set NNLS, min ||A x - b||^2 s.t. x >= 0, expressed
/// through the Gram matrix G = A^T A (n x n, row-major), h = A^T b and
/// bb = b^T b. Throws DegenerateInput when G is singular, since the minimiser
/// is then not unique.
NnlsSolution nnls_gram(const std::vector<double>& gram, const std::vector<double>& atb, double btb);

/// Convenience overload taking the columns of A directly.
NnlsSolution nnls(const std::vector<std::vector<double>>& columns, const std::vector<double>& b);

}  // namespace pansharp::fusion
