#pragma once

// Reference implementations used only by tests. They follow the textbook
// formulas with explicit loops and share no code with the library routines
// they check.

#include <algorithm>
#include <cmath>
#include <vector>

#include "pansharp/raster.hpp"

namespace pansharp::oracle {

inline double mean(const Raster& r) {
  double s = 0.0;
  for (std::size_t y = 0; y < r.height(); ++y)
    for (std::size_t x = 0; x < r.width(); ++x) s += r(x, y);
  return s / static_cast<double>(r.width() * r.height());
}

inline double cc(const Raster& a, const Raster& b) {
  const double ma = mean(a), mb = mean(b);
  double num = 0.0, da = 0.0, db = 0.0;
  for (std::size_t y = 0; y < a.height(); ++y) {
    for (std::size_t x = 0; x < a.width(); ++x) {
      num += (a(x, y) - ma) * (b(x, y) - mb);
      da += (a(x, y) - ma) * (a(x, y) - ma);
      db += (b(x, y) - mb) * (b(x, y) - mb);
    }
  }
  return num / std::sqrt(da * db);
}

inline double rmse(const Raster& a, const Raster& b) {
  double s = 0.0;
  for (std::size_t y = 0; y < a.height(); ++y)
    for (std::size_t x = 0; x < a.width(); ++x) s += std::pow(std::abs(a(x, y) - b(x, y)), 2);
  return std::sqrt(s / static_cast<double>(a.width() * a.height()));
}

inline double rase(const MultiBandImage& r, const MultiBandImage& f) {
  double mu = 0.0, s = 0.0;
  const std::size_t n = r.band_count();
  for (std::size_t i = 0; i < n; ++i) {
    mu += mean(r[i]);
    s += std::pow(rmse(r[i], f[i]), 2);
  }
  mu /= static_cast<double>(n);
  return 100.0 / mu * std::sqrt(s / static_cast<double>(n));
}

inline double ergas(const MultiBandImage& r, const MultiBandImage& f, double ratio) {
  double s = 0.0;
  const std::size_t n = r.band_count();
  for (std::size_t i = 0; i < n; ++i) s += std::pow(rmse(r[i], f[i]) / mean(r[i]), 2);
  return 100.0 * ratio * std::sqrt(s / static_cast<double>(n));
}

/// UQI, first (single-fraction) form with population moments.
inline double uqi(const Raster& a, const Raster& b) {
  const double ma = mean(a), mb = mean(b);
  const double n = static_cast<double>(a.width() * a.height());
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t y = 0; y < a.height(); ++y) {
    for (std::size_t x = 0; x < a.width(); ++x) {
      cov += (a(x, y) - ma) * (b(x, y) - mb);
      va += (a(x, y) - ma) * (a(x, y) - ma);
      vb += (b(x, y) - mb) * (b(x, y) - mb);
    }
  }
  cov /= n;
  va /= n;
  vb /= n;
  return 4.0 * cov * ma * mb / ((va + vb) * (ma * ma + mb * mb));
}

/// 8-neighbour Laplacian with clamped (replicated) borders.
inline Raster laplacian(const Raster& r) {
  const auto w = static_cast<long>(r.width());
  const auto h = static_cast<long>(r.height());
  std::vector<double> out(r.size());
  for (long y = 0; y < h; ++y) {
    for (long x = 0; x < w; ++x) {
      double acc = 8.0 * r(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
      for (long dy = -1; dy <= 1; ++dy) {
        for (long dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const long sx = std::clamp(x + dx, 0L, w - 1);
          const long sy = std::clamp(y + dy, 0L, h - 1);
          acc -= r(static_cast<std::size_t>(sx), static_cast<std::size_t>(sy));
        }
      }
      out[static_cast<std::size_t>(y * w + x)] = acc;
    }
  }
  return Raster(r.width(), r.height(), std::move(out));
}

inline double scc(const MultiBandImage& f, const Raster& p) {
  const Raster lp = laplacian(p);
  double s = 0.0;
  for (std::size_t i = 0; i < f.band_count(); ++i) s += cc(laplacian(f[i]), lp);
  return s / static_cast<double>(f.band_count());
}

/// Quadruple-loop 2-D convolution (kernel flipped), replicated borders.
inline Raster convolve_replicate(const Raster& r, const std::vector<std::vector<double>>& k) {
  const long kh = static_cast<long>(k.size());
  const long kw = static_cast<long>(k[0].size());
  const long w = static_cast<long>(r.width());
  const long h = static_cast<long>(r.height());
  std::vector<double> out(r.size(), 0.0);
  for (long y = 0; y < h; ++y)
    for (long x = 0; x < w; ++x)
      for (long j = 0; j < kh; ++j)
        for (long i = 0; i < kw; ++i) {
          const long sx = std::clamp(x - (i - kw / 2), 0L, w - 1);
          const long sy = std::clamp(y - (j - kh / 2), 0L, h - 1);
          out[static_cast<std::size_t>(y * w + x)] +=
              k[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] *
              r(static_cast<std::size_t>(sx), static_cast<std::size_t>(sy));
        }
  return Raster(r.width(), r.height(), std::move(out));
}

/// Half-sample symmetric index, brute force by repeated reflection.
inline long reflect(long i, long n) {
  while (i < 0 || i >= n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - i - 1;
  }
  return i;
}

/// Dense 2-D convolution with the outer-product B3 kernel dilated by `step`,
/// symmetric borders.
inline Raster b3_smooth_2d(const Raster& r, long step) {
  const double t[5] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
  const long w = static_cast<long>(r.width());
  const long h = static_cast<long>(r.height());
  std::vector<double> out(r.size(), 0.0);
  for (long y = 0; y < h; ++y)
    for (long x = 0; x < w; ++x) {
      double acc = 0.0;
      for (long j = -2; j <= 2; ++j)
        for (long i = -2; i <= 2; ++i)
          acc += t[i + 2] * t[j + 2] *
                 r(static_cast<std::size_t>(reflect(x - i * step, w)),
                   static_cast<std::size_t>(reflect(y - j * step, h)));
      out[static_cast<std::size_t>(y * w + x)] = acc;
    }
  return Raster(r.width(), r.height(), std::move(out));
}

/// One-level orthonormal Haar analysis matrix of size n (n even): first
/// half of rows are pair sums, second half pair differences, both / sqrt 2.
inline std::vector<std::vector<double>> haar_matrix(std::size_t n) {
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  const double s = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < n / 2; ++i) {
    m[i][2 * i] = s;
    m[i][2 * i + 1] = s;
    m[n / 2 + i][2 * i] = s;
    m[n / 2 + i][2 * i + 1] = -s;
  }
  return m;
}

using Dense = std::vector<std::vector<double>>;

inline Dense to_dense(const Raster& r) {
  Dense d(r.height(), std::vector<double>(r.width()));
  for (std::size_t y = 0; y < r.height(); ++y)
    for (std::size_t x = 0; x < r.width(); ++x) d[y][x] = r(x, y);
  return d;
}

inline Dense matmul(const Dense& a, const Dense& b) {
  Dense c(a.size(), std::vector<double>(b[0].size(), 0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline Dense transpose(const Dense& a) {
  Dense t(a[0].size(), std::vector<double>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

/// Single-level 2-D Haar coefficients H_y X H_x^T laid out in quadrants:
/// [LL | HL ; LH | HH] (x-filter letter first).
inline Dense haar_level(const Dense& x) {
  return matmul(matmul(haar_matrix(x.size()), x), transpose(haar_matrix(x[0].size())));
}

/// Extracts the h x w block at (row0, col0).
inline Raster block(const Dense& d, std::size_t row0, std::size_t col0, std::size_t h, std::size_t w) {
  return Raster::generate(w, h, [&](std::size_t x, std::size_t y) { return d[row0 + y][col0 + x]; });
}

}  // namespace pansharp::oracle
