#pragma once

// Independent reference computations for the unit tests. Nothing here calls the
// library routines under test.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using Dense = std::vector<std::vector<Complex>>;

inline Dense zeros(std::size_t n) { return Dense(n, std::vector<Complex>(n, Complex(0.0))); }

inline Dense multiply(const Dense& a, const Dense& b) {
  const std::size_t n = a.size();
  Dense c = zeros(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline Dense adjoint(const Dense& a) {
  Dense c = zeros(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) c[j][i] = std::conj(a[i][j]);
  return c;
}

/// Gauss-Jordan inverse with partial pivoting.
inline Dense inverse(Dense a) {
  const std::size_t n = a.size();
  Dense inv = zeros(n);
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    const Complex d = a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] /= d;
      inv[c][j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const Complex f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

/// Largest singular value by power iteration on A^H A, run to stagnation.
inline double norm2(const Dense& a) {
  const std::size_t n = a.size();
  const Dense g = multiply(adjoint(a), a);
  std::vector<Complex> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = Complex(1.0 + 0.1 * i, 0.05 * i);
  double lambda = 0.0;
  for (int it = 0; it < 20000; ++it) {
    std::vector<Complex> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) y[i] += g[i][j] * x[j];
    double len = 0.0;
    for (const auto& v : y) len += std::norm(v);
    len = std::sqrt(len);
    if (len == 0.0) return 0.0;
    for (auto& v : y) v /= len;
    const double prev = lambda;
    lambda = len;
    x = y;
    if (it > 50 && std::abs(lambda - prev) <= 1e-15 * lambda) break;
  }
  return std::sqrt(lambda);
}

inline double norm1(const Dense& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i][j]);
    best = std::max(best, s);
  }
  return best;
}

inline double norm_inf(const Dense& a) {
  double best = 0.0;
  for (const auto& row : a) {
    double s = 0.0;
    for (const auto& v : row) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

/// Naive O(N^2) DFT of samples at exp(2 pi i k / N): c_m = (1/N) sum_k f_k w^{-mk}.
inline std::vector<Complex> taylor_by_dft(const std::vector<Complex>& samples) {
  const std::size_t n = samples.size();
  std::vector<Complex> c(n, 0.0);
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t k = 0; k < n; ++k) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(m * k % n) / static_cast<double>(n);
      c[m] += samples[k] * std::polar(1.0, angle);
    }
    c[m] /= static_cast<double>(n);
  }
  return c;
}

/// Product N(z) / prod (1 - a_i z) evaluated directly.
inline Complex rational_value(const std::vector<Complex>& inverse_poles, const std::vector<Complex>& numerator,
                              Complex z) {
  Complex num(0.0);
  for (std::size_t k = numerator.size(); k-- > 0;) num = num * z + numerator[k];
  Complex den(1.0);
  for (const auto& a : inverse_poles) den *= 1.0 - a * z;
  return num / den;
}

}  // namespace oracle
