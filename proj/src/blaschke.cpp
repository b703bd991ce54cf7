#include "kreiss/blaschke.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kreiss/error.hpp"

namespace kreiss {

namespace {

constexpr int kMaxDerivative = 8;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

void check_index(const MalmquistBasis& basis, std::size_t k) {
  if (k < 1 || k > basis.size()) throw std::invalid_argument("Malmquist index out of range");
}

void check_pole(Complex lambda, Complex z) {
  if (std::abs(1.0 - std::conj(lambda) * z) < 1e-15) throw PoleHit("evaluation at a pole 1/conj(lambda)");
}

// Truncated power series product.
std::vector<Complex> series_multiply(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  std::vector<Complex> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

}  // namespace

SpectrumInDisk::SpectrumInDisk(std::vector<Complex> points) : points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("spectrum must be non-empty");
  for (const Complex& p : points_) {
    if (!(std::abs(p) < 1.0)) throw std::invalid_argument("spectrum points must lie in the open unit disk");
  }
}

double SpectrumInDisk::distance(Complex z) const {
  double d = std::numeric_limits<double>::infinity();
  for (const Complex& p : points_) d = std::min(d, std::abs(z - p));
  return d;
}

Complex blaschke_factor(Complex lambda, Complex z) {
  if (!(std::abs(lambda) < 1.0)) throw std::invalid_argument("blaschke_factor: |lambda| must be < 1");
  check_pole(lambda, z);
  return (lambda - z) / (1.0 - std::conj(lambda) * z);
}

Complex blaschke_product(const SpectrumInDisk& sigma, Complex z) {
  Complex p(1.0);
  for (const Complex& l : sigma.points()) p *= blaschke_factor(l, z);
  return p;
}

MalmquistBasis::MalmquistBasis(SpectrumInDisk sigma) : sigma_(std::move(sigma)) {
  norm_factors_.reserve(sigma_.size());
  for (const Complex& l : sigma_.points()) norm_factors_.push_back(std::sqrt(1.0 - std::norm(l)));
}

RationalFunction MalmquistBasis::function(std::size_t k) const {
  check_index(*this, k);
  std::vector<Complex> inv;
  std::vector<Complex> num{Complex(norm_factors_[k - 1])};
  for (std::size_t j = 0; j < k; ++j) inv.push_back(std::conj(sigma_[j]));
  for (std::size_t j = 0; j + 1 < k; ++j) {
    std::vector<Complex> next(num.size() + 1);
    for (std::size_t i = 0; i < num.size(); ++i) {
      next[i] += num[i] * sigma_[j];
      next[i + 1] -= num[i];
    }
    num = std::move(next);
  }
  return {std::move(inv), std::move(num)};
}

Complex malmquist_eval(const MalmquistBasis& basis, std::size_t k, Complex z) {
  check_index(basis, k);
  const auto& s = basis.sigma();
  Complex value(1.0);
  for (std::size_t j = 0; j + 1 < k; ++j) value *= blaschke_factor(s[j], z);
  check_pole(s[k - 1], z);
  return value * basis.norm_factors()[k - 1] / (1.0 - std::conj(s[k - 1]) * z);
}

std::vector<Complex> malmquist_taylor(const MalmquistBasis& basis, std::size_t k, int order, Complex z) {
  check_index(basis, k);
  if (order < 0) throw std::invalid_argument("negative Taylor order");
  const auto& s = basis.sigma();
  const std::size_t len = static_cast<std::size_t>(order) + 1;
  // 1 / (u - conj(l) h) = (1/u) sum (conj(l)/u)^m h^m
  auto geometric = [&](Complex lambda) {
    check_pole(lambda, z);
    const Complex u = 1.0 - std::conj(lambda) * z;
    const Complex w = std::conj(lambda) / u;
    std::vector<Complex> g(len);
    Complex p = 1.0 / u;
    for (std::size_t m = 0; m < len; ++m, p *= w) g[m] = p;
    return g;
  };
  std::vector<Complex> acc(len);
  acc[0] = basis.norm_factors()[k - 1];
  acc = series_multiply(acc, geometric(s[k - 1]));
  for (std::size_t j = 0; j + 1 < k; ++j) {
    const auto g = geometric(s[j]);
    // (l - z - h) * g(h)
    std::vector<Complex> factor(len);
    for (std::size_t m = 0; m < len; ++m) {
      factor[m] = (s[j] - z) * g[m] - (m > 0 ? g[m - 1] : Complex(0.0));
    }
    acc = series_multiply(acc, factor);
  }
  return acc;
}

Complex malmquist_derivative(const MalmquistBasis& basis, std::size_t k, int j, Complex z) {
  check_index(basis, k);
  if (j < 0 || j > kMaxDerivative) throw std::invalid_argument("derivative order must lie in [0, 8]");
  const auto& s = basis.sigma();
  const Complex e0 = malmquist_eval(basis, k, z);
  if (j == 0) return e0;

  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (std::abs(s[i] - z) < 1e-6) return malmquist_taylor(basis, k, j, z)[j] * factorial(j);
  }

  // L^{(t)}(z) for t = 0..j-1
  std::vector<Complex> log_derivs(j);
  for (int t = 0; t < j; ++t) {
    Complex sum(0.0);
    for (std::size_t i = 0; i < k; ++i) {
      const Complex lb = std::conj(s[i]);
      sum += std::pow(lb / (1.0 - lb * z), t + 1);
    }
    for (std::size_t i = 0; i + 1 < k; ++i) sum -= std::pow(1.0 / (s[i] - z), t + 1);
    log_derivs[t] = factorial(t) * sum;
  }
  std::vector<Complex> derivs{e0};
  for (int t = 0; t < j; ++t) {
    Complex next(0.0);
    for (int q = 0; q <= t; ++q) next += binomial(t, q) * log_derivs[q] * derivs[t - q];
    derivs.push_back(next);
  }
  return derivs[j];
}

double lemma9_ratio(const MalmquistBasis& basis, std::size_t k, int j, Complex lambda_star) {
  if (std::abs(std::abs(lambda_star) - 1.0) > 1e-12) {
    throw std::invalid_argument("lemma9_ratio: lambda* must lie on the unit circle");
  }
  const double dist = basis.sigma().distance(lambda_star);
  const Complex d = malmquist_derivative(basis, k, j, lambda_star);
  return std::abs(d) * std::pow(dist, j + 1) /
         (basis.norm_factors()[k - 1] * std::pow(static_cast<double>(k), j));
}

std::vector<double> lemma9_constants(double c0, int j_max) {
  std::vector<double> c{c0};
  for (int j = 0; j < j_max; ++j) {
    double best = 0.0;
    for (int s = 0; s <= j; ++s) best = std::max(best, binomial(j, s) * factorial(s) * c[j - s]);
    c.push_back(2.0 * (j + 1) * best);
  }
  return c;
}

std::vector<Complex> projection_coefficients(const MalmquistBasis& basis, Complex lambda, int l) {
  if (!(std::abs(lambda) > 1.0)) throw std::invalid_argument("projection requires |lambda| > 1");
  if (l < 1 || l - 1 > kMaxDerivative) throw std::invalid_argument("projection power must lie in [1, 9]");
  const Complex zeta = 1.0 / std::conj(lambda);
  const int t = l - 1;
  std::vector<Complex> coeffs(basis.size());
  for (std::size_t k = 1; k <= basis.size(); ++k) {
    // (z^t e_k)^{(t)}(zeta) / t! = sum_j binom(t, j) zeta^j e_k^{(j)}(zeta) / j!
    Complex sum(0.0);
    Complex zeta_pow(1.0);
    for (int j = 0; j <= t; ++j, zeta_pow *= zeta) {
      sum += binomial(t, j) / factorial(j) * zeta_pow * malmquist_derivative(basis, k, j, zeta);
    }
    coeffs[k - 1] = std::conj(sum);
  }
  return coeffs;
}

RationalFunction combine_basis(const MalmquistBasis& basis, const std::vector<Complex>& coeffs) {
  const std::size_t n = basis.size();
  if (coeffs.size() != n) throw std::invalid_argument("coefficient count must match basis size");
  const auto& s = basis.sigma();
  std::vector<Complex> inv(n);
  for (std::size_t j = 0; j < n; ++j) inv[j] = std::conj(s[j]);

  std::vector<Complex> numerator(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (coeffs[k] == Complex(0.0)) continue;
    // c_k * norm_k * prod_{j<k} (l_j - z) * prod_{j>k} (1 - conj(l_j) z)
    std::vector<Complex> term{coeffs[k] * basis.norm_factors()[k]};
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      const Complex c0 = j < k ? s[j] : Complex(1.0);
      const Complex c1 = j < k ? Complex(-1.0) : -std::conj(s[j]);
      std::vector<Complex> next(term.size() + 1);
      for (std::size_t i = 0; i < term.size(); ++i) {
        next[i] += term[i] * c0;
        next[i + 1] += term[i] * c1;
      }
      term = std::move(next);
    }
    for (std::size_t i = 0; i < n; ++i) numerator[i] += term[i];
  }
  return {std::move(inv), std::move(numerator)};
}

RationalFunction project_kernel_power(const SpectrumInDisk& sigma, Complex lambda, int l) {
  const MalmquistBasis basis(sigma);
  return combine_basis(basis, projection_coefficients(basis, lambda, l));
}

std::vector<Complex> model_space_coefficients(const MalmquistBasis& basis,
                                              const std::function<Complex(Complex)>& h,
                                              std::size_t nodes) {
  std::vector<Complex> out(basis.size());
  for (std::size_t m = 0; m < nodes; ++m) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(nodes);
    const Complex z(std::cos(theta), std::sin(theta));
    const Complex hz = h(z);
    for (std::size_t k = 1; k <= basis.size(); ++k) out[k - 1] += hz * std::conj(malmquist_eval(basis, k, z));
  }
  for (auto& c : out) c /= static_cast<double>(nodes);
  return out;
}

}  // namespace kreiss
