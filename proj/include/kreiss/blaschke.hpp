#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "kreiss/hardy.hpp"
#include "kreiss/linalg.hpp"

namespace kreiss {

/// Ordered points of the open unit disk, repeated according to multiplicity.
class SpectrumInDisk {
 public:
  /// Throws std::invalid_argument unless every |lambda| < 1 and the list is non-empty.
  explicit SpectrumInDisk(std::vector<Complex> points);

  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<Complex>& points() const noexcept { return points_; }
  Complex operator[](std::size_t i) const { return points_[i]; }
  double distance(Complex z) const;

 private:
  std::vector<Complex> points_;
};

/// b_lambda(z) = (lambda - z) / (1 - conj(lambda) z). Throws PoleHit near z = 1/conj(lambda).
Complex blaschke_factor(Complex lambda, Complex z);
/// B_sigma(z) = prod b_{lambda_i}(z).
Complex blaschke_product(const SpectrumInDisk& sigma, Complex z);

/// Orthonormal basis e_1..e_n of the model space K_B built from the ordered zeros:
///
///   e_k(z) = prod_{j<k} b_{lambda_j}(z) * (1 - |lambda_k|^2)^{1/2} / (1 - conj(lambda_k) z).
class MalmquistBasis {
 public:
  explicit MalmquistBasis(SpectrumInDisk sigma);

  std::size_t size() const noexcept { return sigma_.size(); }
  const SpectrumInDisk& sigma() const noexcept { return sigma_; }
  /// (1 - |lambda_k|^2)^{1/2}, k = 1..n stored at index k-1.
  const std::vector<double>& norm_factors() const noexcept { return norm_factors_; }

  /// e_k as an explicit rational function (k is 1-based).
  RationalFunction function(std::size_t k) const;

 private:
  SpectrumInDisk sigma_;
  std::vector<double> norm_factors_;
};

/// e_k(z), k in 1..n. Throws PoleHit if |1 - conj(lambda_j) z| < 1e-15 for some j <= k.
Complex malmquist_eval(const MalmquistBasis& basis, std::size_t k, Complex z);

/// e_k^{(j)}(z) for 0 <= j <= 8 via the logarithmic-derivative recursion
///   e_k^{(t+1)} = sum_s binom(t, s) L^{(s)} e_k^{(t-s)},
///   L^{(s)} = s! [ sum_{i<=k} conj(l_i)^{s+1} / (1 - conj(l_i) z)^{s+1} - sum_{i<k} 1 / (l_i - z)^{s+1} ].
/// Near a zero of the leading Blaschke product the Taylor-product route is used instead.
Complex malmquist_derivative(const MalmquistBasis& basis, std::size_t k, int j, Complex z);

/// Taylor coefficients of e_k around z up to `order`, from products of factor expansions.
std::vector<Complex> malmquist_taylor(const MalmquistBasis& basis, std::size_t k, int order, Complex z);

/// |e_k^{(j)}(l*)| dist(l*, sigma)^{j+1} / ((1 - |lambda_k|^2)^{1/2} k^j) for |l*| = 1.
double lemma9_ratio(const MalmquistBasis& basis, std::size_t k, int j, Complex lambda_star);

/// C_0..C_{j_max} from C_{j+1} = 2 (j+1) max_{0<=s<=j} binom(j, s) s! C_{j-s}.
std::vector<double> lemma9_constants(double c0, int j_max);

/// Coefficients (k_zeta^l, e_k)_{H^2}, zeta = 1/conj(lambda), in closed form:
///   conj( (z^{l-1} e_k)^{(l-1)}(zeta) ) / (l-1)!  with the Leibniz expansion
///   (z^t e_k)^{(t)} = sum_j binom(t, j) (t!/j!) z^j e_k^{(j)}.
std::vector<Complex> projection_coefficients(const MalmquistBasis& basis, Complex lambda, int l);

/// P_B((k_{1/conj(lambda)})^l) as a rational function with poles at 1/conj(lambda_j).
RationalFunction project_kernel_power(const SpectrumInDisk& sigma, Complex lambda, int l);

/// Expands sum_k coeffs[k] e_{k+1} into a single rational function.
RationalFunction combine_basis(const MalmquistBasis& basis, const std::vector<Complex>& coeffs);

/// (h, e_k)_{H^2} for k = 1..n by `nodes`-point trapezoidal quadrature on the circle.
std::vector<Complex> model_space_coefficients(const MalmquistBasis& basis,
                                              const std::function<Complex(Complex)>& h,
                                              std::size_t nodes);

}  // namespace kreiss
