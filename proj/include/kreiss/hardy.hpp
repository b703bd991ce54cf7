#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include <json.hpp>

#include "kreiss/bound_record.hpp"
#include "kreiss/linalg.hpp"

namespace kreiss {

/// Rational function analytic on the closed unit disk,
///
///   f(z) = N(z) / prod_i (1 - a_i z),   |a_i| < 1,  deg N < number of factors.
///
/// Each a_i is the reciprocal of a pole (a_i = 0 is a pole at infinity), so
/// constants, polynomials and Blaschke factors fit the same representation.
class RationalFunction {
 public:
  /// `numerator` is in ascending powers and is zero-padded to the factor count.
  RationalFunction(std::vector<Complex> inverse_poles, std::vector<Complex> numerator);

  /// Poles with |p| > 1; an infinite pole is passed as std::numeric_limits<double>::infinity().
  static RationalFunction from_poles(std::span<const Complex> poles, std::vector<Complex> numerator);
  static RationalFunction constant(Complex c);
  /// Reproducing kernel k_zeta(z) = 1 / (1 - conj(zeta) z), |zeta| < 1.
  static RationalFunction kernel(Complex zeta);
  /// b_lambda(z) = (lambda - z) / (1 - conj(lambda) z), |lambda| < 1.
  static RationalFunction blaschke_factor(Complex lambda);

  Complex operator()(Complex z) const;
  RationalFunction derivative() const;
  RationalFunction scaled(Complex s) const;

  /// Number of denominator factors (including poles at infinity).
  std::size_t degree() const noexcept { return inverse_poles_.size(); }
  const std::vector<Complex>& inverse_poles() const noexcept { return inverse_poles_; }
  const std::vector<Complex>& numerator() const noexcept { return numerator_; }
  /// Denominator prod (1 - a_i z) in ascending powers.
  std::vector<Complex> denominator() const;
  /// min |pole|, +inf for a polynomial.
  double pole_margin() const noexcept;
  /// Poles 1/a_i; infinite poles are reported as (inf, 0).
  std::vector<Complex> poles() const;

 private:
  std::vector<Complex> inverse_poles_;
  std::vector<Complex> numerator_;
};

/// Truncated Taylor expansion with a certified bound on the omitted coefficients.
struct TaylorSeries {
  std::vector<Complex> coefficients;
  double tail_bound = 0.0;  // >= sum_{k > K} |c_k|
  bool conditioning_warning = false;  // two distinct poles closer than 1e-8
};

/// f at the N-th roots of unity exp(2 pi i k / N). N must be a power of two >= 4 * degree.
std::vector<Complex> boundary_samples(const RationalFunction& f, std::size_t count);

/// Quadrature node count used by hardy_norm.
std::size_t hardy_node_count(const RationalFunction& f);

/// H^p norm for p in [1, inf]; pass std::numeric_limits<double>::infinity() for H^inf.
double hardy_norm(const RationalFunction& f, double p);

/// Coefficients c_0..c_K with sum_{k>K} |c_k| <= tail_bound <= epsilon.
TaylorSeries taylor_coefficients(const RationalFunction& f, double epsilon);

/// Certified upper bound of sum |c_k| within relative 1e-10.
double wiener_norm(const RationalFunction& f);

/// ||f||_W <= pi ||f'||_{H^1} + |f(0)|.
BoundRecord hardy_inequality_check(const RationalFunction& f);

// {"poles": [[re, im] | null, ...], "numerator": [[re, im], ...]}; null is a pole at infinity.
nlohmann::json rational_to_json(const RationalFunction& f);
RationalFunction rational_from_json(const nlohmann::json& doc);

}  // namespace kreiss
