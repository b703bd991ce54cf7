#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kreiss/bound_record.hpp"
#include "kreiss/linalg.hpp"

namespace kreiss {

/// Running maximum of ||T^k|| with its stopping diagnostics.
struct PowerBound {
  double value = 1.0;          // +inf when unbounded
  std::size_t k_attained = 0;  // exponent of the largest norm seen
  std::size_t k_last = 0;      // last exponent computed
  bool certified = false;      // r(T) < 1 - 1e-6 and the decay rule fired
  bool unbounded = false;      // some ||T^k|| exceeded 1e12
};

/// P(T) = sup_k ||T^k||. Stops on geometric decay (10 consecutive norms below
/// 1e-10 * max, only when r < 1 - 1e-6), at k = min(20 n ceil(1/(1-r)), 1e6),
/// or when a norm exceeds 1e12.
PowerBound power_bound(const ComplexMatrix& t, NormKind norm, double spectral_radius);
PowerBound power_bound(const ComplexMatrix& t, NormKind norm);

/// Weight applied to ||R^l(lambda, T)||.
struct ResolventWeight {
  enum class Kind { kreiss, iterated, strong };

  Kind kind = Kind::kreiss;
  int power = 1;       // l: the resolvent power
  double alpha = 1.0;  // fractional exponent (kreiss, iterated)

  /// (|z| - 1)^alpha ||R||
  static ResolventWeight kreiss(double alpha = 1.0);
  /// (|z| - 1)^{alpha + k - 1} ||R^k||
  static ResolventWeight iterated(int k, double alpha = 1.0);
  /// dist(z, sigma)^l ||R^l||, over |z| >= 1
  static ResolventWeight strong(int l = 1);

  /// Value of the weighted norm as |z| -> infinity: 1 or 0.
  double limit_at_infinity() const;
  /// Short label such as "kreiss(alpha=0.5)".
  std::string label() const;
};

struct SupOptions {
  std::size_t angles = 512;
  std::size_t radii = 200;
  double s_min = 1e-8;  // |z| = 1 + s
  double s_max = 1e2;
  std::size_t refine_cells = 5;
  double relative_step = 1e-8;
  std::size_t max_refinement_iterations = 400;  // per cell
};

struct SupResult {
  double value = 0.0;
  bool infinite = false;
  Complex argmax{0.0};
  bool at_infinity = false;  // the limit at |z| -> infinity exceeded every evaluated point
  std::size_t nodes = 0;
  std::size_t refinement_iterations = 0;
  bool converged = false;
};

/// weight(lambda) * ||R^l(lambda, T)|| evaluated exactly. Throws SingularResolvent.
double weighted_resolvent_norm(const ComplexMatrix& t, NormKind norm, const ResolventWeight& weight,
                               const Spectrum& sigma, Complex lambda);

/// Global maximum of the weighted resolvent norm over |z| > 1 (|z| >= 1 for strong weights):
/// grid over (s, theta) with z = (1 + s) e^{i theta}, then compass refinement of the best cells.
/// Kreiss and iterated weights with alpha < 1 report +inf when r(T) >= 1 - 1e-9.
SupResult sup_weighted_resolvent(const ComplexMatrix& t, NormKind norm, const ResolventWeight& weight,
                                 const Spectrum& sigma, const SupOptions& options = {});
SupResult sup_weighted_resolvent(const ComplexMatrix& t, NormKind norm, const ResolventWeight& weight,
                                 const SupOptions& options = {});

/// Weighted resolvent norm on a (theta, log s) grid; values are row-major with s as the row index.
/// Points where the resolvent is singular hold NaN.
struct ResolventHeatmap {
  std::vector<double> thetas;
  std::vector<double> radii_offsets;  // s values
  std::vector<double> values;
};
ResolventHeatmap resolvent_heatmap(const ComplexMatrix& t, NormKind norm, const ResolventWeight& weight,
                                   const Spectrum& sigma, std::size_t angles, std::size_t radii,
                                   double s_min = 1e-4, double s_max = 1e1);

/// P * |lambda|^{-l} * ||P_B((k_{1/conj(lambda)})^l)||_W, a bound on ||R^l(lambda, T)||
/// for any norm whose power bound is `power_bound_value`.
/// Throws SpectrumOnCircle if some |lambda_i| >= 1 - 1e-10.
double lemma2_bound(const Spectrum& sigma, double power_bound_value, Complex lambda, int l);

/// With lambda = rho * lambda_star, T_star = T / rho, checks
///   rho^l dist(lambda_star, sigma(T_star))^l = dist(lambda, sigma(T))^l and
///   rho^{-l} R^l(lambda_star, T_star) = R^l(lambda, T).
/// The record has lhs = max relative discrepancy, rhs = 0 and tol = 1e-8.
BoundRecord scaling_reduction_check(const ComplexMatrix& t, const Spectrum& sigma, Complex lambda, int l,
                                    NormKind norm = NormKind::l2);

}  // namespace kreiss
