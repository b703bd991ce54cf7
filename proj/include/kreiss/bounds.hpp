#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string_view>
#include <tuple>
#include <vector>

#include "kreiss/bound_record.hpp"
#include "kreiss/hardy.hpp"
#include "kreiss/linalg.hpp"
#include "kreiss/resolvent.hpp"

namespace kreiss {

enum class InequalityId {
  rho_le_P,           // rho(T) <= P(T)
  kreiss_matrix_2en,  // P(T) <= 2 e n rho(T), l2
  spijker_en,         // P(T) <= e n rho(T), l2
  bernstein_thmA,     // ||f'||_{H^1} <= (1+r)^{1/p} n (1-r)^{-1/p} ||f||_{H^p}
  thm3_upper,         // rho_alpha(T) <= (pi+1)(2(1+r))^{1-alpha} n (1-r)^{-(1-alpha)} P(T)
  thm3_sharpness,     // sharpness probe on the Mobius contraction
  thm3_kmt,           // P(T) <= e n rho_alpha(T), l2
  thm4_probe,         // fitted K = rho_alpha^k / (n^k (1-r)^{-(1-alpha)} P)
  ds_bound,           // ||R(z)|| <= (3n / dist)^{3/2} P(T), l2, |z| >= 1
  z3_bound,           // rho_strong(T) <= (5 pi / 3 + 2 sqrt 2) n^{3/2} P(T)
  thm7_probe,         // fitted K_l = rho_strong_l / (n^{l+1/2} P)
  hardy_w,            // ||f||_W <= pi ||f'||_{H^1} + |f(0)|
};

std::string_view to_string(InequalityId id);
/// Throws std::invalid_argument for unknown names.
InequalityId parse_inequality_id(std::string_view text);
const std::vector<InequalityId>& all_inequality_ids();
/// True for the ids evaluated on a rational function rather than a matrix.
bool is_function_inequality(InequalityId id);

/// (1+r)^{1/p} n / (1-r)^{1/p}; p = inf gives n.
double thmA_constant(int n, double r, double p);
/// (pi+1) (2(1+r))^{1-alpha} n / (1-r)^{1-alpha}.
double thm3_constant(int n, double r, double alpha);
/// e n
double spijker_constant(int n);
/// 2 e n
double leveque_trefethen_constant(int n);
/// (3n / dist)^{3/2}
double ds_constant(int n, double dist);
/// (5 pi / 3 + 2 sqrt 2) n^{3/2}
double z3_constant(int n);
/// n^k (1-r)^{-(1-alpha)}
double thm4_normalizer(int n, int k, double r, double alpha);
/// n^{l+1/2}
double thm7_normalizer(int n, int l);

struct VerifyParams {
  double alpha = 0.5;
  int l = 1;  // resolvent power for thm4_probe / thm7_probe
  double p = std::numeric_limits<double>::infinity();
  SupOptions sup;
};

/// Caches the spectrum, P(T) and every supremum computed for one matrix.
class VerificationContext {
 public:
  VerificationContext(ComplexMatrix t, NormKind norm, std::optional<Spectrum> known_spectrum = std::nullopt);

  const ComplexMatrix& matrix() const noexcept { return t_; }
  NormKind norm() const noexcept { return norm_; }
  int dimension() const noexcept { return static_cast<int>(t_.size()); }
  const Spectrum& spectrum();
  const PowerBound& power_bound();
  const SupResult& sup(const ResolventWeight& weight, const SupOptions& options = {});

 private:
  ComplexMatrix t_;
  NormKind norm_;
  std::optional<Spectrum> spectrum_;
  std::optional<PowerBound> power_;
  std::map<std::tuple<int, int, double>, SupResult> sups_;
};

/// Evaluates both sides of a matrix inequality. Throws HypothesisViolation when
/// P(T) is unbounded, when an l2-only inequality is asked for another norm, or
/// when thm3_upper / thm4_probe meet r(T) >= 1 - 1e-9. tol = 1e-6 max(1, |rhs|).
/// Probes (thm4_probe, thm7_probe) report the fitted constant as params["K_fit"]
/// and pass iff the left side is finite.
BoundRecord verify(InequalityId id, VerificationContext& context, const VerifyParams& params = {});

/// Function-space inequalities: bernstein_thmA (f must lie in R_{n,r}) and hardy_w.
BoundRecord verify(InequalityId id, const RationalFunction& f, double r, const VerifyParams& params = {});

/// (1-r)^{(1-alpha)/2} (lambda(r) - 1)^alpha ||R(lambda(r), A_r)||_2 for A_r = f_r(N_n).
double thm3_probe_value(int n, double alpha, double r);
/// The probe as a record with rhs = cot(pi / 4n).
BoundRecord thm3_sharpness_probe(int n, double alpha, double r);

}  // namespace kreiss
