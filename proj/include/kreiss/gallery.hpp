#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kreiss/hardy.hpp"
#include "kreiss/linalg.hpp"

namespace kreiss {

enum class FamilyKind {
  jordan_nilpotent,
  mobius_of_nilpotent,
  cot_matrix,
  bidiagonal,
  random_contraction,
  random_spectrum,
  random_rational,
};

std::string_view to_string(FamilyKind kind);
FamilyKind parse_family_kind(std::string_view text);

/// Everything needed to rebuild an instance deterministically.
struct InstanceSpec {
  FamilyKind kind = FamilyKind::jordan_nilpotent;
  int n = 1;
  double r = 0.5;      // mobius parameter, spectral radius or pole class, depending on kind
  double alpha = 0.5;  // carried for probes that need it
  std::uint64_t seed = 0;
  std::vector<Complex> spectrum;  // bidiagonal diagonal
  NormKind norm = NormKind::l2;   // random_contraction scaling norm
  bool allow_unit_radius = false;  // random_contraction scaled to 1 instead of 0.999
};

nlohmann::json spec_to_json(const InstanceSpec& spec);
InstanceSpec spec_from_json(const nlohmann::json& doc);

/// A matrix instance. Gallery constructors attach their exact spectrum so
/// downstream code does not depend on the QR solver for defective matrices.
struct Instance {
  InstanceSpec spec;
  ComplexMatrix matrix;
  std::optional<Spectrum> known_spectrum;

  std::string label() const;
};

/// Builds the matrix instance for any kind except random_rational.
Instance make_instance(const InstanceSpec& spec);
/// Builds the rational function for kind random_rational.
RationalFunction make_rational(const InstanceSpec& spec);

ComplexMatrix jordan_nilpotent(int n);
/// Taylor coefficients of f_r(z) = (z + r) / (1 + r z) up to order n-1.
std::vector<Complex> mobius_taylor(int n, double r);
/// f_r(N_n); a contraction with spectrum {r}.
ComplexMatrix mobius_of_nilpotent(int n, double r);
/// ((1 + z) / (1 - z))(N_n): ones on the diagonal, twos above it.
ComplexMatrix cot_matrix(int n);
/// Diagonal `spectrum`, twos on the first subdiagonal.
ComplexMatrix bidiagonal(std::span<const Complex> spectrum);

struct LambdaNu {
  double lambda;
  double nu;
};
/// lambda(r) = (1 + r - r(1-r)^a) / (1 + r - (1-r)^a), nu(r) = (1-r)^a - 1.
LambdaNu lambda_nu_of_r(double r, double alpha);

/// Complex Gaussian matrix scaled to operator norm `target` (0.999 by default).
ComplexMatrix random_contraction(int n, std::uint64_t seed, NormKind norm, double target = 0.999);
/// Q (D + U) Q^H with D the sampled spectrum (max modulus exactly r), U strictly upper Gaussian / sqrt(n).
Instance random_spectrum(int n, double r, std::uint64_t seed);
/// n poles with modulus uniform in [1/r, 2/r] (at infinity for r = 0) and a Gaussian numerator of degree < n.
RationalFunction random_rational(int n, double r, std::uint64_t seed);

/// Fixed list of structured instances: Jordan blocks, Mobius contractions, cot matrices, bidiagonals.
std::vector<Instance> standard_gallery();

/// Seeded generator with portable uniform and Gaussian draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  double uniform();
  double gaussian();
  Complex complex_gaussian();

 private:
  std::uint64_t state_;
  std::uint64_t next();
};

}  // namespace kreiss
