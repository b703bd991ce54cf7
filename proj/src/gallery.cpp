#include "kreiss/gallery.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

#include "kreiss/error.hpp"
#include "kreiss/matrix_io.hpp"

namespace kreiss {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

// Unitary factor of a complex Gaussian matrix by modified Gram-Schmidt on its columns.
ComplexMatrix random_unitary(int n, Rng& rng) {
  const auto size = static_cast<std::size_t>(n);
  std::vector<std::vector<Complex>> cols(size, std::vector<Complex>(size));
  for (auto& c : cols)
    for (auto& z : c) z = rng.complex_gaussian();
  for (std::size_t j = 0; j < size; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      Complex dot(0.0);
      for (std::size_t r = 0; r < size; ++r) dot += std::conj(cols[i][r]) * cols[j][r];
      for (std::size_t r = 0; r < size; ++r) cols[j][r] -= dot * cols[i][r];
    }
    double norm = 0.0;
    for (const auto& z : cols[j]) norm += std::norm(z);
    norm = std::sqrt(norm);
    for (auto& z : cols[j]) z /= norm;
  }
  ComplexMatrix q(size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) q(i, j) = cols[j][i];
  return q;
}

}  // namespace

Rng::Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ULL) {}

std::uint64_t Rng::next() {
  // splitmix64
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::gaussian() {
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

Complex Rng::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return Complex(re, im) * std::numbers::sqrt2 * 0.5;
}

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::jordan_nilpotent:
      return "jordan_nilpotent";
    case FamilyKind::mobius_of_nilpotent:
      return "mobius_of_nilpotent";
    case FamilyKind::cot_matrix:
      return "cot_matrix";
    case FamilyKind::bidiagonal:
      return "bidiagonal";
    case FamilyKind::random_contraction:
      return "random_contraction";
    case FamilyKind::random_spectrum:
      return "random_spectrum";
    case FamilyKind::random_rational:
      return "random_rational";
  }
  return "jordan_nilpotent";
}

FamilyKind parse_family_kind(std::string_view text) {
  for (FamilyKind k : {FamilyKind::jordan_nilpotent, FamilyKind::mobius_of_nilpotent, FamilyKind::cot_matrix,
                       FamilyKind::bidiagonal, FamilyKind::random_contraction, FamilyKind::random_spectrum,
                       FamilyKind::random_rational}) {
    if (to_string(k) == text) return k;
  }
  throw std::invalid_argument("unknown family '" + std::string(text) + "'");
}

nlohmann::json spec_to_json(const InstanceSpec& spec) {
  nlohmann::json spectrum = nlohmann::json::array();
  for (const Complex& z : spec.spectrum) spectrum.push_back(complex_to_json(z));
  return {{"kind", std::string(to_string(spec.kind))},
          {"n", spec.n},
          {"r", spec.r},
          {"alpha", spec.alpha},
          {"seed", spec.seed},
          {"spectrum", std::move(spectrum)},
          {"norm", std::string(to_string(spec.norm))},
          {"allow_unit_radius", spec.allow_unit_radius}};
}

InstanceSpec spec_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("<root>", "expected an object");
  InstanceSpec spec;
  try {
    if (!doc.contains("kind")) throw ParseError("kind", "missing");
    spec.kind = parse_family_kind(doc["kind"].get<std::string>());
    if (doc.contains("n")) spec.n = doc["n"].get<int>();
    if (doc.contains("r")) spec.r = doc["r"].get<double>();
    if (doc.contains("alpha")) spec.alpha = doc["alpha"].get<double>();
    if (doc.contains("seed")) spec.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("norm")) spec.norm = parse_norm_kind(doc["norm"].get<std::string>());
    if (doc.contains("allow_unit_radius")) spec.allow_unit_radius = doc["allow_unit_radius"].get<bool>();
    if (doc.contains("spectrum")) {
      for (std::size_t i = 0; i < doc["spectrum"].size(); ++i) {
        spec.spectrum.push_back(complex_from_json(doc["spectrum"][i], "spectrum[" + std::to_string(i) + "]"));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("<spec>", e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError("<spec>", e.what());
  }
  return spec;
}

std::string Instance::label() const {
  switch (spec.kind) {
    case FamilyKind::mobius_of_nilpotent:
      return fmt::format("mobius_of_nilpotent(n={},r={})", spec.n, spec.r);
    case FamilyKind::random_contraction:
      return fmt::format("random_contraction(n={},seed={},norm={})", spec.n, spec.seed, to_string(spec.norm));
    case FamilyKind::random_spectrum:
      return fmt::format("random_spectrum(n={},r={},seed={})", spec.n, spec.r, spec.seed);
    default:
      return fmt::format("{}(n={})", to_string(spec.kind), spec.n);
  }
}

ComplexMatrix jordan_nilpotent(int n) {
  require(n >= 1, "jordan_nilpotent: n must be positive");
  ComplexMatrix m(static_cast<std::size_t>(n));
  for (int i = 0; i + 1 < n; ++i) m(i, i + 1) = 1.0;
  return m;
}

std::vector<Complex> mobius_taylor(int n, double r) {
  require(n >= 1, "mobius_taylor: n must be positive");
  std::vector<Complex> c(static_cast<std::size_t>(n));
  c[0] = r;
  double power = 1.0;  // (-r)^{k-1}
  for (int k = 1; k < n; ++k) {
    c[k] = (1.0 - r * r) * power;
    power *= -r;
  }
  return c;
}

ComplexMatrix mobius_of_nilpotent(int n, double r) {
  require(r > 0.0 && r < 1.0, "mobius_of_nilpotent: r must lie in (0, 1)");
  return analytic_of_nilpotent(mobius_taylor(n, r));
}

ComplexMatrix cot_matrix(int n) {
  require(n >= 1, "cot_matrix: n must be positive");
  std::vector<Complex> taylor(static_cast<std::size_t>(n), Complex(2.0));
  taylor[0] = 1.0;
  return analytic_of_nilpotent(taylor);
}

ComplexMatrix bidiagonal(std::span<const Complex> spectrum) {
  require(!spectrum.empty(), "bidiagonal: empty spectrum");
  for (const Complex& z : spectrum) require(std::abs(z) < 1.0, "bidiagonal: eigenvalues must lie in the open disk");
  ComplexMatrix m = ComplexMatrix::diagonal(spectrum);
  for (std::size_t i = 1; i < spectrum.size(); ++i) m(i, i - 1) = 2.0;
  return m;
}

LambdaNu lambda_nu_of_r(double r, double alpha) {
  require(r > 0.0 && r < 1.0, "lambda_nu_of_r: r must lie in (0, 1)");
  require(alpha > 0.0 && alpha < 1.0, "lambda_nu_of_r: alpha must lie in (0, 1)");
  const double q = std::pow(1.0 - r, alpha);
  return {(1.0 + r - r * q) / (1.0 + r - q), q - 1.0};
}

ComplexMatrix random_contraction(int n, std::uint64_t seed, NormKind norm, double target) {
  require(n >= 1 && n <= 64, "random_contraction: n must lie in [1, 64]");
  Rng rng(seed);
  const auto size = static_cast<std::size_t>(n);
  ComplexMatrix g(size);
  for (auto& z : g.entries()) z = rng.complex_gaussian();
  return g * Complex(target / operator_norm(g, norm));
}

Instance random_spectrum(int n, double r, std::uint64_t seed) {
  require(n >= 1, "random_spectrum: n must be positive");
  require(r >= 0.0 && r < 1.0, "random_spectrum: r must lie in [0, 1)");
  Rng rng(seed ^ 0x5eed5eed5eedULL);
  const auto size = static_cast<std::size_t>(n);
  std::vector<Complex> eig(size);
  for (std::size_t i = 0; i < size; ++i) {
    const double radius = i == 0 ? r : r * std::sqrt(rng.uniform());
    eig[i] = std::polar(radius, kTwoPi * rng.uniform());
  }
  ComplexMatrix upper = ComplexMatrix::diagonal(eig);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i + 1; j < size; ++j) upper(i, j) = scale * rng.complex_gaussian();
  const ComplexMatrix q = random_unitary(n, rng);
  const InstanceSpec spec{.kind = FamilyKind::random_spectrum, .n = n, .r = r, .seed = seed};
  return {spec, q * upper * q.adjoint(), Spectrum::from_eigenvalues(eig)};
}

RationalFunction random_rational(int n, double r, std::uint64_t seed) {
  require(n >= 1, "random_rational: n must be positive");
  require(r >= 0.0 && r < 1.0, "random_rational: r must lie in [0, 1)");
  Rng rng(seed ^ 0x7a7104a1ULL);
  const auto size = static_cast<std::size_t>(n);
  std::vector<Complex> inv(size);
  for (auto& a : inv) {
    // |pole| uniform in [1/r, 2/r]
    const double modulus = (1.0 + rng.uniform()) / r;
    const double angle = kTwoPi * rng.uniform();
    a = r == 0.0 ? Complex(0.0) : std::polar(1.0 / modulus, -angle);
  }
  std::vector<Complex> num(size);
  for (auto& c : num) c = rng.complex_gaussian();
  return {std::move(inv), std::move(num)};
}

Instance make_instance(const InstanceSpec& spec) {
  const auto n = static_cast<std::size_t>(std::max(spec.n, 1));
  auto repeated = [&](Complex z) { return Spectrum::from_eigenvalues(std::vector<Complex>(n, z)); };
  switch (spec.kind) {
    case FamilyKind::jordan_nilpotent:
      return {spec, jordan_nilpotent(spec.n), repeated(0.0)};
    case FamilyKind::mobius_of_nilpotent:
      return {spec, mobius_of_nilpotent(spec.n, spec.r), repeated(spec.r)};
    case FamilyKind::cot_matrix:
      return {spec, cot_matrix(spec.n), repeated(1.0)};
    case FamilyKind::bidiagonal: {
      InstanceSpec s = spec;
      if (s.spectrum.empty()) s.spectrum.assign(n, Complex(spec.r));
      s.n = static_cast<int>(s.spectrum.size());
      return {s, bidiagonal(s.spectrum), Spectrum::from_eigenvalues(s.spectrum)};
    }
    case FamilyKind::random_contraction:
      return {spec, random_contraction(spec.n, spec.seed, spec.norm, spec.allow_unit_radius ? 1.0 : 0.999),
              std::nullopt};
    case FamilyKind::random_spectrum: {
      Instance inst = random_spectrum(spec.n, spec.r, spec.seed);
      inst.spec = spec;
      return inst;
    }
    case FamilyKind::random_rational:
      break;
  }
  throw std::invalid_argument("make_instance: random_rational is not a matrix family");
}

RationalFunction make_rational(const InstanceSpec& spec) {
  if (spec.kind != FamilyKind::random_rational) {
    throw std::invalid_argument("make_rational: family is not random_rational");
  }
  return random_rational(spec.n, spec.r, spec.seed);
}

std::vector<Instance> standard_gallery() {
  std::vector<Instance> out;
  auto add = [&](const InstanceSpec& spec) { out.push_back(make_instance(spec)); };
  for (int n : {1, 2, 3, 4, 6, 8, 12}) add({.kind = FamilyKind::jordan_nilpotent, .n = n});
  for (int n : {2, 4, 8})
    for (double r : {0.5, 0.9}) add({.kind = FamilyKind::mobius_of_nilpotent, .n = n, .r = r});
  for (int n : {1, 2, 4, 8}) add({.kind = FamilyKind::cot_matrix, .n = n});
  add({.kind = FamilyKind::bidiagonal, .n = 2, .r = 0.0, .spectrum = {0.0, 0.0}});
  add({.kind = FamilyKind::bidiagonal, .n = 4, .spectrum = {0.5, 0.5, 0.5, 0.5}});
  add({.kind = FamilyKind::bidiagonal,
       .n = 5,
       .spectrum = {Complex(0.2), Complex(-0.3), Complex(0.0, 0.4), Complex(0.1, 0.1), Complex(-0.5)}});
  return out;
}

}  // namespace kreiss
