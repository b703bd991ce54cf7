#include <doctest.h>

#include <cmath>

#include "kreiss/gallery.hpp"
#include "support.hpp"

using namespace kreiss;

TEST_CASE("Jordan block") {
  CHECK(jordan_nilpotent(1) == ComplexMatrix(1));
  CHECK(jordan_nilpotent(2) == from_rows({{0.0, 1.0}, {0.0, 0.0}}));
  for (int n : {2, 5}) {
    const auto norms = matrix_power_norms(jordan_nilpotent(n), NormKind::l2, n);
    CHECK(norms.norms.back() == 0.0);
  }
}

TEST_CASE("Mobius contraction") {
  CHECK(max_abs_difference(mobius_of_nilpotent(4, 1e-12), jordan_nilpotent(4)) < 1e-11);
  for (int n : {2, 4, 8}) {
    for (double r : {0.3, 0.9, 0.999}) {
      const ComplexMatrix a = mobius_of_nilpotent(n, r);
      CHECK(operator_norm(a, NormKind::l2) <= 1.0 + 1e-9);
      for (int i = 0; i < n; ++i) CHECK(a(i, i) == Complex(r));
    }
  }
  CHECK_THROWS_AS(mobius_of_nilpotent(3, 1.0), std::invalid_argument);
}

TEST_CASE("cot matrix") {
  CHECK(cot_matrix(1) == from_rows({{1.0}}));
  CHECK(cot_matrix(2) == from_rows({{1.0, 2.0}, {0.0, 1.0}}));
  const double cot = 1.0 / std::tan(std::numbers::pi / 64);
  CHECK(std::abs(operator_norm(cot_matrix(16), NormKind::l2) - cot) <= 1e-8 * cot);
}

TEST_CASE("bidiagonal") {
  const Complex one[] = {0.5};
  CHECK(bidiagonal(one) == from_rows({{0.5}}));
  const Complex two[] = {0.0, 0.0};
  CHECK(bidiagonal(two) == from_rows({{0.0, 0.0}, {2.0, 0.0}}));
  const Complex many[] = {Complex(0.2), Complex(-0.3), Complex(0.0, 0.4), Complex(0.1, 0.1)};
  const Spectrum s = spectrum(bidiagonal(many));
  for (const Complex& l : many) CHECK(s.distance(l) < 1e-10);
}

TEST_CASE("lambda and nu of r") {
  const LambdaNu ln = lambda_nu_of_r(0.9, 0.5);
  CHECK(ln.lambda > 1.0);
  CHECK(std::abs(ln.nu - (ln.lambda * 0.9 - 1) / (ln.lambda - 0.9)) < 1e-12);
  CHECK(lambda_nu_of_r(0.99, 0.5).nu == doctest::Approx(-0.9).epsilon(1e-12));
  CHECK(lambda_nu_of_r(1 - 1e-8, 0.5).lambda - 1.0 < 1e-3);
}

TEST_CASE("random contractions") {
  for (NormKind norm : {NormKind::l1, NormKind::l2, NormKind::linf}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const ComplexMatrix t = random_contraction(6, seed, norm);
      CHECK(operator_norm(t, norm) <= 0.999 + 1e-12);
      CHECK(spectrum(t).spectral_radius < 1.0);
      CHECK(random_contraction(6, seed, norm) == t);
    }
  }
  CHECK(random_contraction(4, 1, NormKind::l2) != random_contraction(4, 2, NormKind::l2));
}

TEST_CASE("random rationals belong to the pole class") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const double r = seed % 3 == 0 ? 0.0 : (seed % 3 == 1 ? 0.5 : 0.9);
    const RationalFunction f = random_rational(1 + static_cast<int>(seed % 8), r, seed);
    if (r > 0.0) CHECK(f.pole_margin() >= (1.0 / r) * (1 - 1e-12));
    CHECK(std::isfinite(hardy_norm(f, 2.0)));
  }
}

TEST_CASE("gallery spectra agree with the QR solver") {
  for (const Instance& inst : standard_gallery()) {
    REQUIRE(inst.known_spectrum);
    const auto& known = inst.known_spectrum->eigenvalues;
    const Spectrum qr = spectrum(inst.matrix);
    // A Jordan block of size m moves its eigenvalue by about (eps ||T||)^{1/m} under rounding.
    std::size_t m = 0;
    for (const Complex& e : known) m += std::abs(e - known.front()) < 1e-14 ? 1 : 0;
    const double eps = 1e-15 * (1.0 + operator_norm(inst.matrix, NormKind::l2));
    const double tol = m <= 1 ? 1e-8 : std::max(1e-8, 10.0 * std::pow(eps, 1.0 / static_cast<double>(m)));
    INFO(inst.label());
    for (const Complex& e : qr.eigenvalues) {
      double nearest = 1e300;
      for (const Complex& k : known) nearest = std::min(nearest, std::abs(e - k));
      CHECK(nearest <= tol);
    }
  }
}

TEST_CASE("instance spec JSON round trip and determinism") {
  InstanceSpec spec;
  spec.kind = FamilyKind::random_spectrum;
  spec.n = 5;
  spec.r = 0.7;
  spec.seed = 99;
  const InstanceSpec back = spec_from_json(spec_to_json(spec));
  CHECK(back.kind == spec.kind);
  CHECK(back.n == 5);
  CHECK(back.seed == 99);
  CHECK(make_instance(back).matrix == make_instance(spec).matrix);
  CHECK(parse_family_kind(to_string(FamilyKind::cot_matrix)) == FamilyKind::cot_matrix);
}
