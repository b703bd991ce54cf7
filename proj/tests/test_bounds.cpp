#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kreiss/bounds.hpp"
#include "kreiss/error.hpp"
#include "kreiss/gallery.hpp"

using namespace kreiss;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("closed-form constants") {
  CHECK(thmA_constant(7, 0.5, kInf) == 7.0);
  CHECK(thmA_constant(4, 0.5, 1.0) == doctest::Approx(12.0));
  for (double p : {1.0, 2.0, 5.0}) CHECK(thmA_constant(3, 0.0, p) == doctest::Approx(3.0));
  CHECK(thm3_constant(5, 0.3, 1.0) == doctest::Approx((std::numbers::pi + 1) * 5));
  CHECK(thm3_constant(1, 0.0, 0.5) == doctest::Approx((std::numbers::pi + 1) * std::sqrt(2.0)));
  CHECK(thm3_constant(4, 0.9, 0.5) == doctest::Approx((std::numbers::pi + 1) * std::sqrt(3.8) * 4 / std::sqrt(0.1)));
  CHECK(thm3_constant(4, 0.9, 0.5) == doctest::Approx(102.1).epsilon(1e-3));
  CHECK(z3_constant(1) == doctest::Approx(5 * std::numbers::pi / 3 + 2 * std::numbers::sqrt2));
  CHECK(ds_constant(3, 1.0) == doctest::Approx(27.0));
}

TEST_CASE("fractional Kreiss constant is monotone") {
  for (int n = 1; n < 10; ++n) CHECK(thm3_constant(n + 1, 0.5, 0.5) > thm3_constant(n, 0.5, 0.5));
  for (double r = 0.0; r < 0.9; r += 0.1) CHECK(thm3_constant(3, r + 0.05, 0.5) > thm3_constant(3, r, 0.5));
  for (double a = 0.1; a < 0.9; a += 0.1) CHECK(thm3_constant(3, 0.5, a + 0.05) < thm3_constant(3, 0.5, a));
}

TEST_CASE("inequality ids round trip") {
  for (InequalityId id : all_inequality_ids()) CHECK(parse_inequality_id(to_string(id)) == id);
  CHECK_THROWS_AS(parse_inequality_id("nope"), std::invalid_argument);
  CHECK(is_function_inequality(InequalityId::hardy_w));
  CHECK_FALSE(is_function_inequality(InequalityId::z3_bound));
}

TEST_CASE("verify on the Jordan block") {
  VerificationContext ctx(jordan_nilpotent(4), NormKind::l2);
  const BoundRecord rho = verify(InequalityId::rho_le_P, ctx);
  CHECK(rho.rhs == doctest::Approx(1.0));
  CHECK(rho.lhs <= 1.0 + 1e-9);
  CHECK(rho.pass);
  VerificationContext l1(jordan_nilpotent(2), NormKind::l1);
  const BoundRecord z3 = verify(InequalityId::z3_bound, l1);
  CHECK(z3.rhs == doctest::Approx(z3_constant(2)));
  CHECK(z3.pass);
  CHECK(z3.norm == "l1");
}

TEST_CASE("verify on random contractions") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    VerificationContext ctx(random_contraction(5, seed, NormKind::l2), NormKind::l2);
    const BoundRecord s = verify(InequalityId::spijker_en, ctx);
    CHECK(s.lhs <= 1.0 + 1e-12);
    CHECK(s.pass);
    for (InequalityId id : {InequalityId::kreiss_matrix_2en, InequalityId::thm3_upper, InequalityId::thm3_kmt,
                            InequalityId::ds_bound, InequalityId::z3_bound}) {
      CHECK(verify(id, ctx).pass);
    }
    const BoundRecord probe = verify(InequalityId::thm7_probe, ctx, {.l = 2});
    CHECK(std::isfinite(probe.params.at("K_fit")));
  }
}

TEST_CASE("hypothesis violations") {
  VerificationContext l1(random_contraction(4, 1, NormKind::l1), NormKind::l1);
  CHECK_THROWS_AS(verify(InequalityId::spijker_en, l1), HypothesisViolation);
  VerificationContext growing(ComplexMatrix::identity(2) * Complex(1.1), NormKind::l2);
  CHECK_THROWS_AS(verify(InequalityId::rho_le_P, growing), HypothesisViolation);
  VerificationContext circle(ComplexMatrix::identity(2), NormKind::l2);
  CHECK_THROWS_AS(verify(InequalityId::thm3_upper, circle), HypothesisViolation);
  const RationalFunction f = random_rational(3, 0.5, 1);
  CHECK_THROWS_AS(verify(InequalityId::bernstein_thmA, f, 0.2), HypothesisViolation);
}

TEST_CASE("function inequalities") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const RationalFunction f = random_rational(1 + static_cast<int>(seed % 8), 0.9, seed);
    for (double p : {1.0, 2.0, kInf}) CHECK(verify(InequalityId::bernstein_thmA, f, 0.9, {.p = p}).pass);
    CHECK(verify(InequalityId::hardy_w, f, 0.9).pass);
  }
}

TEST_CASE("sharpness probe against the high-precision oracle") {
  // Values from tests/oracles/sharpness_probe.py (60-digit arithmetic), n = 8, alpha = 0.5.
  const double expected[] = {5.3760009711134408, 6.5362361301479409, 6.9677714102816610, 7.1116053833347637,
                             7.1578582260910980};
  double prev = 0.0;
  for (int e = 2; e <= 6; ++e) {
    const double r = 1.0 - std::pow(10.0, -e);
    const double v = thm3_probe_value(8, 0.5, r);
    CHECK(v == doctest::Approx(expected[e - 2]).epsilon(1e-6));
    CHECK(v > prev);
    prev = v;
  }
  const BoundRecord rec = thm3_sharpness_probe(8, 0.5, 1 - 1e-6);
  CHECK(rec.rhs == doctest::Approx(10.153170387608860).epsilon(1e-14));
}

TEST_CASE("one-dimensional probe limit") {
  // n = 1, e = 1 - r: lambda - 1 = e^{3/2} / (1 + r - e^{1/2}) ~ e^{3/2} / 2 and lambda - r ~ e,
  // so (1-r)^{1/4} (lambda-1)^{1/2} / (lambda - r) -> 1/sqrt(2) = cot(pi/4) / sqrt(2).
  CHECK(thm3_probe_value(1, 0.5, 1 - 1e-8) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-3));
}

TEST_CASE("cot matrix norm identity") {
  for (int n : {1, 2, 5, 16}) {
    const double cot = 1.0 / std::tan(std::numbers::pi / (4.0 * n));
    CHECK(std::abs(operator_norm(cot_matrix(n), NormKind::l2) - cot) <= 1e-8 * cot);
  }
}

TEST_CASE("CSV serialization") {
  const BoundRecord r = BoundRecord::make("z3_bound", 1.5, 2.0, 1e-6, {{"n", 3}, {"r", 0.25}}, "l2");
  CHECK(csv_header() == "inequality_id,n,r,alpha,l,p,norm,lhs,rhs,margin,pass");
  CHECK(to_csv_row(r).rfind("z3_bound,3,0.25,,,,l2,1.5,2,0.5,true", 0) == 0);
}
