#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "kreiss/gallery.hpp"
#include "kreiss/hardy.hpp"
#include "oracles.hpp"

using namespace kreiss;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Complex> samples_by_oracle(const RationalFunction& f, std::size_t n) {
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
    out[k] = oracle::rational_value(f.inverse_poles(), f.numerator(), z);
  }
  return out;
}

double dense_sup(const RationalFunction& f, std::size_t n) {
  double best = 0.0;
  for (const Complex& v : samples_by_oracle(f, n)) best = std::max(best, std::abs(v));
  return best;
}

}  // namespace

TEST_CASE("boundary samples") {
  for (const Complex& v : boundary_samples(RationalFunction::constant(1.0), 8)) CHECK(v == Complex(1.0));
  CHECK(std::abs(boundary_samples(RationalFunction::kernel(0.5), 16)[0] - 2.0) < 1e-15);
  for (const Complex& v : boundary_samples(RationalFunction::blaschke_factor(0.5), 64))
    CHECK(std::abs(std::abs(v) - 1.0) < 1e-12);
}

TEST_CASE("Hardy norms in closed form") {
  for (double p : {1.0, 2.0, 3.5, kInf}) CHECK(hardy_norm(RationalFunction::constant(1.0), p) == doctest::Approx(1.0));
  for (double zeta : {0.0, 0.3, 0.9}) {
    CHECK(hardy_norm(RationalFunction::kernel(zeta), 2.0) == doctest::Approx(1.0 / std::sqrt(1 - zeta * zeta)).epsilon(1e-10));
  }
  const RationalFunction k9 = RationalFunction::kernel(0.9);
  CHECK(hardy_norm(k9, kInf) == doctest::Approx(10.0).epsilon(1e-10));
  CHECK(hardy_norm(k9, kInf) >= dense_sup(k9, 1 << 14) - 1e-12);
  // ||k_zeta||_1 = 2F1(1/2,1/2;1;|zeta|^2) = (2/pi) K(|zeta|).
  CHECK(hardy_norm(RationalFunction::kernel(0.5), 1.0) ==
        doctest::Approx(2.0 / std::numbers::pi * std::comp_ellint_1(0.5)).epsilon(1e-9));
}

TEST_CASE("Hardy norms are monotone in p and bounded by the Wiener norm") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const RationalFunction f = random_rational(1 + static_cast<int>(seed % 6), seed % 2 ? 0.9 : 0.5, seed);
    double prev = 0.0;
    for (double p : {1.0, 1.5, 2.0, 4.0, kInf}) {
      const double v = hardy_norm(f, p);
      CHECK(v >= prev - 1e-9 * std::max(1.0, v));
      prev = v;
    }
    CHECK(hardy_norm(f, kInf) <= wiener_norm(f) + 1e-9 * std::max(1.0, wiener_norm(f)));
    CHECK(hardy_norm(f, kInf) >= dense_sup(f, 4096) * (1 - 1e-12));
  }
}

TEST_CASE("Taylor coefficients") {
  const TaylorSeries k = taylor_coefficients(RationalFunction::kernel(0.5), 1e-12);
  for (std::size_t m = 0; m < 10; ++m) CHECK(std::abs(k.coefficients[m] - std::pow(0.5, m)) < 1e-15);
  CHECK(k.tail_bound <= 1e-12);

  const TaylorSeries b = taylor_coefficients(RationalFunction::blaschke_factor(0.5), 1e-12);
  CHECK(std::abs(b.coefficients[0] - 0.5) < 1e-15);
  CHECK(std::abs(b.coefficients[1] + 0.75) < 1e-15);
  CHECK(std::abs(b.coefficients[2] + 0.375) < 1e-15);

  // Pole margin 2: the geometric tail drops below 1e-12 within 45 terms.
  const Complex pole = 2.0;
  const TaylorSeries t = taylor_coefficients(RationalFunction::from_poles({&pole, 1}, {1.0}), 1e-12);
  CHECK(t.coefficients.size() <= 46);
  CHECK(t.tail_bound <= 1e-12);
}

TEST_CASE("Taylor coefficients agree with a DFT of boundary values") {
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const RationalFunction f = random_rational(1 + static_cast<int>(seed % 8), 0.7, seed);
    const TaylorSeries series = taylor_coefficients(f, 1e-14);
    // Aliasing error of the N-point DFT is at most sum_{m>=N} |c_m|, tiny for N = 2048 and |pole| >= 1/0.7.
    const auto dft = oracle::taylor_by_dft(samples_by_oracle(f, 2048));
    double scale = 0.0;
    for (const Complex& c : series.coefficients) scale = std::max(scale, std::abs(c));
    for (std::size_t m = 0; m < 32 && m < series.coefficients.size(); ++m) {
      CHECK(std::abs(series.coefficients[m] - dft[m]) <= 1e-9 * std::max(1.0, scale));
    }
  }
}

TEST_CASE("Parseval identity") {
  for (std::uint64_t seed = 200; seed < 220; ++seed) {
    const RationalFunction f = random_rational(1 + static_cast<int>(seed % 5), 0.8, seed);
    const TaylorSeries s = taylor_coefficients(f, 1e-13);
    double sum = 0.0;
    for (const Complex& c : s.coefficients) sum += std::norm(c);
    const double h2 = hardy_norm(f, 2.0);
    CHECK(std::abs(h2 * h2 - sum) <= 1e-8 * std::max(1.0, sum) + 2 * s.tail_bound * std::sqrt(sum) + s.tail_bound * s.tail_bound);
  }
}

TEST_CASE("Wiener norm") {
  CHECK(wiener_norm(RationalFunction::constant(1.0)) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(wiener_norm(RationalFunction::kernel(Complex(0.0, 0.6))) == doctest::Approx(1.0 / 0.4).epsilon(1e-10));
  CHECK(wiener_norm(RationalFunction::blaschke_factor(0.5)) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("Hardy inequality check") {
  const BoundRecord one = hardy_inequality_check(RationalFunction::constant(1.0));
  CHECK(one.lhs == doctest::Approx(1.0));
  CHECK(one.rhs == doctest::Approx(1.0));
  CHECK(one.pass);
  const BoundRecord k = hardy_inequality_check(RationalFunction::kernel(0.5));
  CHECK(k.lhs == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(k.rhs >= 2.0);
  CHECK(k.pass);
}

TEST_CASE("derivative against finite differences") {
  const RationalFunction f = random_rational(4, 0.8, 5);
  const RationalFunction d = f.derivative();
  const Complex z(0.3, -0.4);
  const double h = 1e-5;
  const Complex fd = (f(z + h) - f(z - h)) / (2 * h);
  CHECK(std::abs(d(z) - fd) < 1e-7 * std::max(1.0, std::abs(fd)));
}

TEST_CASE("rational JSON round trip keeps poles at infinity") {
  const Complex poles[] = {Complex(2.0, 1.0), Complex(kInf)};
  const RationalFunction f = RationalFunction::from_poles(poles, {Complex(1.0), Complex(0.0, 2.0)});
  const nlohmann::json doc = rational_to_json(f);
  CHECK(doc["poles"][1].is_null());
  const RationalFunction g = rational_from_json(doc);
  for (Complex z : {Complex(0.1), Complex(0.0, 0.7)}) CHECK(std::abs(f(z) - g(z)) < 1e-14);
}
