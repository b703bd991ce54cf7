#include <doctest.h>

#include <cmath>
#include <limits>

#include "kreiss/bernstein.hpp"
#include "kreiss/bounds.hpp"

using namespace kreiss;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("one pole: the best ratio is r/(1+r) for p = inf") {
  // f = 1/(1 - a z), |a| <= r: ||f'||_1 = |a| ||k_a||_2^2 = |a|/(1-|a|^2), ||f||_inf = 1/(1-|a|).
  const SearchResult res = bernstein_lower_search(1, 0.5, kInf, 600, 1);
  CHECK(res.best_ratio == doctest::Approx(0.5 / 1.5).epsilon(1e-4));
  CHECK(res.best_ratio <= 0.5 / 1.5 * (1 + 1e-9));
  CHECK(res.upper_bound == 1.0);
}

TEST_CASE("polynomials: r = 0 reaches n") {
  const SearchResult res = bernstein_lower_search(3, 0.0, kInf, 1500, 4);
  CHECK(res.best_ratio <= 3.0 * (1 + 1e-6));
  CHECK(res.best_ratio >= 2.0 - 1e-6);
}

TEST_CASE("search never exceeds the Bernstein upper bound") {
  for (int n : {1, 2, 4}) {
    for (double r : {0.0, 0.5, 0.9}) {
      for (double p : {1.0, 2.0, kInf}) {
        const SearchResult res = bernstein_lower_search(n, r, p, 400, 7);
        CHECK(res.best_ratio <= thmA_constant(n, r, p) * (1 + 1e-6));
        CHECK(res.evaluations == 400);
      }
    }
  }
}

TEST_CASE("best ratio is nondecreasing in budget") {
  double prev = 0.0;
  for (std::size_t budget : {100u, 300u, 700u, 1500u}) {
    const SearchResult res = bernstein_lower_search(2, 0.5, 2.0, budget, 3);
    CHECK(res.best_ratio >= prev);
    prev = res.best_ratio;
  }
}

TEST_CASE("H2 mode reports the asymptotic reference") {
  const SearchResult res = bernstein_lower_search(2, 0.5, 2.0, 300, 1, BernsteinMode::h2_h2);
  CHECK(res.asymptotic_reference == doctest::Approx(3.0));
  CHECK(std::isinf(res.upper_bound));
  CHECK(search_result_to_json(res)["upper_bound"].is_null());
}

TEST_CASE("invalid arguments") {
  CHECK_THROWS_AS(bernstein_lower_search(0, 0.5, 2.0, 200, 1), std::invalid_argument);
  CHECK_THROWS_AS(bernstein_lower_search(2, 1.0, 2.0, 200, 1), std::invalid_argument);
  CHECK_THROWS_AS(bernstein_lower_search(2, 0.5, 0.5, 200, 1), std::invalid_argument);
  CHECK_THROWS_AS(bernstein_lower_search(2, 0.5, 2.0, 10, 1), std::invalid_argument);
}
