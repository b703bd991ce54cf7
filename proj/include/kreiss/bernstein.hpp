#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include <json.hpp>

#include "kreiss/hardy.hpp"

namespace kreiss {

enum class BernsteinMode {
  h1_hp,  // ||f'||_{H^1} / ||f||_{H^p}
  h2_h2,  // ||f'||_{H^2} / ||f||_{H^2}
};

std::string_view to_string(BernsteinMode mode);

struct SearchResult {
  double best_ratio = 0.0;
  RationalFunction witness = RationalFunction::constant(1.0);
  std::size_t evaluations = 0;
  double upper_bound = 0.0;           // thmA_constant(n, r, p); +inf in H2 mode
  double asymptotic_reference = 0.0;  // (1+r)/(1-r) in H2 mode, upper_bound / n otherwise
  BernsteinMode mode = BernsteinMode::h1_hp;
};

/// Multi-start Nelder-Mead over R_{n,r}: poles as (log modulus, angle) projected to
/// modulus >= 1/r, numerator coefficients as real and imaginary parts. Every restart
/// receives a fixed evaluation quota, so the evaluations for a smaller budget are a
/// prefix of those for a larger one and best_ratio is nondecreasing in budget.
/// r = 0 restricts the search to polynomials of degree < n.
SearchResult bernstein_lower_search(int n, double r, double p, std::size_t budget, std::uint64_t seed,
                                    BernsteinMode mode = BernsteinMode::h1_hp);

/// Evaluations granted to each restart for a given degree.
std::size_t bernstein_restart_quota(int n);

nlohmann::json search_result_to_json(const SearchResult& result);

}  // namespace kreiss
