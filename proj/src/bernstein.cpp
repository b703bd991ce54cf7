#include "kreiss/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "kreiss/bounds.hpp"
#include "kreiss/gallery.hpp"

namespace kreiss {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogModulusSpan = 12.0;

using Point = std::vector<double>;

/// Maps search coordinates to rational functions in R_{n,r}.
class Parametrization {
 public:
  Parametrization(int n, double r) : n_(static_cast<std::size_t>(n)), r_(r) {
    if (r_ > 0.0) u_min_ = std::log(1.0 / r_);
  }

  std::size_t dimension() const { return has_poles() ? 4 * n_ : 2 * n_; }
  bool has_poles() const { return r_ > 0.0; }

  void project(Point& x) const {
    if (!has_poles()) return;
    for (std::size_t i = 0; i < n_; ++i) x[i] = std::clamp(x[i], u_min_, u_min_ + kLogModulusSpan);
  }

  RationalFunction build(const Point& x) const {
    std::vector<Complex> inv(n_, Complex(0.0));
    std::size_t offset = 0;
    if (has_poles()) {
      for (std::size_t i = 0; i < n_; ++i) inv[i] = std::polar(std::exp(-x[i]), -x[n_ + i]);
      offset = 2 * n_;
    }
    std::vector<Complex> num(n_);
    for (std::size_t i = 0; i < n_; ++i) num[i] = Complex(x[offset + i], x[offset + n_ + i]);
    return {std::move(inv), std::move(num)};
  }

  Point encode(const RationalFunction& f) const {
    Point x(dimension());
    std::size_t offset = 0;
    if (has_poles()) {
      for (std::size_t i = 0; i < n_; ++i) {
        const Complex a = f.inverse_poles()[i];
        x[i] = std::log(1.0 / std::abs(a));
        x[n_ + i] = -std::arg(a);
      }
      offset = 2 * n_;
    }
    for (std::size_t i = 0; i < n_; ++i) {
      x[offset + i] = f.numerator()[i].real();
      x[offset + n_ + i] = f.numerator()[i].imag();
    }
    project(x);
    return x;
  }

  /// Initial simplex edge along coordinate i.
  double step(const Point& x, std::size_t i) const {
    if (has_poles() && i < n_) return 0.1;
    if (has_poles() && i < 2 * n_) return 0.3;
    return 0.5 * (std::abs(x[i]) + 0.1);
  }

 private:
  std::size_t n_;
  double r_;
  double u_min_ = 0.0;
};

double ratio(const RationalFunction& f, double p, BernsteinMode mode) {
  const bool zero = std::all_of(f.numerator().begin(), f.numerator().end(),
                                [](Complex c) { return c == Complex(0.0); });
  if (zero) return 0.0;
  const double num = mode == BernsteinMode::h1_hp ? hardy_norm(f.derivative(), 1.0) : hardy_norm(f.derivative(), 2.0);
  const double den = mode == BernsteinMode::h1_hp ? hardy_norm(f, p) : hardy_norm(f, 2.0);
  const double v = num / den;
  return std::isfinite(v) ? v : 0.0;
}

struct Vertex {
  Point x;
  double value;  // ratio, maximized
};

}  // namespace

std::string_view to_string(BernsteinMode mode) { return mode == BernsteinMode::h1_hp ? "h1_hp" : "h2_h2"; }

std::size_t bernstein_restart_quota(int n) { return std::max<std::size_t>(200, 30 * 4 * static_cast<std::size_t>(n)); }

SearchResult bernstein_lower_search(int n, double r, double p, std::size_t budget, std::uint64_t seed,
                                    BernsteinMode mode) {
  if (n < 1) throw std::invalid_argument("bernstein_lower_search: n must be positive");
  if (!(r >= 0.0 && r < 1.0)) throw std::invalid_argument("bernstein_lower_search: r must lie in [0, 1)");
  if (!(p >= 1.0)) throw std::invalid_argument("bernstein_lower_search: p must lie in [1, inf]");
  if (budget < 100) throw std::invalid_argument("bernstein_lower_search: budget must be at least 100");

  const Parametrization param(n, r);
  const std::size_t dim = param.dimension();
  const std::size_t quota = bernstein_restart_quota(n);

  SearchResult result;
  result.mode = mode;
  result.upper_bound = mode == BernsteinMode::h1_hp ? thmA_constant(n, r, p) : kInf;
  result.asymptotic_reference = mode == BernsteinMode::h1_hp ? result.upper_bound / n : (1.0 + r) / (1.0 - r);
  bool have_witness = false;

  for (std::uint64_t restart = 0; result.evaluations < budget; ++restart) {
    const std::size_t limit = std::min(quota, budget - result.evaluations);
    std::size_t used = 0;
    auto evaluate = [&](Point x) -> std::optional<Vertex> {
      if (used >= limit) return std::nullopt;
      ++used;
      ++result.evaluations;
      param.project(x);
      const RationalFunction f = param.build(x);
      const double v = ratio(f, p, mode);
      if (!have_witness || v > result.best_ratio) {
        result.best_ratio = v;
        result.witness = f;
        have_witness = true;
      }
      return Vertex{std::move(x), v};
    };

    const RationalFunction start = random_rational(n, r, seed + 0x9e3779b9ULL * restart);
    const Point x0 = param.encode(start);
    std::vector<Vertex> simplex;
    bool exhausted = false;
    for (std::size_t i = 0; i <= dim && !exhausted; ++i) {
      Point x = x0;
      if (i > 0) x[i - 1] += param.step(x0, i - 1);
      auto v = evaluate(std::move(x));
      if (v) {
        simplex.push_back(std::move(*v));
      } else {
        exhausted = true;
      }
    }

    while (!exhausted) {
      std::stable_sort(simplex.begin(), simplex.end(),
                       [](const Vertex& a, const Vertex& b) { return a.value > b.value; });
      Point centroid(dim, 0.0);
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t k = 0; k < dim; ++k) centroid[k] += simplex[i].x[k] / static_cast<double>(dim);
      const Vertex& worst = simplex.back();
      auto along = [&](double t) {
        Point x(dim);
        for (std::size_t k = 0; k < dim; ++k) x[k] = centroid[k] + t * (worst.x[k] - centroid[k]);
        return x;
      };

      auto reflected = evaluate(along(-1.0));
      if (!reflected) break;
      if (reflected->value > simplex.front().value) {
        auto expanded = evaluate(along(-2.0));
        if (!expanded) break;
        simplex.back() = expanded->value > reflected->value ? std::move(*expanded) : std::move(*reflected);
        continue;
      }
      if (reflected->value > simplex[dim - 1].value) {
        simplex.back() = std::move(*reflected);
        continue;
      }
      const bool outside = reflected->value > worst.value;
      auto contracted = evaluate(along(outside ? -0.5 : 0.5));
      if (!contracted) break;
      if (contracted->value > std::max(reflected->value, worst.value)) {
        simplex.back() = std::move(*contracted);
        continue;
      }
      for (std::size_t i = 1; i <= dim; ++i) {
        Point x(dim);
        for (std::size_t k = 0; k < dim; ++k) x[k] = simplex[0].x[k] + 0.5 * (simplex[i].x[k] - simplex[0].x[k]);
        auto shrunk = evaluate(std::move(x));
        if (!shrunk) {
          exhausted = true;
          break;
        }
        simplex[i] = std::move(*shrunk);
      }
    }
  }
  return result;
}

nlohmann::json search_result_to_json(const SearchResult& result) {
  nlohmann::json doc{{"mode", std::string(to_string(result.mode))},
                     {"best_ratio", result.best_ratio},
                     {"evaluations", result.evaluations},
                     {"asymptotic_reference", result.asymptotic_reference},
                     {"witness", rational_to_json(result.witness)}};
  doc["upper_bound"] = std::isfinite(result.upper_bound) ? nlohmann::json(result.upper_bound) : nlohmann::json();
  return doc;
}

}  // namespace kreiss
