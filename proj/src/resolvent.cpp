#include "kreiss/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

#include <fmt/format.h>

#include "kreiss/blaschke.hpp"
#include "kreiss/error.hpp"
#include "kreiss/hardy.hpp"

namespace kreiss {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

constexpr double kDivergenceRadius = 1.0 - 1e-9;
constexpr double kSpectrumExclusion = 1e-10;

double vector_norm(const std::vector<Complex>& v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return std::sqrt(s);
}

/// Evaluates ||R^l(lambda, T)|| at many points. The l2 grid estimate is a
/// warm-started power iteration on R^{l,H} R^l (a lower bound); l1 and linf are exact.
class ResolventEvaluator {
 public:
  ResolventEvaluator(const ComplexMatrix& t, NormKind norm, int l)
      : t_(t), norm_(norm), l_(l), threshold_(1e-14 * operator_norm(t, NormKind::l1)) {}

  /// NaN when lambda is numerically in the spectrum.
  double estimate(Complex lambda) {
    if (norm_ != NormKind::l2 || t_.size() <= 2) return exact(lambda);
    const auto lu = factor(lambda);
    if (!lu) return kNaN;
    return power_estimate(*lu);
  }

  double exact(Complex lambda) const {
    const auto lu = factor(lambda);
    if (!lu) return kNaN;
    ComplexMatrix r = ComplexMatrix::identity(t_.size());
    for (int k = 0; k < l_; ++k) r = lu->solve(r);
    if (!r.all_finite()) return kNaN;
    return operator_norm(r, norm_);
  }

 private:
  void apply(const LuFactorization& lu, std::vector<Complex>& v, bool adjoint) const {
    for (int k = 0; k < l_; ++k) {
      if (adjoint) {
        lu.solve_adjoint_in_place(v);
      } else {
        lu.solve_in_place(v);
      }
    }
  }

  double power_estimate(const LuFactorization& lu) {
    const std::size_t n = t_.size();
    if (warm_.empty()) {
      warm_.resize(n);
      for (std::size_t i = 0; i < n; ++i) warm_[i] = Complex(1.0, 0.1 * static_cast<double>(i));
      const double w = vector_norm(warm_);
      for (auto& z : warm_) z /= w;
    }
    double sigma = 0.0;
    for (int it = 0; it < 30; ++it) {
      work_ = warm_;
      apply(lu, work_, false);
      const double lower = vector_norm(work_);
      apply(lu, work_, true);
      const double gram = vector_norm(work_);
      if (!std::isfinite(gram)) return kNaN;
      if (!(gram > 0.0)) return 0.0;
      for (std::size_t i = 0; i < n; ++i) warm_[i] = work_[i] / gram;
      sigma = std::sqrt(gram);
      if (sigma - lower <= 1e-6 * sigma) break;
    }
    return sigma;
  }

  std::optional<LuFactorization> factor(Complex lambda) const {
    ComplexMatrix shifted = t_ * Complex(-1.0);
    for (std::size_t i = 0; i < t_.size(); ++i) shifted(i, i) += lambda;
    LuFactorization lu(std::move(shifted));
    if (!(lu.min_pivot() > threshold_)) return std::nullopt;
    return lu;
  }

  const ComplexMatrix& t_;
  NormKind norm_;
  int l_;
  double threshold_;
  std::vector<Complex> warm_;
  std::vector<Complex> work_;
};

double weight_exponent(const ResolventWeight& w) {
  return w.kind == ResolventWeight::Kind::iterated ? w.alpha + w.power - 1 : w.alpha;
}

/// Weight at z = (1 + s) e^{i theta}; NaN inside the spectrum exclusion zone.
double weight_value(const ResolventWeight& w, const Spectrum& sigma, double s, Complex z) {
  if (w.kind == ResolventWeight::Kind::strong) {
    const double d = sigma.distance(z);
    if (d < kSpectrumExclusion) return kNaN;
    return std::pow(d, w.power);
  }
  return std::pow(s, weight_exponent(w));
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  out.back() = hi;
  return out;
}

Complex point(double s, double theta) { return std::polar(1.0 + s, theta); }

void validate_weight(const ResolventWeight& w) {
  if (w.power < 1) throw std::invalid_argument("resolvent power must be at least 1");
  if (w.kind != ResolventWeight::Kind::strong && !(w.alpha > 0.0 && w.alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1]");
  }
}

struct Cell {
  double value;
  std::size_t s_index;
  std::size_t theta_index;
};

struct Refined {
  double value;
  double s;
  double theta;
  std::size_t iterations;
  bool converged;
};

}  // namespace

PowerBound power_bound(const ComplexMatrix& t, NormKind norm, double spectral_radius) {
  PowerBound out;
  const double n = static_cast<double>(t.size());
  constexpr double kCap = 1e6;
  double cap = kCap;
  if (spectral_radius < 1.0) cap = std::min(kCap, 20.0 * n * std::ceil(1.0 / (1.0 - spectral_radius)));
  const auto k_max = static_cast<std::size_t>(cap);
  const bool decay_rule = spectral_radius < 1.0 - 1e-6;

  PowerSequence seq(t, norm);
  int small_run = 0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    seq.advance();
    out.k_last = k;
    const double upper = seq.norm_upper_bound();
    if (upper > out.value) {
      const double exact = seq.norm();
      if (exact > out.value) {
        out.value = exact;
        out.k_attained = k;
      }
    }
    if (out.value > 1e12) {
      out.unbounded = true;
      out.value = kInf;
      return out;
    }
    if (decay_rule && upper < 1e-10 * out.value) {
      if (++small_run >= 10) {
        out.certified = true;
        return out;
      }
    } else {
      small_run = 0;
    }
  }
  return out;
}

PowerBound power_bound(const ComplexMatrix& t, NormKind norm) {
  return power_bound(t, norm, spectrum(t).spectral_radius);
}

ResolventWeight ResolventWeight::kreiss(double alpha) { return {Kind::kreiss, 1, alpha}; }

ResolventWeight ResolventWeight::iterated(int k, double alpha) { return {Kind::iterated, k, alpha}; }

ResolventWeight ResolventWeight::strong(int l) { return {Kind::strong, l, 1.0}; }

double ResolventWeight::limit_at_infinity() const {
  if (kind == Kind::strong) return 1.0;
  return std::abs(weight_exponent(*this) - power) < 1e-15 ? 1.0 : 0.0;
}

std::string ResolventWeight::label() const {
  switch (kind) {
    case Kind::kreiss:
      return fmt::format("kreiss(alpha={})", alpha);
    case Kind::iterated:
      return fmt::format("iterated(k={},alpha={})", power, alpha);
    case Kind::strong:
      return fmt::format("strong(l={})", power);
  }
  return {};
}

double weighted_resolvent_norm(const ComplexMatrix& t, NormKind norm, const ResolventWeight& weight,
                               const Spectrum& sigma, Complex lambda) {
  validate_weight(weight);
  const double s = std::abs(lambda) - 1.0;
  const double w = weight.kind == ResolventWeight::Kind::strong
                       ? std::pow(sigma.distance(lambda), weight.power)
                       : std::pow(std::max(s, 0.0), weight_exponent(weight));
  return w * operator_norm(resolvent_power(t, lambda, weight.power), norm);
}

SupResult sup_weighted_resolvent(const ComplexMatrix& t, NormKind norm, const ResolventWeight& weight,
                                 const Spectrum& sigma, const SupOptions& options) {
  validate_weight(weight);
  if (options.angles < 1 || options.radii < 1 || !(options.s_min > 0.0) || !(options.s_max > options.s_min)) {
    throw std::invalid_argument("invalid sup grid options");
  }
  SupResult result;
  const bool strong = weight.kind == ResolventWeight::Kind::strong;

  if (!strong && weight.alpha < 1.0 && sigma.spectral_radius >= kDivergenceRadius) {
    result.value = kInf;
    result.infinite = true;
    result.converged = true;
    Complex top(1.0);
    double top_modulus = -1.0;
    for (const Complex& e : sigma.eigenvalues) {
      if (std::abs(e) > top_modulus) {
        top_modulus = std::abs(e);
        top = e;
      }
    }
    result.argmax = std::polar(1.0 + options.s_min, std::arg(top));
    return result;
  }

  std::vector<double> radii = log_grid(options.s_min, options.s_max, options.radii);
  if (strong) radii.insert(radii.begin(), 0.0);
  std::vector<double> thetas(options.angles);
  for (std::size_t j = 0; j < options.angles; ++j) {
    thetas[j] = kTwoPi * static_cast<double>(j) / static_cast<double>(options.angles);
  }

  ResolventEvaluator evaluator(t, norm, weight.power);
  auto objective = [&](double s, double theta) {
    const Complex z = point(s, theta);
    const double w = weight_value(weight, sigma, s, z);
    if (std::isnan(w)) return kNaN;
    const double r = evaluator.exact(z);
    if (std::isnan(r)) return kNaN;
    const double v = w * r;
    return std::isfinite(v) ? v : kNaN;
  };

  // Grid pass, s-major so neighbouring evaluations share the warm start.
  std::vector<Cell> cells;
  cells.reserve(radii.size() * thetas.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    for (std::size_t j = 0; j < thetas.size(); ++j) {
      const Complex z = point(radii[i], thetas[j]);
      const double w = weight_value(weight, sigma, radii[i], z);
      if (std::isnan(w)) continue;
      const double r = evaluator.estimate(z);
      ++result.nodes;
      const double v = w * r;
      if (std::isfinite(v)) cells.push_back({v, i, j});
    }
  }

  // Exact re-evaluation of the leading estimates, then refinement of the best cells.
  auto by_value = [](const Cell& a, const Cell& b) {
    if (a.value != b.value) return a.value > b.value;
    if (a.s_index != b.s_index) return a.s_index < b.s_index;
    return a.theta_index < b.theta_index;
  };
  const std::size_t screen = std::min(cells.size(), std::max<std::size_t>(8 * options.refine_cells, 64));
  std::partial_sort(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(screen), cells.end(), by_value);
  cells.resize(screen);
  for (Cell& c : cells) {
    const double v = objective(radii[c.s_index], thetas[c.theta_index]);
    c.value = std::isnan(v) ? -kInf : v;
  }
  std::stable_sort(cells.begin(), cells.end(), by_value);
  cells.resize(std::min(cells.size(), options.refine_cells));

  const double s_floor = strong ? 0.0 : options.s_min;
  const double spacing =
      options.radii > 1 ? std::pow(options.s_max / options.s_min, 1.0 / static_cast<double>(options.radii - 1)) - 1.0
                        : 0.5;
  std::optional<Refined> best;
  for (const Cell& c : cells) {
    if (!(c.value > -kInf)) continue;
    Refined r{c.value, radii[c.s_index], thetas[c.theta_index], 0, false};
    double hs = r.s > 0.0 ? r.s * spacing : options.s_min;
    double ht = kTwoPi / static_cast<double>(options.angles);
    while (r.iterations < options.max_refinement_iterations) {
      ++r.iterations;
      double cand_value = r.value;
      double cand_s = r.s;
      double cand_theta = r.theta;
      const double trial_s[4] = {std::min(r.s + hs, options.s_max), std::max(r.s - hs, s_floor), r.s, r.s};
      const double trial_t[4] = {r.theta, r.theta, r.theta + ht, r.theta - ht};
      for (int q = 0; q < 4; ++q) {
        if (trial_s[q] == r.s && trial_t[q] == r.theta) continue;
        const double v = objective(trial_s[q], trial_t[q]);
        ++result.nodes;
        if (v > cand_value) {
          cand_value = v;
          cand_s = trial_s[q];
          cand_theta = trial_t[q];
        }
      }
      if (cand_value > r.value) {
        r.value = cand_value;
        r.s = cand_s;
        r.theta = cand_theta;
        continue;
      }
      hs *= 0.5;
      ht *= 0.5;
      if (ht < options.relative_step && hs < options.relative_step * std::max(r.s, options.s_min)) {
        r.converged = true;
        break;
      }
    }
    result.refinement_iterations += r.iterations;
    if (!best || r.value > best->value) best = r;
  }

  if (best) {
    result.value = best->value;
    result.argmax = point(best->s, std::remainder(best->theta, kTwoPi));
    result.converged = best->converged;
  }
  const double limit = weight.limit_at_infinity();
  if (!best || limit > result.value) {
    result.value = limit;
    result.argmax = point(options.s_max, 0.0);
    result.at_infinity = true;
    result.converged = true;
  }
  return result;
}

SupResult sup_weighted_resolvent(const ComplexMatrix& t, NormKind norm, const ResolventWeight& weight,
                                 const SupOptions& options) {
  return sup_weighted_resolvent(t, norm, weight, spectrum(t), options);
}

ResolventHeatmap resolvent_heatmap(const ComplexMatrix& t, NormKind norm, const ResolventWeight& weight,
                                   const Spectrum& sigma, std::size_t angles, std::size_t radii, double s_min,
                                   double s_max) {
  validate_weight(weight);
  if (angles < 1 || radii < 1 || !(s_min > 0.0) || !(s_max > s_min)) {
    throw std::invalid_argument("invalid heatmap grid");
  }
  ResolventHeatmap map;
  map.radii_offsets = log_grid(s_min, s_max, radii);
  for (std::size_t j = 0; j < angles; ++j) {
    map.thetas.push_back(kTwoPi * static_cast<double>(j) / static_cast<double>(angles));
  }
  const ResolventEvaluator evaluator(t, norm, weight.power);
  map.values.reserve(angles * radii);
  for (double s : map.radii_offsets) {
    for (double theta : map.thetas) {
      const Complex z = point(s, theta);
      const double w = weight_value(weight, sigma, s, z);
      map.values.push_back(std::isnan(w) ? kNaN : w * evaluator.exact(z));
    }
  }
  return map;
}

double lemma2_bound(const Spectrum& sigma, double power_bound_value, Complex lambda, int l) {
  for (const Complex& e : sigma.eigenvalues) {
    if (std::abs(e) >= 1.0 - 1e-10) throw SpectrumOnCircle("lemma2_bound: spectrum touches the unit circle");
  }
  if (!(std::abs(lambda) > 1.0)) throw std::invalid_argument("lemma2_bound: |lambda| must exceed 1");
  if (l < 1) throw std::invalid_argument("lemma2_bound: l must be positive");
  const RationalFunction projected = project_kernel_power(SpectrumInDisk(sigma.eigenvalues), lambda, l);
  return power_bound_value * std::pow(std::abs(lambda), -l) * wiener_norm(projected);
}

BoundRecord scaling_reduction_check(const ComplexMatrix& t, const Spectrum& sigma, Complex lambda, int l,
                                    NormKind norm) {
  const double rho = std::abs(lambda);
  if (!(rho > 1.0)) throw std::invalid_argument("scaling_reduction_check: |lambda| must exceed 1");
  if (l < 1) throw std::invalid_argument("scaling_reduction_check: l must be positive");
  const Complex lambda_star = lambda / rho;
  const ComplexMatrix t_star = t * Complex(1.0 / rho);
  std::vector<Complex> scaled = sigma.eigenvalues;
  for (Complex& e : scaled) e /= rho;
  const Spectrum sigma_star = Spectrum::from_eigenvalues(std::move(scaled));

  const double lhs_dist = std::pow(rho, l) * std::pow(sigma_star.distance(lambda_star), l);
  const double rhs_dist = std::pow(sigma.distance(lambda), l);
  const double dist_discrepancy = std::abs(lhs_dist - rhs_dist) / std::max(rhs_dist, 1e-300);

  const ComplexMatrix direct = resolvent_power(t, lambda, l);
  const ComplexMatrix reduced = resolvent_power(t_star, lambda_star, l) * Complex(std::pow(rho, -l));
  const double scale = std::max(operator_norm(direct, norm), 1e-300);
  const double resolvent_discrepancy = operator_norm(reduced - direct, norm) / scale;

  const double discrepancy = std::max(dist_discrepancy, resolvent_discrepancy);
  return BoundRecord::make("scaling_reduction", discrepancy, 0.0, 1e-8,
                           {{"n", static_cast<double>(t.size())}, {"l", static_cast<double>(l)}}, std::string(to_string(norm)));
}

}  // namespace kreiss
