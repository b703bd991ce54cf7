#include "kreiss/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kreiss/error.hpp"
#include "kreiss/matrix_io.hpp"

namespace kreiss {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex horner(std::span<const Complex> coeffs, Complex z) {
  Complex acc(0.0);
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * z + coeffs[i];
  return acc;
}

std::vector<Complex> poly_multiply(std::span<const Complex> a, std::span<const Complex> b) {
  std::vector<Complex> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<Complex> poly_derivative(std::span<const Complex> a) {
  if (a.size() <= 1) return {Complex(0.0)};
  std::vector<Complex> out(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) out[i - 1] = a[i] * static_cast<double>(i);
  return out;
}

std::size_t next_power_of_two(std::size_t v) {
  std::size_t p = 1;
  while (p < v) p <<= 1;
  return p;
}

Complex unit(double theta) { return {std::cos(theta), std::sin(theta)}; }

}  // namespace

RationalFunction::RationalFunction(std::vector<Complex> inverse_poles, std::vector<Complex> numerator)
    : inverse_poles_(std::move(inverse_poles)), numerator_(std::move(numerator)) {
  if (inverse_poles_.empty()) throw std::invalid_argument("rational function needs at least one factor");
  for (const Complex& a : inverse_poles_) {
    if (!(std::abs(a) < 1.0)) throw std::invalid_argument("all poles must lie outside the closed unit disk");
  }
  if (numerator_.size() > inverse_poles_.size()) {
    // Trailing zeros are allowed; anything else violates deg N < deg D.
    for (std::size_t i = inverse_poles_.size(); i < numerator_.size(); ++i) {
      if (numerator_[i] != Complex(0.0)) {
        throw std::invalid_argument("numerator degree must be below the number of poles");
      }
    }
  }
  numerator_.resize(inverse_poles_.size());
}

RationalFunction RationalFunction::from_poles(std::span<const Complex> poles,
                                              std::vector<Complex> numerator) {
  std::vector<Complex> inv;
  inv.reserve(poles.size());
  for (const Complex& p : poles) {
    if (std::isinf(p.real()) || std::isinf(p.imag())) {
      inv.emplace_back(0.0);
    } else {
      if (!(std::abs(p) > 1.0)) throw std::invalid_argument("pole inside the closed unit disk");
      inv.push_back(1.0 / p);
    }
  }
  return {std::move(inv), std::move(numerator)};
}

RationalFunction RationalFunction::constant(Complex c) { return {{Complex(0.0)}, {c}}; }

RationalFunction RationalFunction::kernel(Complex zeta) { return {{std::conj(zeta)}, {Complex(1.0)}}; }

RationalFunction RationalFunction::blaschke_factor(Complex lambda) {
  return {{std::conj(lambda), Complex(0.0)}, {lambda, Complex(-1.0)}};
}

Complex RationalFunction::operator()(Complex z) const {
  Complex den(1.0);
  for (const Complex& a : inverse_poles_) den *= (1.0 - a * z);
  return horner(numerator_, z) / den;
}

std::vector<Complex> RationalFunction::denominator() const {
  std::vector<Complex> d{Complex(1.0)};
  for (const Complex& a : inverse_poles_) {
    const Complex factor[2] = {Complex(1.0), -a};
    d = poly_multiply(d, factor);
  }
  return d;
}

RationalFunction RationalFunction::derivative() const {
  const auto d = denominator();
  const auto nd = poly_derivative(numerator_);
  const auto dd = poly_derivative(d);
  auto left = poly_multiply(nd, d);
  const auto right = poly_multiply(numerator_, dd);
  left.resize(std::max(left.size(), right.size()));
  for (std::size_t i = 0; i < right.size(); ++i) left[i] -= right[i];
  std::vector<Complex> doubled = inverse_poles_;
  doubled.insert(doubled.end(), inverse_poles_.begin(), inverse_poles_.end());
  left.resize(doubled.size());
  return {std::move(doubled), std::move(left)};
}

RationalFunction RationalFunction::scaled(Complex s) const {
  auto num = numerator_;
  for (auto& c : num) c *= s;
  return {inverse_poles_, std::move(num)};
}

double RationalFunction::pole_margin() const noexcept {
  double amax = 0.0;
  for (const Complex& a : inverse_poles_) amax = std::max(amax, std::abs(a));
  return amax == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / amax;
}

std::vector<Complex> RationalFunction::poles() const {
  std::vector<Complex> out;
  out.reserve(inverse_poles_.size());
  for (const Complex& a : inverse_poles_) {
    out.push_back(a == Complex(0.0) ? Complex(std::numeric_limits<double>::infinity(), 0.0) : 1.0 / a);
  }
  return out;
}

std::vector<Complex> boundary_samples(const RationalFunction& f, std::size_t count) {
  if (count == 0 || (count & (count - 1)) != 0) {
    throw std::invalid_argument("boundary_samples: count must be a power of two");
  }
  if (count < 4 * f.degree()) throw std::invalid_argument("boundary_samples: count below 4 * degree");
  std::vector<Complex> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    out[k] = f(unit(kTwoPi * static_cast<double>(k) / static_cast<double>(count)));
  }
  return out;
}

std::size_t hardy_node_count(const RationalFunction& f) {
  const double margin = f.pole_margin();
  const double bandwidth = std::isinf(margin) ? 0.0 : std::ceil(1.0 / (margin - 1.0));
  const double wanted = 64.0 * static_cast<double>(f.degree()) * bandwidth;
  const double capped = std::min(wanted, static_cast<double>(1u << 22));
  std::size_t nodes = std::max<std::size_t>(1024, next_power_of_two(static_cast<std::size_t>(capped)));
  return std::max(nodes, next_power_of_two(4 * f.degree()));
}

double hardy_norm(const RationalFunction& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("hardy_norm: p must lie in [1, inf]");
  const std::size_t count = hardy_node_count(f);
  const auto samples = boundary_samples(f, count);
  if (std::isinf(p)) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < count; ++k) {
      if (std::abs(samples[k]) > std::abs(samples[best])) best = k;
    }
    // Golden-section refinement of |f(e^{i theta})| on the bracketing node interval.
    const double h = kTwoPi / static_cast<double>(count);
    double a = h * (static_cast<double>(best) - 1.0);
    double b = h * (static_cast<double>(best) + 1.0);
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    auto value = [&](double t) { return std::abs(f(unit(t))); };
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = value(x1), f2 = value(x2);
    while (b - a > 1e-13) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + g * (b - a);
        f2 = value(x2);
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - g * (b - a);
        f1 = value(x1);
      }
    }
    return std::max({std::abs(samples[best]), f1, f2});
  }
  double scale = 0.0;
  for (const Complex& s : samples) scale = std::max(scale, std::abs(s));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (const Complex& s : samples) sum += std::pow(std::abs(s) / scale, p);
  return scale * std::pow(sum / static_cast<double>(count), 1.0 / p);
}

TaylorSeries taylor_coefficients(const RationalFunction& f, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("taylor_coefficients: epsilon must be positive");
  TaylorSeries out;
  const auto& inv = f.inverse_poles();
  for (std::size_t i = 0; i < inv.size(); ++i)
    for (std::size_t j = i + 1; j < inv.size(); ++j) {
      if (inv[i] == Complex(0.0) || inv[j] == Complex(0.0)) continue;
      const double gap = std::abs(1.0 / inv[i] - 1.0 / inv[j]);
      if (gap > 0.0 && gap < 1e-8) out.conditioning_warning = true;
    }

  // D(z) f(z) = N(z) gives the recurrence c_k = N_k - sum_{j>=1} d_j c_{k-j}.
  // The tail f - S_K equals z^{K+1} Q(z) / D(z) with deg Q < m, and the Wiener
  // algebra inequality bounds its coefficient sum by ||Q||_W prod 1/(1-|a_i|).
  const auto d = f.denominator();
  const auto& num = f.numerator();
  const std::size_t m = inv.size();
  double inverse_gain = 1.0;
  for (const Complex& a : inv) inverse_gain /= (1.0 - std::abs(a));

  auto& c = out.coefficients;
  auto next_coefficient = [&](std::size_t k) {
    Complex v = k < num.size() ? num[k] : Complex(0.0);
    for (std::size_t j = 1; j <= std::min(k, m); ++j) v -= d[j] * c[k - j];
    return v;
  };
  auto tail_bound = [&](std::size_t K) {
    double q_sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      Complex q = (K + 1 + j) < num.size() ? num[K + 1 + j] : Complex(0.0);
      for (std::size_t i = j + 1; i <= m; ++i) q -= d[i] * c[K + 1 + j - i];
      q_sum += std::abs(q);
    }
    return q_sum * inverse_gain;
  };

  constexpr std::size_t kMaxTerms = 20'000'000;
  for (std::size_t k = 0; k < m; ++k) c.push_back(next_coefficient(k));
  for (;;) {
    const std::size_t K = c.size() - 1;
    const double bound = tail_bound(K);
    if (bound <= epsilon) {
      out.tail_bound = bound;
      return out;
    }
    if (c.size() >= kMaxTerms) throw NonConvergence("taylor_coefficients: tail did not certify");
    c.push_back(next_coefficient(c.size()));
  }
}

double wiener_norm(const RationalFunction& f) {
  const TaylorSeries series = taylor_coefficients(f, 1e-12);
  double sum = 0.0;
  for (const Complex& c : series.coefficients) sum += std::abs(c);
  return sum + series.tail_bound;
}

BoundRecord hardy_inequality_check(const RationalFunction& f) {
  const double lhs = wiener_norm(f);
  const double rhs = std::numbers::pi * hardy_norm(f.derivative(), 1.0) + std::abs(f(Complex(0.0)));
  return BoundRecord::make("hardy_w", lhs, rhs, 1e-8, {{"n", static_cast<double>(f.degree())}});
}

nlohmann::json rational_to_json(const RationalFunction& f) {
  nlohmann::json poles = nlohmann::json::array();
  for (const Complex& a : f.inverse_poles()) {
    poles.push_back(a == Complex(0.0) ? nlohmann::json(nullptr) : complex_to_json(1.0 / a));
  }
  nlohmann::json num = nlohmann::json::array();
  for (const Complex& c : f.numerator()) num.push_back(complex_to_json(c));
  return {{"poles", std::move(poles)}, {"numerator", std::move(num)}};
}

RationalFunction rational_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("poles") || !doc["poles"].is_array()) {
    throw ParseError("poles", "expected an array");
  }
  if (!doc.contains("numerator") || !doc["numerator"].is_array()) {
    throw ParseError("numerator", "expected an array");
  }
  std::vector<Complex> poles;
  for (std::size_t i = 0; i < doc["poles"].size(); ++i) {
    const auto& p = doc["poles"][i];
    if (p.is_null()) {
      poles.emplace_back(std::numeric_limits<double>::infinity(), 0.0);
    } else {
      poles.push_back(complex_from_json(p, "poles[" + std::to_string(i) + "]"));
    }
  }
  std::vector<Complex> num;
  for (std::size_t i = 0; i < doc["numerator"].size(); ++i) {
    num.push_back(complex_from_json(doc["numerator"][i], "numerator[" + std::to_string(i) + "]"));
  }
  try {
    return RationalFunction::from_poles(poles, std::move(num));
  } catch (const std::invalid_argument& e) {
    throw ParseError("poles", e.what());
  }
}

}  // namespace kreiss
