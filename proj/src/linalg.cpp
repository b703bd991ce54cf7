#include "kreiss/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "kreiss/error.hpp"

namespace kreiss {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

double vector_norm2(std::span<const Complex> v) {
  double scale = 0.0;
  for (const Complex& x : v) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (const Complex& x : v) sum += std::norm(x / scale);
  return scale * std::sqrt(sum);
}

// Largest singular value of a 2x2 matrix from the eigenvalues of its Gram matrix.
double norm2_2x2(const ComplexMatrix& m) {
  const Complex a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  const double g11 = std::norm(a) + std::norm(c);
  const double g22 = std::norm(b) + std::norm(d);
  const Complex g12 = std::conj(a) * b + std::conj(c) * d;
  const double half_diff = 0.5 * (g11 - g22);
  const double top = 0.5 * (g11 + g22) + std::hypot(half_diff, std::abs(g12));
  return std::sqrt(std::max(top, 0.0));
}

double norm2_power_iteration(const ComplexMatrix& m) {
  const std::size_t n = m.size();
  std::mt19937_64 rng(0x6b72656973735ULL);
  std::normal_distribution<double> gauss;
  double best = 0.0;
  for (int start = 0; start < 4; ++start) {
    std::vector<Complex> x(n, Complex(1.0, 0.0));
    if (start > 0) {
      for (auto& v : x) v = Complex(gauss(rng), gauss(rng));
    }
    double estimate = 0.0;
    for (int it = 0; it < 5000; ++it) {
      const double nx = vector_norm2(x);
      if (nx == 0.0) break;
      for (auto& v : x) v /= nx;
      const auto y = multiply(m, x);
      const double value = vector_norm2(y);
      x = multiply_adjoint(m, y);
      if (std::abs(value - estimate) <= 1e-15 * value) {
        estimate = value;
        break;
      }
      estimate = value;
    }
    best = std::max(best, estimate);
  }
  return best;
}

// Complex Givens rotation G = [c s; -conj(s) c] with G [a; b] = [r; 0].
struct Givens {
  double c;
  Complex s;
};

Givens make_givens(Complex a, Complex b) {
  const double abs_b = std::abs(b);
  if (abs_b == 0.0) return {1.0, Complex(0.0)};
  const double abs_a = std::abs(a);
  if (abs_a == 0.0) return {0.0, std::conj(b) / abs_b};
  const double norm = std::hypot(abs_a, abs_b);
  const Complex phase = a / abs_a;
  return {abs_a / norm, phase * std::conj(b) / norm};
}

void reduce_to_hessenberg(ComplexMatrix& h) {
  const std::size_t n = h.size();
  if (n < 3) return;
  std::vector<Complex> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t len = n - k - 1;
    double xnorm = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
      v[i] = h(k + 1 + i, k);
    }
    xnorm = vector_norm2(std::span<const Complex>(v.data(), len));
    if (xnorm == 0.0) continue;
    const double tail = vector_norm2(std::span<const Complex>(v.data() + 1, len - 1));
    if (tail == 0.0) continue;
    const Complex x0 = v[0];
    const Complex phase = std::abs(x0) == 0.0 ? Complex(1.0) : x0 / std::abs(x0);
    const Complex alpha = -phase * xnorm;
    v[0] -= alpha;
    const double vnorm = vector_norm2(std::span<const Complex>(v.data(), len));
    for (std::size_t i = 0; i < len; ++i) v[i] /= vnorm;

    // H <- (I - 2 v v^H) H
    for (std::size_t j = k; j < n; ++j) {
      Complex s(0.0);
      for (std::size_t i = 0; i < len; ++i) s += std::conj(v[i]) * h(k + 1 + i, j);
      s *= 2.0;
      for (std::size_t i = 0; i < len; ++i) h(k + 1 + i, j) -= v[i] * s;
    }
    // H <- H (I - 2 v v^H)
    for (std::size_t i = 0; i < n; ++i) {
      Complex s(0.0);
      for (std::size_t j = 0; j < len; ++j) s += h(i, k + 1 + j) * v[j];
      s *= 2.0;
      for (std::size_t j = 0; j < len; ++j) h(i, k + 1 + j) -= s * std::conj(v[j]);
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = Complex(0.0);
  }
}

Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
  const Complex half_trace = 0.5 * (a + d);
  const Complex disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
  const Complex mu1 = half_trace + disc;
  const Complex mu2 = half_trace - disc;
  return std::abs(mu1 - d) <= std::abs(mu2 - d) ? mu1 : mu2;
}

}  // namespace

std::string_view to_string(NormKind kind) {
  switch (kind) {
    case NormKind::l1:
      return "l1";
    case NormKind::l2:
      return "l2";
    case NormKind::linf:
      return "linf";
  }
  return "l2";
}

NormKind parse_norm_kind(std::string_view text) {
  if (text == "l1") return NormKind::l1;
  if (text == "l2") return NormKind::l2;
  if (text == "linf") return NormKind::linf;
  throw std::invalid_argument("unknown norm kind '" + std::string(text) + "'");
}

ComplexMatrix::ComplexMatrix(std::size_t n) : n_(n), entries_(n * n) {
  require(n >= 1, "matrix dimension must be at least 1");
}

ComplexMatrix::ComplexMatrix(std::size_t n, std::vector<Complex> entries)
    : n_(n), entries_(std::move(entries)) {
  require(n >= 1, "matrix dimension must be at least 1");
  require(entries_.size() == n * n, "matrix entry count does not match dimension");
  require(all_finite(), "matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require(other.n_ == n_, "dimension mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require(other.n_ == n_, "dimension mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) noexcept {
  for (auto& z : entries_) z *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.n_ == b.n_, "dimension mismatch");
  const std::size_t n = a.n_;
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex* row = &c.entries_[i * n];
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a.entries_[i * n + k];
      if (aik == Complex(0.0)) continue;
      const Complex* brow = &b.entries_[k * n];
      for (std::size_t j = 0; j < n; ++j) row[j] += aik * brow[j];
    }
  }
  return c;
}

std::vector<Complex> multiply(const ComplexMatrix& m, std::span<const Complex> x) {
  const std::size_t n = m.size();
  std::vector<Complex> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex s(0.0);
    for (std::size_t j = 0; j < n; ++j) s += m(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

std::vector<Complex> multiply_adjoint(const ComplexMatrix& m, std::span<const Complex> x) {
  const std::size_t n = m.size();
  std::vector<Complex> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex xi = x[i];
    for (std::size_t j = 0; j < n; ++j) y[j] += std::conj(m(i, j)) * xi;
  }
  return y;
}

Spectrum Spectrum::from_eigenvalues(std::vector<Complex> values) {
  Spectrum s;
  s.eigenvalues = std::move(values);
  for (const Complex& z : s.eigenvalues) s.spectral_radius = std::max(s.spectral_radius, std::abs(z));
  return s;
}

double Spectrum::distance(Complex z) const {
  double d = std::numeric_limits<double>::infinity();
  for (const Complex& e : eigenvalues) d = std::min(d, std::abs(z - e));
  return d;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  const std::size_t n = m.size();
  // Columns stored contiguously.
  std::vector<Complex> cols(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cols[j * n + i] = m(i, j);

  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      Complex* ap = &cols[p * n];
      for (std::size_t q = p + 1; q < n; ++q) {
        Complex* aq = &cols[q * n];
        double alpha = 0.0, beta = 0.0;
        Complex gamma(0.0);
        for (std::size_t i = 0; i < n; ++i) {
          alpha += std::norm(ap[i]);
          beta += std::norm(aq[i]);
          gamma += std::conj(ap[i]) * aq[i];
        }
        const double g = std::abs(gamma);
        if (alpha == 0.0 || beta == 0.0 || g <= 4.0 * kEps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Complex phase = gamma / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = c * t;
        for (std::size_t i = 0; i < n; ++i) {
          const Complex x = ap[i];
          const Complex y = std::conj(phase) * aq[i];
          ap[i] = c * x - s * y;
          aq[i] = s * x + c * y;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) sv[j] = vector_norm2(std::span<const Complex>(&cols[j * n], n));
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

double frobenius_norm(const ComplexMatrix& m) noexcept { return vector_norm2(m.entries()); }

double operator_norm(const ComplexMatrix& m, NormKind kind) {
  const std::size_t n = m.size();
  switch (kind) {
    case NormKind::l1: {
      double best = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += std::abs(m(i, j));
        best = std::max(best, s);
      }
      return best;
    }
    case NormKind::linf: {
      double best = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += std::abs(m(i, j));
        best = std::max(best, s);
      }
      return best;
    }
    case NormKind::l2:
      if (n == 1) return std::abs(m(0, 0));
      if (n == 2) return norm2_2x2(m);
      if (n <= 64) return singular_values(m).front();
      return norm2_power_iteration(m);
  }
  return 0.0;
}

Spectrum spectrum(const ComplexMatrix& m) {
  const std::size_t n = m.size();
  if (n > 512) throw std::invalid_argument("spectrum: dimension above 512 is not supported");
  ComplexMatrix h = m;
  reduce_to_hessenberg(h);
  const double hnorm = frobenius_norm(h);

  std::vector<Complex> eig(n);
  std::size_t hi = n - 1;
  std::size_t total_iterations = 0;
  std::size_t since_deflation = 0;
  const std::size_t max_iterations = 100 * n;

  for (;;) {
    if (hi == 0) {
      eig[0] = h(0, 0);
      break;
    }
    std::size_t lo = hi;
    while (lo > 0) {
      const double scale = std::abs(h(lo, lo)) + std::abs(h(lo - 1, lo - 1));
      const double threshold = scale > 0.0 ? kEps * scale : kEps * hnorm;
      if (std::abs(h(lo, lo - 1)) <= threshold) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      eig[hi] = h(hi, hi);
      --hi;
      since_deflation = 0;
      continue;
    }
    if (++total_iterations > max_iterations) {
      throw NonConvergence("spectrum: QR iteration did not converge within 100*n steps");
    }
    ++since_deflation;

    Complex mu;
    if (since_deflation % 10 == 0) {
      // Exceptional shift breaks cycles.
      double kick = std::abs(h(hi, hi - 1));
      if (hi >= 2 && hi - 1 > lo) kick += std::abs(h(hi - 1, hi - 2));
      mu = h(hi, hi) + Complex(0.75 * kick, 0.0);
    } else {
      mu = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
    }

    for (std::size_t i = lo; i <= hi; ++i) h(i, i) -= mu;
    std::vector<Givens> rotations;
    rotations.reserve(hi - lo);
    for (std::size_t k = lo; k < hi; ++k) {
      const Givens g = make_givens(h(k, k), h(k + 1, k));
      rotations.push_back(g);
      for (std::size_t j = k; j <= hi; ++j) {
        const Complex a = h(k, j), b = h(k + 1, j);
        h(k, j) = g.c * a + g.s * b;
        h(k + 1, j) = -std::conj(g.s) * a + g.c * b;
      }
      h(k + 1, k) = 0.0;
    }
    for (std::size_t k = lo; k < hi; ++k) {
      const Givens& g = rotations[k - lo];
      for (std::size_t i = lo; i <= std::min(k + 1, hi); ++i) {
        const Complex a = h(i, k), b = h(i, k + 1);
        h(i, k) = a * g.c + b * std::conj(g.s);
        h(i, k + 1) = -a * g.s + b * g.c;
      }
    }
    for (std::size_t i = lo; i <= hi; ++i) h(i, i) += mu;
  }
  return Spectrum::from_eigenvalues(std::move(eig));
}

PowerSequence::PowerSequence(const ComplexMatrix& m, NormKind kind)
    : base_(m), kind_(kind), power_(ComplexMatrix::identity(m.size())) {}

std::size_t PowerSequence::advance() {
  power_ = power_ * base_;
  ++k_;
  const double f = frobenius_norm(power_);
  if (f > 1e100 || (f < 1e-100 && f > 0.0)) {
    power_ *= Complex(1.0 / f);
    log_scale_ += std::log(f);
  }
  return k_;
}

double PowerSequence::norm() const { return operator_norm(power_, kind_) * std::exp(log_scale_); }

double PowerSequence::norm_upper_bound() const {
  if (kind_ == NormKind::l2) return frobenius_norm(power_) * std::exp(log_scale_);
  return norm();
}

PowerNorms matrix_power_norms(const ComplexMatrix& m, NormKind kind, std::size_t k_max) {
  PowerNorms out;
  out.norms.reserve(k_max + 1);
  PowerSequence seq(m, kind);
  out.norms.push_back(seq.norm());
  for (std::size_t k = 1; k <= k_max; ++k) {
    seq.advance();
    const double value = seq.norm();
    if (!(value <= 1e300)) out.overflow = true;
    out.norms.push_back(value);
  }
  return out;
}

LuFactorization::LuFactorization(ComplexMatrix a)
    : lu_(std::move(a)), pivots_(lu_.size()), min_pivot_(std::numeric_limits<double>::infinity()) {
  const std::size_t n = lu_.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(lu_(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    pivots_[k] = p;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
    }
    min_pivot_ = std::min(min_pivot_, best);
    if (best == 0.0) continue;
    const Complex inv = 1.0 / lu_(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex factor = lu_(i, k) * inv;
      lu_(i, k) = factor;
      if (factor == Complex(0.0)) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= factor * lu_(k, j);
    }
  }
}

void LuFactorization::solve_in_place(std::span<Complex> b) const {
  const std::size_t n = lu_.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (pivots_[k] != k) std::swap(b[k], b[pivots_[k]]);
  }
  for (std::size_t i = 1; i < n; ++i) {
    Complex s = b[i];
    for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * b[j];
    b[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    Complex s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= lu_(i, j) * b[j];
    b[i] = s / lu_(i, i);
  }
}

void LuFactorization::solve_adjoint_in_place(std::span<Complex> b) const {
  const std::size_t n = lu_.size();
  for (std::size_t i = 0; i < n; ++i) {
    Complex s = b[i];
    for (std::size_t j = 0; j < i; ++j) s -= std::conj(lu_(j, i)) * b[j];
    b[i] = s / std::conj(lu_(i, i));
  }
  for (std::size_t i = n; i-- > 0;) {
    Complex s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= std::conj(lu_(j, i)) * b[j];
    b[i] = s;
  }
  for (std::size_t k = n; k-- > 0;) {
    if (pivots_[k] != k) std::swap(b[k], b[pivots_[k]]);
  }
}

ComplexMatrix LuFactorization::solve(const ComplexMatrix& rhs) const {
  const std::size_t n = lu_.size();
  ComplexMatrix out(n);
  std::vector<Complex> col(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = rhs(i, j);
    solve_in_place(col);
    for (std::size_t i = 0; i < n; ++i) out(i, j) = col[i];
  }
  return out;
}

ComplexMatrix resolvent_power(const ComplexMatrix& m, Complex lambda, int l) {
  require(l >= 1, "resolvent power must be at least 1");
  const std::size_t n = m.size();
  ComplexMatrix shifted = m * Complex(-1.0);
  for (std::size_t i = 0; i < n; ++i) shifted(i, i) += lambda;
  const LuFactorization lu(std::move(shifted));
  const double threshold = 1e-14 * operator_norm(m, NormKind::l1);
  if (!(lu.min_pivot() > threshold)) {
    throw SingularResolvent("resolvent_power: lambda is numerically in the spectrum");
  }
  ComplexMatrix result = ComplexMatrix::identity(n);
  for (int k = 0; k < l; ++k) result = lu.solve(result);
  return result;
}

ComplexMatrix analytic_of_nilpotent(std::span<const Complex> taylor) {
  const std::size_t n = taylor.size();
  require(n >= 1, "analytic_of_nilpotent: need at least one coefficient");
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = taylor[j - i];
  return m;
}

}  // namespace kreiss
