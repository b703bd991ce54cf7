#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace kreiss {

using Complex = std::complex<double>;

/// Vector norm on C^n whose induced operator norm is used throughout.
enum class NormKind { l1, l2, linf };

std::string_view to_string(NormKind kind);
/// Accepts "l1", "l2", "linf"; throws std::invalid_argument otherwise.
NormKind parse_norm_kind(std::string_view text);

/// Dense square complex matrix, row-major.
class ComplexMatrix {
 public:
  /// Zero matrix of dimension n >= 1.
  explicit ComplexMatrix(std::size_t n);
  /// Takes ownership of n*n row-major entries; rejects ragged or non-finite data.
  ComplexMatrix(std::size_t n, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> values);

  std::size_t size() const noexcept { return n_; }

  Complex& operator()(std::size_t i, std::size_t j) noexcept { return entries_[i * n_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const noexcept {
    return entries_[i * n_ + j];
  }

  std::span<const Complex> entries() const noexcept { return entries_; }
  std::span<Complex> entries() noexcept { return entries_; }

  ComplexMatrix adjoint() const;
  bool all_finite() const noexcept;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale) noexcept;

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<Complex> entries_;
};

/// y = M x
std::vector<Complex> multiply(const ComplexMatrix& m, std::span<const Complex> x);
/// y = M^H x
std::vector<Complex> multiply_adjoint(const ComplexMatrix& m, std::span<const Complex> x);

/// Eigenvalue multiset with its spectral radius.
struct Spectrum {
  std::vector<Complex> eigenvalues;
  double spectral_radius = 0.0;

  static Spectrum from_eigenvalues(std::vector<Complex> values);
  /// min_i |z - lambda_i|
  double distance(Complex z) const;
};

/// Induced operator norm. l1/linf are exact column/row sums; l2 is the largest singular value.
double operator_norm(const ComplexMatrix& m, NormKind kind);

/// Singular values in decreasing order (one-sided Jacobi).
std::vector<double> singular_values(const ComplexMatrix& m);

double frobenius_norm(const ComplexMatrix& m) noexcept;

/// Householder reduction to Hessenberg form followed by Wilkinson-shifted complex QR.
/// Throws NonConvergence after 100*n iterations. n is limited to 512.
Spectrum spectrum(const ComplexMatrix& m);

struct PowerNorms {
  std::vector<double> norms;  // ||M^0||, ..., ||M^k_max||
  bool overflow = false;      // some norm exceeded 1e300
};

/// ||M^k|| for k = 0..k_max, rescaling the running power to stay in range.
PowerNorms matrix_power_norms(const ComplexMatrix& m, NormKind kind, std::size_t k_max);

/// Streaming version of matrix_power_norms: next() returns ||M^k|| for k = 0, 1, ...
/// For l2, next_upper() returns the cheap Frobenius bound instead of the exact norm.
class PowerSequence {
 public:
  PowerSequence(const ComplexMatrix& m, NormKind kind);
  /// Advances to the next power; returns its exponent.
  std::size_t advance();
  /// Exact norm of the current power.
  double norm() const;
  /// Upper bound of the current power's norm (exact for l1/linf, Frobenius for l2).
  double norm_upper_bound() const;
  std::size_t exponent() const noexcept { return k_; }

 private:
  const ComplexMatrix& base_;
  NormKind kind_;
  ComplexMatrix power_;
  double log_scale_ = 0.0;
  std::size_t k_ = 0;
};

/// LU factorization with partial pivoting of a square matrix.
class LuFactorization {
 public:
  explicit LuFactorization(ComplexMatrix a);

  /// Smallest pivot modulus encountered.
  double min_pivot() const noexcept { return min_pivot_; }
  void solve_in_place(std::span<Complex> rhs) const;
  /// Solves A^H x = rhs.
  void solve_adjoint_in_place(std::span<Complex> rhs) const;
  /// A^{-1} X, column by column.
  ComplexMatrix solve(const ComplexMatrix& rhs) const;

 private:
  ComplexMatrix lu_;
  std::vector<std::size_t> pivots_;
  double min_pivot_;
};

/// (lambda I - M)^{-l}. Throws SingularResolvent if a pivot falls below 1e-14 * ||M||.
ComplexMatrix resolvent_power(const ComplexMatrix& m, Complex lambda, int l);

/// f(N_n) for the nilpotent shift N_n: upper triangular Toeplitz with taylor[j] on superdiagonal j.
ComplexMatrix analytic_of_nilpotent(std::span<const Complex> taylor);

}  // namespace kreiss
