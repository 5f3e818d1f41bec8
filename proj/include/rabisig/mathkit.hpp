#pragma once

// Small self-contained numerical kernels: Bessel J_n for small orders,
// midpoint stencils, a cyclic Jacobi eigensolver and a radix-2 FFT.

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace rabisig::mathkit {

/// J_n(x) by the ascending series, for 0 <= n <= 4 and |x| <= 10.
/// Summed in extended precision; absolute error below 1e-13 on that range.
double bessel_j(int n, double x);

/// J_1'(x) = (J_0(x) - J_2(x)) / 2
double bessel_j1_prime(double x);

/// J_1''(x) = (J_3(x) - 3 J_1(x)) / 4
double bessel_j1_second(double x);

/// J_1, J_1' and J_1'' at one argument, sharing the power-series terms.
struct J1Derivs {
  double j1;
  double j1p;
  double j1pp;
};
J1Derivs bessel_j1_all(double x);

inline double second_derivative_midpoint(double f_prev, double f_curr, double f_next, double dt) {
  return (f_prev - 2.0 * f_curr + f_next) / (dt * dt);
}

template <class T>
T second_derivative_midpoint(const T& f_prev, const T& f_curr, const T& f_next, double dt) {
  return (f_prev - 2.0 * f_curr + f_next) / (dt * dt);
}

template <class T>
T first_derivative_centered(const T& f_prev, const T& f_next, double dt) {
  return (f_next - f_prev) / (2.0 * dt);
}

/// Dense square matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  static Matrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  Matrix transposed() const;
  Matrix operator*(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  double frobenius_norm() const;
  double max_abs() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

struct EigenResult {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k is the eigenvector of values[k]
};

/// Cyclic Jacobi diagonalisation of a real symmetric matrix (n <= 16).
/// Throws std::invalid_argument when the input is not symmetric to 1e-12
/// relative.
EigenResult eigh_symmetric(const Matrix& m);

/// One-sided magnitude spectrum. amplitudes[0] = |X_0|/n,
/// amplitudes[k] = 2|X_k|/n for 0 < k < M/2 and amplitudes[M/2] = |X_{M/2}|/n,
/// where n is the number of input samples and M >= n the padded FFT length.
/// Parseval in this normalisation:
///   sum x^2 = n^2/M * (a_0^2 + a_{M/2}^2 + sum_{0<k<M/2} a_k^2 / 2).
struct Spectrum {
  std::vector<double> frequencies;  // Hz, k / (M dt)
  std::vector<double> amplitudes;
  double df = 0.0;
  std::size_t sample_count = 0;
  std::size_t fft_length = 0;
};

/// In-place radix-2 FFT; data.size() must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& data);

/// Transforms `samples` zero-padded to the next power of two that is at
/// least max(samples.size(), min_length). Requires >= 8 samples.
Spectrum dft(std::span<const double> samples, double dt, std::size_t min_length = 0);

std::size_t next_pow2(std::size_t n);

}  // namespace rabisig::mathkit
