#include "rabisig/mathkit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace rabisig::mathkit {

namespace {

void check_bessel_domain(int n, double x) {
  if (n < 0 || n > 4) throw std::domain_error("bessel_j: order " + std::to_string(n) + " outside [0, 4]");
  if (!(std::abs(x) <= 10.0)) throw std::domain_error("bessel_j: |x| must not exceed 10");
}

}  // namespace

double bessel_j(int n, double x) {
  check_bessel_domain(n, x);
  const long double half = 0.5L * x;
  const long double q = -half * half;
  long double term = 1.0L;
  for (int i = 1; i <= n; ++i) term *= half / i;
  long double sum = term;
  for (int k = 1; k < 80; ++k) {
    term *= q / (static_cast<long double>(k) * (k + n));
    sum += term;
    if (k > std::abs(x) && std::abs(term) <= 1e-21L * std::max(std::abs(sum), 1e-300L)) break;
  }
  return static_cast<double>(sum);
}

double bessel_j1_prime(double x) { return 0.5 * (bessel_j(0, x) - bessel_j(2, x)); }

double bessel_j1_second(double x) { return 0.25 * (bessel_j(3, x) - 3.0 * bessel_j(1, x)); }

J1Derivs bessel_j1_all(double x) {
  check_bessel_domain(1, x);
  // J_1(x) = sum_k c_k (x/2)^(2k+1), c_k = (-1)^k / (k! (k+1)!)
  const long double half = 0.5L * x;
  const long double h2 = half * half;
  long double c = 1.0L;
  long double pow_even = 1.0L;  // (x/2)^(2k)
  long double pow_prev = 0.0L;  // (x/2)^(2k-2), zero for k = 0
  long double j1 = 0.0L;
  long double j1p = 0.0L;
  long double j1pp = 0.0L;
  for (int k = 0; k < 80; ++k) {
    const long double t1 = c * pow_even * half;
    j1 += t1;
    j1p += c * pow_even * (2 * k + 1) * 0.5L;
    if (k > 0) j1pp += c * pow_prev * half * (2 * k + 1) * (2 * k) * 0.25L;
    if (k > std::abs(x) && std::abs(t1) <= 1e-21L * std::max(std::abs(j1), 1e-300L) &&
        std::abs(c * pow_even) <= 1e-21L)
      break;
    c *= -1.0L / (static_cast<long double>(k + 1) * (k + 2));
    pow_prev = pow_even;
    pow_even *= h2;
  }
  return {static_cast<double>(j1), static_cast<double>(j1p), static_cast<double>(j1pp)};
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (rhs.n_ != n_) throw std::invalid_argument("Matrix: size mismatch");
  Matrix r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < n_; ++k) {
      const double a = (*this)(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < n_; ++j) r(i, j) += a * rhs(k, j);
    }
  return r;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  if (rhs.n_ != n_) throw std::invalid_argument("Matrix: size mismatch");
  Matrix r(n_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - rhs.a_[i];
  return r;
}

double Matrix::frobenius_norm() const {
  return std::sqrt(std::inner_product(a_.begin(), a_.end(), a_.begin(), 0.0));
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

EigenResult eigh_symmetric(const Matrix& m) {
  const std::size_t n = m.size();
  if (n == 0 || n > 16) throw std::invalid_argument("eigh_symmetric: dimension must be in [1, 16]");
  const double scale = m.max_abs();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(m(i, j) - m(j, i)) > 1e-12 * scale)
        throw std::invalid_argument("eigh_symmetric: matrix is not symmetric");

  Matrix a = m;
  Matrix v = Matrix::identity(n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off == 0.0 || std::sqrt(off) <= 1e-17 * scale) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // rotation angle zeroing a(p,q), stable form (Golub & Van Loan 8.5)
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  EigenResult r{std::vector<double>(n), Matrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    r.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) r.vectors(i, k) = v(i, order[k]);
  }
  return r;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fft_inplace(std::vector<std::complex<double>>& data) {
  const std::size_t n = data.size();
  if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft_inplace: length must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        // twiddle computed directly, avoids drift from repeated multiplication
        const std::complex<double> w = std::polar(1.0, ang * static_cast<double>(k));
        const auto u = data[i + k];
        const auto t = w * data[i + k + len / 2];
        data[i + k] = u + t;
        data[i + k + len / 2] = u - t;
      }
    }
  }
}

Spectrum dft(std::span<const double> samples, double dt, std::size_t min_length) {
  if (samples.size() < 8) throw std::invalid_argument("dft: at least 8 samples required");
  if (!(dt > 0.0)) throw std::invalid_argument("dft: dt must be positive");
  const std::size_t n = samples.size();
  const std::size_t m = next_pow2(std::max(n, min_length));
  std::vector<std::complex<double>> buf(m);
  for (std::size_t i = 0; i < n; ++i) buf[i] = samples[i];
  fft_inplace(buf);

  Spectrum s;
  s.sample_count = n;
  s.fft_length = m;
  s.df = 1.0 / (static_cast<double>(m) * dt);
  const std::size_t half = m / 2;
  s.frequencies.resize(half + 1);
  s.amplitudes.resize(half + 1);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k <= half; ++k) {
    s.frequencies[k] = static_cast<double>(k) * s.df;
    const double mag = std::abs(buf[k]) * inv_n;
    s.amplitudes[k] = (k == 0 || k == half) ? mag : 2.0 * mag;
  }
  return s;
}

}  // namespace rabisig::mathkit
