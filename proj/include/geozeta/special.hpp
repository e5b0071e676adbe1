#pragma once

// Scalar special functions on complex arguments: Riemann zeta (Euler-Maclaurin), Gamma
// (shifted Stirling series), and the Hecke archimedean factor c(s).

#include "geozeta/quadrature.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace geozeta {

using Complex = std::complex<double>;

namespace detail {

// B_2, B_4, ..., B_20.
inline constexpr std::array<double, 10> kBernoulliEven = {
    1.0 / 6,         -1.0 / 30,      1.0 / 42,  -1.0 / 30,        5.0 / 66,
    -691.0 / 2730,   7.0 / 6,        -3617.0 / 510, 43867.0 / 798, -174611.0 / 330};

}  // namespace detail

/// Euler-Maclaurin with N = 50 and 8 Bernoulli corrections.
inline Complex riemann_zeta(Complex s) {
  if (s == Complex(1.0, 0.0)) throw std::domain_error("riemann_zeta: pole at s = 1");
  constexpr int n = 50;
  Complex sum = 0;
  for (int k = 1; k < n; ++k) sum += std::exp(-s * std::log(static_cast<double>(k)));
  const double logn = std::log(static_cast<double>(n));
  const Complex n_pow = std::exp(-s * logn);  // N^{-s}
  sum += n_pow * static_cast<double>(n) / (s - 1.0) + 0.5 * n_pow;
  // sum_k B_2k/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
  Complex rising = s;  // s(s+1)...(s+2k-2)
  Complex npow = n_pow / static_cast<double>(n);
  double fact = 2;  // (2k)!
  for (int k = 1; k <= 8; ++k) {
    sum += detail::kBernoulliEven[static_cast<std::size_t>(k - 1)] / fact * rising * npow;
    rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
    npow /= static_cast<double>(n) * n;
    fact *= static_cast<double>(2 * k + 1) * (2 * k + 2);
  }
  return sum;
}

inline double riemann_zeta(double s) { return riemann_zeta(Complex(s, 0.0)).real(); }

/// log Gamma for Re z >= 0.5 via upward shift and Stirling's series.
inline Complex log_gamma(Complex z) {
  if (z.real() < 0.5)
    throw std::domain_error("log_gamma: use gamma_fn (reflection) for Re z < 0.5");
  Complex shift_log = 0;
  while (z.real() < 15.0) {
    shift_log += std::log(z);
    z += 1.0;
  }
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex series = 0;
  Complex pw = inv;
  for (int k = 1; k <= 10; ++k) {
    series += detail::kBernoulliEven[static_cast<std::size_t>(k - 1)] /
              (2.0 * k * (2.0 * k - 1.0)) * pw;
    pw *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2 * std::numbers::pi) + series - shift_log;
}

inline Complex gamma_fn(Complex s) {
  if (s.imag() == 0.0 && s.real() <= 0.0 && std::floor(s.real()) == s.real())
    throw std::domain_error("gamma_fn: pole at a nonpositive integer");
  if (s.real() < 0.5) {
    // Reflection: Gamma(s) Gamma(1-s) = pi / sin(pi s).
    return std::numbers::pi / (std::sin(std::numbers::pi * s) * std::exp(log_gamma(1.0 - s)));
  }
  return std::exp(log_gamma(s));
}

enum class CMethod { quadrature, gamma };

/// c(s) = integral over R of (e^t + e^{-t})^{-s} dt, Re s > 0.
inline Complex c_of_s(Complex s, CMethod method = CMethod::gamma) {
  if (!(s.real() > 0)) throw std::domain_error("c_of_s requires Re s > 0");
  if (method == CMethod::gamma) {
    const Complex g = gamma_fn(0.5 * s);
    return g * g / (2.0 * gamma_fn(s));
  }
  // Even integrand; integrate [0, 40] and add the tail, whose integrand is e^{-st}(1+e^{-2t})^{-s}.
  constexpr double cut = 40.0;
  const auto f = [s](double t) {
    return std::exp(-s * (t + std::log1p(std::exp(-2 * t))));
  };
  QuadratureParams qp;
  qp.nodes = 32;
  qp.panels = 8;
  qp.relTol = 1e-14;
  qp.absTol = 1e-16;
  const Complex body = integrate(f, 0.0, cut, qp).value;
  const Complex tail = std::exp(-s * cut) / s;  // (1+e^{-80})^{-s} = 1 to double precision
  return 2.0 * (body + tail);
}

}  // namespace geozeta
