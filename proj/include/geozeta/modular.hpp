#pragma once

// Reduction of points to the standard fundamental domain of PSL(2,Z), the Ramanujan tau
// coefficients, and evaluation of level-one cusp forms from their q-expansions.

#include "geozeta/bigint.hpp"
#include "geozeta/matrix.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace geozeta {

struct ReducedPoint {
  std::complex<double> z;  // h applied to the input point
  UnimodularMatrix h;
};

/// Moves z into |Re z| <= 1/2, |z| >= 1 by translations and the inversion z -> -1/z.
inline ReducedPoint reduce_point(std::complex<double> z) {
  if (!(z.imag() > 0)) throw std::domain_error("reduce_point: point must lie in the upper half-plane");
  std::int64_t a = 1, b = 0, c = 0, d = 1;
  for (int iter = 0; iter < 10000; ++iter) {
    const double n = std::round(z.real());
    if (n != 0) {
      if (std::abs(n) > 9e15) throw std::domain_error("reduce_point: real part out of range");
      const auto k = static_cast<std::int64_t>(n);
      z -= n;
      a -= k * c;
      b -= k * d;
    }
    if (std::norm(z) >= 1.0) return {z, UnimodularMatrix(a, b, c, d)};
    z = -1.0 / z;
    std::int64_t na = -c, nb = -d;
    c = a;
    d = b;
    a = na;
    b = nb;
  }
  throw std::domain_error("reduce_point: no convergence (point too close to the real axis)");
}

/// tau(1), ..., tau(n) from q * prod (1 - q^m)^24, computed as the eighth power of the
/// sparse series prod (1 - q^m)^3 = sum_k (-1)^k (2k + 1) q^{k(k+1)/2}.
inline std::vector<BigInt> delta_coefficients(std::size_t n) {
  if (n > 10000) throw std::invalid_argument("delta_coefficients: n must be at most 10^4");
  if (n == 0) return {};
  const std::size_t len = n;  // coefficients of q^0 .. q^{n-1} of the product
  std::vector<std::pair<std::size_t, std::int64_t>> cube;
  for (std::int64_t k = 0;; ++k) {
    const auto e = static_cast<std::size_t>(k * (k + 1) / 2);
    if (e >= len) break;
    cube.emplace_back(e, (k % 2 == 0 ? 1 : -1) * (2 * k + 1));
  }
  std::vector<BigInt> acc(len, BigInt(0));
  acc[0] = 1;
  for (int round = 0; round < 8; ++round) {
    std::vector<BigInt> next(len, BigInt(0));
    for (std::size_t i = 0; i < len; ++i) {
      if (acc[i] == 0) continue;
      for (const auto& [e, coef] : cube) {
        if (i + e >= len) break;
        next[i + e] += acc[i] * coef;
      }
    }
    acc = std::move(next);
  }
  return acc;  // acc[j] = tau(j + 1)
}

/// f(z) = sum_{n >= 1} a_n q^n for a cusp form of weight 2k, evaluated at the reduced point and
/// carried back by f(z) = f(hz) (cz + d)^{-2k}.
inline std::complex<double> cusp_form_value(const std::vector<double>& coeffs, int weight,
                                            std::complex<double> z) {
  const ReducedPoint rp = reduce_point(z);
  const std::complex<double> q =
      std::exp(std::complex<double>(0.0, 2 * std::numbers::pi) * rp.z);
  const double aq = std::abs(q);
  std::complex<double> sum = 0;
  std::complex<double> qn = q;
  double qn_abs = aq;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const std::complex<double> term = coeffs[i] * qn;
    sum += term;
    // Stop once the terms are negligible; coefficients grow polynomially while |q| <= e^{-pi sqrt 3}.
    if (qn_abs * (std::abs(coeffs[i]) + 1.0) * std::pow(static_cast<double>(i + 2), 6.0) <
        1e-18 * std::abs(sum))
      break;
    qn *= q;
    qn_abs *= aq;
  }
  const std::complex<double> j = to_double(rp.h.c()) * z + to_double(rp.h.d());
  return sum * std::pow(j, -weight);
}

}  // namespace geozeta
