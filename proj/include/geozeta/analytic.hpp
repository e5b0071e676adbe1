#pragma once

// phi(z, Q) = Q(z) / Q'(z), principal-branch powers, the Eisenstein series E(s, z) and its
// holomorphic lift F_Q(s, z) as truncated lattice sums with tail corrections.

#include "geozeta/forms.hpp"
#include "geozeta/modular.hpp"
#include "geozeta/parallel.hpp"
#include "geozeta/quadrature.hpp"
#include "geozeta/special.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <numbers>
#include <stdexcept>
#include <string>

namespace geozeta {

/// Throws unless Re s > 1, the half-plane where every series here converges absolutely.
inline void require_convergent(Complex s, const char* what) {
  if (!(s.real() > 1.0))
    throw std::domain_error(std::string(what) + " requires Re s > 1, got Re s = " +
                            std::to_string(s.real()));
}

namespace detail {

inline double parse_real(const std::string& text, const std::string& whole) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (text.empty() || used != text.size() || !std::isfinite(v))
    throw std::invalid_argument("malformed complex literal \"" + whole + "\"");
  return v;
}

}  // namespace detail

/// Parses "a+bi", "a-bi", "a", or "bi" with decimal or scientific a, b.
inline Complex parse_complex(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty complex literal");
  if (text.back() != 'i') return {detail::parse_real(text, text), 0.0};
  const std::string body = text.substr(0, text.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) {
    if (body.empty() || body == "+" || body == "-")
      return {0.0, body == "-" ? -1.0 : 1.0};
    return {0.0, detail::parse_real(body, text)};
  }
  const std::string re = body.substr(0, split);
  std::string im = body.substr(split);
  if (im == "+" || im == "-") im += "1";
  return {detail::parse_real(re, text), detail::parse_real(im, text)};
}

struct TruncationParams {
  int radius = 100;  // max(|c|, |d|) or max(|m|, |n|)
  double quadTol = 1e-8;  // relative tolerance of the tail-correction integrals
  int maxNodes = 1 << 14;  // panel cap for those integrals
  bool tailCorrection = true;
  bool reduceToFundamentalDomain = true;

  void validate() const {
    if (radius < 4) throw std::invalid_argument("truncation radius must be >= 4");
    if (!(quadTol > 0 && quadTol <= 1e-2))
      throw std::invalid_argument("quadTol must lie in (0, 1e-2]");
    if (maxNodes < 1) throw std::invalid_argument("maxNodes must be positive");
  }

  TruncationParams with_radius(int r) const {
    TruncationParams t = *this;
    t.radius = r;
    return t;
  }
};

struct PartialSum {
  Complex value;
  double errorBound = 0;
  long termsUsed = 0;
  Complex tailCorrection;  // already included in value
};

/// w^s = exp(s (log|w| + i Arg w)), Arg in (-pi, pi).
inline Complex principal_power(Complex w, Complex s) {
  if (w.imag() == 0.0 && w.real() <= 0.0)
    throw std::domain_error("principal_power: argument lies on the branch cut (-inf, 0]");
  return std::exp(s * std::log(w));
}

inline Complex phi(const RealForm& q, Complex z) {
  const Complex deriv = 2.0 * q.A * z + q.B;
  if (std::abs(deriv) <= 1e-14 * (std::abs(2.0 * q.A * z) + std::abs(q.B)))
    throw std::domain_error("phi: evaluation at a ramification point");
  return ((q.A * z + q.B) * z + q.C) / deriv;
}

inline Complex phi(const Form& q, Complex z) { return phi(RealForm::from(q), z); }

/// N_Q z = (-B z - 2C) / (2A z + B); maps the upper half-plane to the lower one.
inline Complex companion_image(const RealForm& q, Complex z) {
  return (-q.B * z - 2.0 * q.C) / (2.0 * q.A * z + q.B);
}

namespace detail {

/// phi(gz, gQ) for any g with bottom row (c, d), from 2 phi = z - N_Q z and N_{gQ} = g N_Q g^{-1}.
inline Complex coset_base(Complex phi_z, Complex z, Complex w, double c, double d) {
  return phi_z / ((c * z + d) * (c * w + d));
}

struct Acc {
  Complex value;
  long terms = 0;
  Acc& operator+=(const Acc& o) {
    value += o.value;
    terms += o.terms;
    return *this;
  }
};

/// Sum of f(p) over the boundary of the unit square, two sides: f(1, n) and f(m, 1) on [-1, 1].
template <class F>
Complex boundary_integral(const F& f, const TruncationParams& tp) {
  QuadratureParams qp;
  qp.nodes = 16;
  qp.panels = 2;
  qp.relTol = tp.quadTol;
  qp.absTol = 1e-300;
  qp.maxPanels = tp.maxNodes;
  const Complex side1 = integrate([&](double n) { return f(1.0, n); }, -1.0, 1.0, qp).value;
  const Complex side2 = integrate([&](double m) { return f(m, 1.0); }, -1.0, 1.0, qp).value;
  return side1 + side2;
}

/// Integral of a function homogeneous of degree -2s over the complement of the square
/// max(|m|, |n|) <= a: a^{2-2s} / (s - 1) times the two-side boundary integral.
template <class F>
Complex outer_integral(const F& f, Complex s, double a, const TruncationParams& tp) {
  return std::exp((2.0 - 2.0 * s) * std::log(a)) / (s - 1.0) * boundary_integral(f, tp);
}

/// Error bound for the sum over max(|m|,|n|) > R of a function bounded by M max^{-2 sigma}.
/// Without correction this is the integral comparison 8 M R^{2-2 sigma} / (2 sigma - 2); with
/// correction it is the next-order term 8 M (R + 1/2)^{1-2 sigma} (1 + log R).
inline double tail_bound(double m, double sigma, int radius, bool corrected) {
  const double r = radius;
  if (!corrected) return 8.0 * m * std::pow(r, 2.0 - 2.0 * sigma) / (2.0 * sigma - 2.0);
  return 8.0 * m * std::pow(r + 0.5, 1.0 - 2.0 * sigma) * (1.0 + std::log(r));
}

/// Lower bound y^2 / (1 + |z|^2) for |cz + d|^2 / max(|c|, |d|)^2.
inline double row_norm_floor(Complex z) { return z.imag() * z.imag() / (1.0 + std::norm(z)); }

inline constexpr double kCoprimeDensity = 6.0 / (std::numbers::pi * std::numbers::pi);

}  // namespace detail

/// (phi(z, Q) / ((cz + d)(c N_Q z + d)))^s = phi(gz, gQ)^s for g with bottom row (c, d).
inline Complex coset_term(const RealForm& q, Complex z, std::int64_t c, std::int64_t d, Complex s) {
  if (std::gcd(c, d) != 1) throw std::invalid_argument("coset_term: (c, d) must be coprime");
  const Complex base = detail::coset_base(phi(q, z), z, companion_image(q, z),
                                          static_cast<double>(c), static_cast<double>(d));
  return principal_power(base, s);
}

inline Complex coset_term(const Form& q, Complex z, std::int64_t c, std::int64_t d, Complex s) {
  return coset_term(RealForm::from(q), z, c, d, s);
}

enum class EisensteinMode { lattice, coprime };

/// E(s, z) = sum over (m, n) != 0 of (Im z / |mz + n|^2)^s (lattice), or the same sum over
/// coprime pairs (coprime), truncated at max(|m|, |n|) <= radius.
inline PartialSum eisenstein(Complex z, Complex s, EisensteinMode mode, const TruncationParams& tp) {
  require_convergent(s, "eisenstein");
  tp.validate();
  if (!(z.imag() > 0)) throw std::domain_error("eisenstein: Im z must be positive");
  if (tp.reduceToFundamentalDomain) z = reduce_point(z).z;
  const double y = z.imag();
  const int r = tp.radius;
  const bool coprime = mode == EisensteinMode::coprime;
  // Sum over m > 0 (all n) and m = 0, n > 0, then double.
  const detail::Acc acc = blocked_sum<detail::Acc>(static_cast<std::size_t>(r + 1), [&](std::size_t row) {
    detail::Acc a;
    const auto m = static_cast<std::int64_t>(row);
    const double dm = static_cast<double>(m);
    for (std::int64_t n = (m == 0 ? 1 : -r); n <= r; ++n) {
      if (coprime && std::gcd(m, n) != 1) continue;
      const double dn = static_cast<double>(n);
      const double re = dm * z.real() + dn;
      const double norm = re * re + dm * dm * y * y;
      a.value += std::exp(s * std::log(y / norm));
      ++a.terms;
    }
    return a;
  });
  PartialSum out;
  out.value = 2.0 * acc.value;
  out.termsUsed = 2 * acc.terms;
  const double sigma = s.real();
  const double majorant = std::pow(1.0 / detail::row_norm_floor(z) * y, sigma);
  if (tp.tailCorrection) {
    const auto f = [&](double m, double n) {
      const Complex w = m * z + n;
      return std::exp(s * std::log(y / std::norm(w)));
    };
    Complex tail = detail::outer_integral(f, s, r + 0.5, tp);
    if (coprime) tail *= detail::kCoprimeDensity;
    out.tailCorrection = tail;
    out.value += tail;
  }
  out.errorBound = detail::tail_bound(majorant, sigma, r, tp.tailCorrection);
  return out;
}

/// F_Q(s, z) = sum over <T>\SL(2,Z) of phi(gz, gQ)^s. Both signs of each bottom row are counted,
/// so that on C_Q the identity E(s, z) = zeta(2s) e^{-i pi s / 2} F_Q(s, z) holds.
inline PartialSum lift_series(const RealForm& q, Complex z, Complex s, const TruncationParams& tp) {
  require_convergent(s, "lift_series");
  tp.validate();
  if (!(z.imag() > 0)) throw std::domain_error("lift_series: Im z must be positive");
  const Complex ph = phi(q, z);
  const Complex w = companion_image(q, z);
  const int r = tp.radius;
  const detail::Acc acc = blocked_sum<detail::Acc>(static_cast<std::size_t>(r + 1), [&](std::size_t row) {
    detail::Acc a;
    const auto c = static_cast<std::int64_t>(row);
    const double dc = static_cast<double>(c);
    const Complex cz = dc * z, cw = dc * w;
    for (std::int64_t d = (c == 0 ? 1 : -r); d <= r; ++d) {
      if (std::gcd(c, d) != 1) continue;
      const double dd = static_cast<double>(d);
      a.value += principal_power(ph / ((cz + dd) * (cw + dd)), s);
      ++a.terms;
    }
    return a;
  });
  PartialSum out;
  out.value = 2.0 * acc.value;
  out.termsUsed = 2 * acc.terms;
  const double sigma = s.real();
  const double majorant = std::pow(std::abs(ph), sigma) * std::exp(std::numbers::pi * std::abs(s.imag())) *
                          std::pow(detail::row_norm_floor(z) * detail::row_norm_floor(std::conj(w)), -sigma / 2);
  if (tp.tailCorrection) {
    const auto f = [&](double c, double d) {
      return principal_power(detail::coset_base(ph, z, w, c, d), s);
    };
    const Complex tail = detail::kCoprimeDensity * detail::outer_integral(f, s, r + 0.5, tp);
    out.tailCorrection = tail;
    out.value += tail;
  }
  out.errorBound = detail::tail_bound(majorant, sigma, r, tp.tailCorrection);
  return out;
}

/// Integral form: when requested, (z, Q) is first replaced by (hz, hQ) with hz in the standard
/// fundamental domain, which leaves F_Q(s, z) unchanged and speeds convergence.
inline PartialSum lift_series(const Form& q, Complex z, Complex s, const TruncationParams& tp) {
  if (!(z.imag() > 0)) throw std::domain_error("lift_series: Im z must be positive");
  if (!tp.reduceToFundamentalDomain) return lift_series(RealForm::from(q), z, s, tp);
  const ReducedPoint rp = reduce_point(z);
  return lift_series(RealForm::from(act(rp.h, q)), rp.z, s, tp);
}

/// Q_z = (1 / Im z) [|z|^2, 2 Re z, 1]: positive definite of discriminant -4.
inline RealForm definite_form(Complex z) {
  const double y = z.imag();
  return {std::norm(z) / y, 2.0 * z.real() / y, 1.0 / y};
}

/// Epstein zeta of Q_z, sum over (m, n) != 0 of Q_z(m, n)^{-s}; equal to E(s, z).
inline PartialSum definite_form_zeta(Complex z, Complex s, const TruncationParams& tp) {
  require_convergent(s, "definite_form_zeta");
  tp.validate();
  if (!(z.imag() > 0)) throw std::domain_error("definite_form_zeta: Im z must be positive");
  const RealForm qz = definite_form(z);
  const int r = tp.radius;
  const auto value_at = [&](double m, double n) { return (qz.A * m + qz.B * n) * m + qz.C * n * n; };
  const detail::Acc acc = blocked_sum<detail::Acc>(static_cast<std::size_t>(2 * r + 1), [&](std::size_t row) {
    detail::Acc a;
    const double m = static_cast<double>(static_cast<std::int64_t>(row) - r);
    for (std::int64_t n = -r; n <= r; ++n) {
      if (m == 0 && n == 0) continue;
      a.value += std::exp(-s * std::log(value_at(m, static_cast<double>(n))));
      ++a.terms;
    }
    return a;
  });
  PartialSum out;
  out.value = acc.value;
  out.termsUsed = acc.terms;
  // Smallest eigenvalue of the Gram matrix of Q_z bounds Q_z(m, n) from below by max(|m|,|n|)^2.
  const double tr = qz.A + qz.C;
  const double det = qz.A * qz.C - 0.25 * qz.B * qz.B;
  const double lam = det / tr;
  const double sigma = s.real();
  if (tp.tailCorrection) {
    const auto f = [&](double m, double n) { return std::exp(-s * std::log(value_at(m, n))); };
    out.tailCorrection = detail::outer_integral(f, s, r + 0.5, tp);
    out.value += out.tailCorrection;
  }
  out.errorBound = detail::tail_bound(std::pow(lam, -sigma), sigma, r, tp.tailCorrection);
  return out;
}

}  // namespace geozeta
