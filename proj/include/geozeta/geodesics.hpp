#pragma once

// The semicircle C_Q, its unit-speed hyperbolic parametrization z_t, the shifts M_t along it,
// and the holomorphic length differential -sqrt(D) dz / Q(z) = sign(A) dt.

#include "geozeta/forms.hpp"
#include "geozeta/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace geozeta {

using Complex = std::complex<double>;

/// |t| beyond this returns the endpoint limit; e^60 exceeds any resolution we need.
inline constexpr double kMaxArcParameter = 60.0;

struct GeodesicPoint {
  double t = 0;
  Complex z;
};

struct Circle {
  double center = 0;
  double radius = 0;
};

/// Real roots (x', x), x' < x, of a form with positive discriminant.
inline std::pair<double, double> real_roots(const RealForm& q) {
  const double sd = std::sqrt(q.discriminant());
  // Avoid cancellation: one root from the quadratic formula, the other from the product.
  const double big = q.B >= 0 ? (-q.B - sd) / (2 * q.A) : (-q.B + sd) / (2 * q.A);
  const double other = q.C / (q.A * big);
  return {std::min(big, other), std::max(big, other)};
}

inline std::pair<double, double> real_roots(const Form& q) {
  const auto [xp, x] = roots(q);
  return {xp.to_double(), x.to_double()};
}

inline Circle circle_of(const RealForm& q) {
  return {-q.B / (2 * q.A), std::sqrt(q.discriminant()) / (2 * std::abs(q.A))};
}

inline Circle circle_of(const Form& q) { return circle_of(RealForm::from(q)); }

namespace detail {

inline GeodesicPoint point_from_roots(double xp, double x, double t) {
  if (t >= kMaxArcParameter) return {t, Complex(x, 0.0)};
  if (t <= -kMaxArcParameter) return {t, Complex(xp, 0.0)};
  const double half = 0.5 * (x - xp);
  return {t, Complex(0.5 * (x + xp) + half * std::tanh(t), half / std::cosh(t))};
}

}  // namespace detail

/// z_t = (x e^t + x' e^{-t}) / (e^t + e^{-t}) + i (x - x') / (e^t + e^{-t}).
inline GeodesicPoint point_at(const RealForm& q, double t) {
  const auto [xp, x] = real_roots(q);
  return detail::point_from_roots(xp, x, t);
}

inline GeodesicPoint point_at(const Form& q, double t) {
  const auto [xp, x] = real_roots(q);
  return detail::point_from_roots(xp, x, t);
}

/// dz_t/dt = (x - x') (1 - i sinh t) / (2 cosh^2 t).
inline Complex point_velocity(const Form& q, double t) {
  const auto [xp, x] = real_roots(q);
  t = std::clamp(t, -kMaxArcParameter, kMaxArcParameter);
  const double ch = std::cosh(t);
  return (x - xp) * Complex(1.0, -std::sinh(t)) / (2 * ch * ch);
}

/// M_t = cosh(t/2) I + sinh(t/2) N_Q / sqrt(D).
inline RealMatrix shift_matrix(const Form& q, double t) {
  const RealMatrix n = to_real(companion(q));
  const double sd = std::sqrt(to_double(q.discriminant()));
  const double ch = std::cosh(t / 2), sh = std::sinh(t / 2) / sd;
  return {ch + sh * n.a, sh * n.b, sh * n.c, ch + sh * n.d};
}

/// 2 log(eps_Pell): the hyperbolic length of the closed geodesic of Q.
inline double period_length(const BigInt& d) {
  const PellSolution pell = pell_fundamental(d);
  return 2.0 * std::log(QuadExact(pell.v, pell.u, 2, d).to_double());
}

inline double period_length(const Form& q) { return period_length(q.discriminant()); }

inline Complex evaluate(const RealForm& q, Complex z) { return (q.A * z + q.B) * z + q.C; }

inline Complex evaluate(const Form& q, Complex z) { return evaluate(RealForm::from(q), z); }

/// |(-sqrt(D) / Q(z_t)) dz_t/dt - sign(A)|; zero in exact arithmetic.
inline double length_differential_residual(const Form& q, double t) {
  const double sd = std::sqrt(to_double(q.discriminant()));
  const Complex z = point_at(q, t).z;
  const Complex lhs = -sd / evaluate(q, z) * point_velocity(q, t);
  return std::abs(lhs - static_cast<double>(q.A().sign()));
}

/// arccosh(1 + |z1 - z2|^2 / (2 y1 y2)), evaluated in the asinh form that stays accurate for
/// nearby points.
inline double hyperbolic_distance(Complex z1, Complex z2) {
  return 2.0 * std::asinh(std::abs(z1 - z2) / (2.0 * std::sqrt(z1.imag() * z2.imag())));
}

}  // namespace geozeta
