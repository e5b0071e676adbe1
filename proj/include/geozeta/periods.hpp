#pragma once

// Hyperbolic periods Int(Q, gamma) of Gamma-invariant kernels along closed geodesics, their
// decomposition into integrals over the imaginary half-axis, and the regularized sum Phi_Q(s).

#include "geozeta/analytic.hpp"
#include "geozeta/forms.hpp"
#include "geozeta/geodesics.hpp"
#include "geozeta/modular.hpp"
#include "geozeta/parallel.hpp"
#include "geozeta/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace geozeta {

enum class KernelKind { unit, cuspform, lift };

/// A Gamma-invariant integrand Psi(z, Q): 1, f(z) Q(z)^k with f a cusp form of weight 2k, or
/// the lift F_Q(s, z).
struct Kernel {
  KernelKind kind = KernelKind::unit;
  int weightHalf = 0;           // k, cusp forms only
  std::vector<double> coeffs;   // a_1, a_2, ..., cusp forms only
  Complex s{2.0, 0.0};          // lift only
  TruncationParams tp;          // lift only

  static Kernel unit() { return {}; }

  /// Delta, the weight-12 cusp form, with enough coefficients for any point of the
  /// fundamental domain.
  static Kernel delta(std::size_t terms = 40) {
    Kernel k;
    k.kind = KernelKind::cuspform;
    k.weightHalf = 6;
    for (const BigInt& t : delta_coefficients(terms)) k.coeffs.push_back(to_double(t));
    return k;
  }

  static Kernel lift(Complex s, const TruncationParams& tp) {
    require_convergent(s, "lift kernel");
    Kernel k;
    k.kind = KernelKind::lift;
    k.s = s;
    k.tp = tp;
    return k;
  }

  /// Parses "unit", "delta" or "lift:s=<a+bi>".
  static Kernel parse(const std::string& spec, const TruncationParams& tp);
};

struct KernelValue {
  Complex value;
  double errorBound = 0;  // truncation bound, lift kernel only
};

inline KernelValue kernel_eval_detailed(const Kernel& k, const Form& q, Complex z) {
  if (!(z.imag() > 0)) throw std::domain_error("kernel_eval: Im z must be positive");
  switch (k.kind) {
    case KernelKind::unit:
      return {Complex(1.0, 0.0), 0.0};
    case KernelKind::cuspform: {
      if (k.coeffs.empty()) throw std::invalid_argument("cusp-form kernel needs coefficients");
      const Complex qz = evaluate(q, z);
      return {cusp_form_value(k.coeffs, 2 * k.weightHalf, z) * std::pow(qz, k.weightHalf), 0.0};
    }
    case KernelKind::lift: {
      const PartialSum ps = lift_series(q, z, k.s, k.tp);
      return {ps.value, ps.errorBound};
    }
  }
  throw std::logic_error("unknown kernel kind");
}

inline Complex kernel_eval(const Kernel& k, const Form& q, Complex z) {
  return kernel_eval_detailed(k, q, z).value;
}

struct PeriodValue {
  Complex value;
  double quadratureError = 0;   // last panel-doubling difference
  double truncationBound = 0;   // series truncation, integrated over the path
  long evaluations = 0;

  double combined_bound() const { return quadratureError + truncationBound; }
};

/// Int(Q, gamma_Q^n) = integral of Psi(z, Q) dz / Q(z) from z_{t0} to gamma_Q^n z_{t0}, taken
/// along C_Q with dz = (dz_t / dt) dt.
inline PeriodValue hyperbolic_period(const Kernel& k, const Form& q, double t0,
                                     const QuadratureParams& qp, int multiplicity = 1) {
  if (multiplicity < 1) throw std::invalid_argument("hyperbolic_period: multiplicity must be >= 1");
  const double len = period_length(q) * multiplicity;
  const double t1 = t0 + (q.A() > 0 ? len : -len);
  double worst = 0;
  const auto f = [&](double t) {
    const Complex z = point_at(q, t).z;
    const KernelValue kv = kernel_eval_detailed(k, q, z);
    worst = std::max(worst, kv.errorBound);
    return kv.value * point_velocity(q, t) / evaluate(q, z);
  };
  const QuadResult<Complex> r = integrate(f, t0, t1, qp);
  PeriodValue out;
  out.value = r.value;
  out.quadratureError = r.errorEstimate;
  out.evaluations = r.evaluations;
  // |dz / Q(z)| = dt / sqrt(D) on C_Q.
  out.truncationBound = worst * len / std::sqrt(to_double(q.discriminant()));
  return out;
}

/// e^{i pi s / 2} / zeta(2s) times the integral of E(s, z_t) over one period: the value of
/// -sqrt(D) Int(Q, gamma_Q) for the lift kernel.
inline PeriodValue period_via_eisenstein(const Form& q, Complex s, double t0,
                                         const QuadratureParams& qp, const TruncationParams& tp) {
  require_convergent(s, "period_via_eisenstein");
  const double len = period_length(q);
  double worst = 0;
  const auto f = [&](double t) {
    const PartialSum e = eisenstein(point_at(q, t).z, s, EisensteinMode::lattice, tp);
    worst = std::max(worst, e.errorBound);
    return e.value;
  };
  const QuadResult<Complex> r = integrate(f, t0, t0 + len, qp);
  const Complex factor = std::exp(Complex(0.0, std::numbers::pi / 2) * s) / riemann_zeta(2.0 * s);
  PeriodValue out;
  out.value = factor * r.value;
  out.quadratureError = std::abs(factor) * r.errorEstimate;
  out.truncationBound = std::abs(factor) * worst * len;
  out.evaluations = r.evaluations;
  return out;
}

namespace detail {

/// Half-width of the u-window for integrals over z = i e^u.
inline double cusp_window(KernelKind kind) {
  // The unit and lift integrands decay like e^{-|u|}; cusp forms decay doubly exponentially.
  return kind == KernelKind::cuspform ? 8.0 : 42.0;
}

template <class F>
QuadResult<Complex> imaginary_axis_integral(const F& integrand, double window,
                                            const QuadratureParams& qp) {
  // z = i e^u, dz = i e^u du.
  const auto g = [&](double u) {
    const Complex z(0.0, std::exp(u));
    return integrand(z) * z;  // i e^u = z
  };
  QuadratureParams p = qp;
  p.panels = std::max(p.panels, 16);
  return integrate(g, -window, window, p);
}

}  // namespace detail

struct CuspDecomposition {
  Complex total;
  std::vector<Complex> parts;  // one per form of the cycle
  double quadratureError = 0;
};

/// Sum over the cycle Q_0, ..., Q_{r-1} of the integrals of Psi(z, Q_j) dz / Q_j(z) from 0 to i
/// infinity; requires a kernel integrable on the imaginary half-axis.
inline CuspDecomposition cusp_decomposition(const Kernel& k, const Form& q, const QuadratureParams& qp) {
  if (k.kind == KernelKind::lift)
    throw std::invalid_argument(
        "cusp_decomposition: the lift kernel is not integrable on the imaginary half-axis");
  if (!is_reduced(q)) throw std::invalid_argument("cusp_decomposition: form " + q.str() + " is not reduced");
  const Cycle cyc = cycle_of(q);
  CuspDecomposition out;
  for (const Form& qj : cyc.forms) {
    const auto integrand = [&](Complex z) { return kernel_eval(k, qj, z) / evaluate(qj, z); };
    const QuadResult<Complex> r =
        detail::imaginary_axis_integral(integrand, detail::cusp_window(k.kind), qp);
    out.parts.push_back(r.value);
    out.total += r.value;
    out.quadratureError += r.errorEstimate;
  }
  return out;
}

struct UnitProductIdentity {
  QuadExact lhs;  // eps_Pell^2
  QuadExact rhs;  // product of x_j / x_j'
  bool equal = false;
};

inline UnitProductIdentity unit_product_identity(const BigInt& d, std::size_t cycle_index) {
  const ClassTable table = narrow_classes(d);
  if (cycle_index >= table.cycles.size())
    throw std::invalid_argument("unit_product_identity: cycle index " + std::to_string(cycle_index) +
                                " out of range (D = " + d.str() + " has " +
                                std::to_string(table.cycles.size()) + " cycles)");
  const PellSolution pell = pell_fundamental(d);
  const QuadExact eps(pell.v, pell.u, 2, d);
  QuadExact prod = QuadExact::integer(1, d);
  for (const Form& f : table.cycles[cycle_index].forms) {
    const auto [xp, x] = roots(f);
    prod = prod * (x / xp);
  }
  UnitProductIdentity out{eps * eps, prod, false};
  out.equal = out.lhs == out.rhs;
  return out;
}

struct Coset {
  std::int64_t c = 0, d = 1;
  friend bool operator==(const Coset&, const Coset&) = default;
};

/// Sign convention for <T>\Gamma cosets: c > 0, or c = 0 and d > 0.
inline Coset normalize_coset(std::int64_t c, std::int64_t d) {
  const std::int64_t g = std::gcd(c, d);
  if (g == 0) throw std::invalid_argument("normalize_coset: (0, 0)");
  c /= g;
  d /= g;
  if (c < 0 || (c == 0 && d < 0)) {
    c = -c;
    d = -d;
  }
  return {c, d};
}

/// The cosets whose terms are not integrable at the cusps: (0,1), (2A,B) at infinity and
/// (1,0), (B,2C) at zero.
inline std::vector<Coset> excluded_cosets(const Form& q) {
  const std::int64_t a = to_int64(q.A()), b = to_int64(q.B()), c = to_int64(q.C());
  std::vector<Coset> out;
  for (const Coset& x : {normalize_coset(0, 1), normalize_coset(2 * a, b), normalize_coset(1, 0),
                         normalize_coset(b, 2 * c)})
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  return out;
}

/// R_Q(s, z): the excluded coset terms summed at a single point (SL(2,Z) counting).
inline Complex remainder_terms(const Form& q, Complex s, Complex z) {
  Complex sum = 0;
  for (const Coset& x : excluded_cosets(q)) sum += 2.0 * coset_term(q, z, x.c, x.d, s);
  return sum;
}

/// Phi_Q(s): sum over included cosets with max(|c|, |d|) <= radius of the integral from 0 to
/// i infinity of the coset term against -sqrt(D) dz / Q(z).
inline PartialSum phi_regularized(const Form& q, Complex s, const TruncationParams& tp,
                                  const QuadratureParams& qp) {
  if (!is_reduced(q)) throw std::invalid_argument("phi_regularized: form " + q.str() + " is not reduced");
  require_convergent(s, "phi_regularized");
  tp.validate();
  const RealForm rq = RealForm::from(q);
  const double sd = std::sqrt(rq.discriminant());
  const std::vector<Coset> excluded = excluded_cosets(q);
  const int r = tp.radius;
  const double window = detail::cusp_window(KernelKind::lift);
  struct Acc {
    Complex value;
    double quad = 0;
    long terms = 0;
    Acc& operator+=(const Acc& o) {
      value += o.value;
      quad += o.quad;
      terms += o.terms;
      return *this;
    }
  };
  const Acc acc = blocked_sum<Acc>(static_cast<std::size_t>(r + 1), [&](std::size_t row) {
    Acc a;
    const auto c = static_cast<std::int64_t>(row);
    for (std::int64_t d = (c == 0 ? 1 : -r); d <= r; ++d) {
      if (std::gcd(c, d) != 1) continue;
      if (std::find(excluded.begin(), excluded.end(), Coset{c, d}) != excluded.end()) continue;
      const auto integrand = [&](Complex z) {
        return coset_term(rq, z, c, d, s) * (-sd) / evaluate(rq, z);
      };
      const QuadResult<Complex> res = detail::imaginary_axis_integral(integrand, window, qp);
      a.value += 2.0 * res.value;
      a.quad += 2.0 * res.errorEstimate;
      ++a.terms;
    }
    return a;
  });

  // Majorant of each term: L0 e^{pi |Im s|} |c|^{-sigma} (|d|^{-sigma} + max(|B| / |2Cc - Bd|,
  // 2A / |Bc - 2Ad|)^sigma), with L0 the integral of sqrt(D) |dz / Q(z)| over the half-axis.
  const double sigma = s.real();
  const auto l0_integrand = [&](double u) {
    const double y = std::exp(u);
    return sd * y / std::abs(evaluate(rq, Complex(0.0, y)));
  };
  QuadratureParams lqp = qp;
  lqp.panels = std::max(lqp.panels, 16);
  const double l0 = integrate(l0_integrand, -window, window, lqp).value;
  const double k0 = l0 * std::exp(std::numbers::pi * std::abs(s.imag()));
  const double fa = rq.A, fb = rq.B, fc = rq.C;
  const auto majorant = [&](std::int64_t c, std::int64_t d) {
    const double dc = static_cast<double>(c), dd = static_cast<double>(d);
    const double near = std::max(std::abs(fb) / std::abs(2 * fc * dc - fb * dd),
                                 2 * std::abs(fa) / std::abs(fb * dc - 2 * fa * dd));
    return k0 * std::pow(dc, -sigma) * (std::pow(std::abs(dd), -sigma) + std::pow(near, sigma));
  };
  // The majorant over an annulus (R, 4R] scales like R^{1-sigma}; extrapolate geometrically.
  const int outer = 4 * r;
  const double annulus = blocked_sum<double>(static_cast<std::size_t>(outer), [&](std::size_t row) {
    const auto c = static_cast<std::int64_t>(row) + 1;
    double sum = 0;
    for (std::int64_t d = -outer; d <= outer; ++d) {
      if (std::max<std::int64_t>(c, std::abs(d)) <= r || d == 0 || std::gcd(c, d) != 1) continue;
      if (std::find(excluded.begin(), excluded.end(), Coset{c, d}) != excluded.end()) continue;
      sum += majorant(c, d);
    }
    return sum;
  });
  PartialSum out;
  out.value = acc.value;
  out.termsUsed = acc.terms;
  out.errorBound = annulus / (1.0 - std::pow(4.0, 1.0 - sigma)) + acc.quad;
  return out;
}

inline Kernel Kernel::parse(const std::string& spec, const TruncationParams& tp) {
  if (spec == "unit") return unit();
  if (spec == "delta") return delta();
  const std::string prefix = "lift:s=";
  if (spec.rfind(prefix, 0) == 0) return lift(parse_complex(spec.substr(prefix.size())), tp);
  throw std::invalid_argument("unknown kernel \"" + spec + "\" (expected unit, delta or lift:s=<a+bi>)");
}

}  // namespace geozeta
