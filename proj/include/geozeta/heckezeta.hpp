#pragma once

// Ideal-class zeta functions of real quadratic fields by Hecke's lambda-sum, the functions
// Phi_beta(s) = -sqrt(D) Int(Q, gamma_Q) for the lift kernel, and the check of
// sum_beta Phi_beta(s) = 4 c(s) (i sqrt D)^s zeta(alpha, s) / zeta(2s).

#include "geozeta/analytic.hpp"
#include "geozeta/forms.hpp"
#include "geozeta/geodesics.hpp"
#include "geozeta/parallel.hpp"
#include "geozeta/periods.hpp"
#include "geozeta/special.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace geozeta {

/// b = Z + xZ with x the larger root of a reduced form; Nb is its norm relative to O_K.
struct IdealBasis {
  QuadExact x;
  BigRational Nb;
  Form sourceForm;
};

inline IdealBasis ideal_of_form(const Form& q) {
  if (!is_reduced(q)) throw std::invalid_argument("ideal_of_form: form " + q.str() + " is not reduced");
  return {first_root(q), BigRational(BigInt(1), q.A()), q};
}

struct ZetaRequest {
  Complex s{2.0, 0.0};
  std::int64_t normCutoff = 10000;  // Lambda: ideals of norm <= Lambda are summed
  bool tailCorrection = false;      // add kappa Lambda^{1-s} / (s - 1) for the omitted ideals
  double windowOffset = 0.0;        // lambda ranges over offset <= log|lambda/lambda'| < offset + 2 log eps

  void validate() const {
    require_convergent(s, "partial_class_zeta");
    if (normCutoff < 1) throw std::invalid_argument("norm cutoff must be positive");
  }
};

struct ClassZeta {
  PartialSum sum;
  std::int64_t idealsCounted = 0;  // lambda modulo +-eps^Z, i.e. integral ideals
  std::vector<std::int64_t> norms;  // only when requested
};

/// zeta([b]^{-1}, s) = (Nb)^s / 2 * sum over lambda in b / eps^Z of |lambda lambda'|^{-s},
/// restricted to ideal norms |N lambda| / Nb <= Lambda.
inline ClassZeta partial_class_zeta(const IdealBasis& b, const ZetaRequest& req, bool keep_norms = false) {
  req.validate();
  const Form& q = b.sourceForm;
  const BigInt& disc = q.discriminant();
  validate_fundamental(disc);
  const FundamentalUnit unit = fundamental_unit(disc);
  const std::int64_t a = to_int64(q.A()), bq = to_int64(q.B()), d = to_int64(disc);
  // eps = (t + u sqrt D) / 2.
  const std::int64_t ut = to_int64(2 * unit.eps.p() / unit.eps.r());
  const std::int64_t uu = to_int64(2 * unit.eps.q() / unit.eps.r());
  const double sd = std::sqrt(static_cast<double>(d));
  const double log_eps = std::log(unit.eps.to_double());
  const double lam = static_cast<double>(req.normCutoff);
  const bool exact_window = req.windowOffset == 0.0;
  // lambda = (P + n sqrt D) / (2A) with P = 2Am - nB. |lambda lambda'| = Lambda Nb at most, so
  // |P + n sqrt D| <= 2A sqrt(Lambda/A) e^{(offset + 2 log eps)/2} and |P - n sqrt D| <= 2A sqrt(Lambda/A) e^{-offset/2}.
  const double root = 2.0 * static_cast<double>(a) * std::sqrt(lam / static_cast<double>(a));
  const double big = root * std::exp(0.5 * req.windowOffset + log_eps) * (1 + 1e-12) + 1;
  const double small = root * std::exp(-0.5 * req.windowOffset) * (1 + 1e-12) + 1;
  const auto n_max = static_cast<std::int64_t>(std::floor((big + small) / (2 * sd))) + 1;

  struct Acc {
    Complex value;
    std::int64_t count = 0;
    std::vector<std::int64_t> norms;
    Acc& operator+=(const Acc& o) {
      value += o.value;
      count += o.count;
      norms.insert(norms.end(), o.norms.begin(), o.norms.end());
      return *this;
    }
  };
  const Complex s = req.s;
  const Acc acc = blocked_sum<Acc>(static_cast<std::size_t>(2 * n_max + 1), [&](std::size_t row) {
    Acc out;
    const std::int64_t n = static_cast<std::int64_t>(row) - n_max;
    const double nsd = static_cast<double>(n) * sd;
    // P ranges over |P - n sqrt D| <= small with P = -nB mod 2A.
    const double p_lo = nsd - small, p_hi = nsd + small;
    const std::int64_t m_lo = static_cast<std::int64_t>(std::ceil((p_lo + static_cast<double>(n * bq)) / (2.0 * static_cast<double>(a)))) - 1;
    const std::int64_t m_hi = static_cast<std::int64_t>(std::floor((p_hi + static_cast<double>(n * bq)) / (2.0 * static_cast<double>(a)))) + 1;
    for (std::int64_t m = m_lo; m <= m_hi; ++m) {
      if (m == 0 && n == 0) continue;
      const __int128 p = static_cast<__int128>(2 * a) * m - static_cast<__int128>(n) * bq;
      const __int128 norm_p = p * p - static_cast<__int128>(n) * n * d;  // 4A^2 N(lambda)
      const __int128 abs_norm = norm_p < 0 ? -norm_p : norm_p;
      if (abs_norm % (4 * a) != 0) throw std::logic_error("lambda norm not divisible by 4A: b is not an ideal");
      const __int128 ideal_norm = abs_norm / (4 * a);
      if (ideal_norm > req.normCutoff) continue;
      bool inside;
      if (exact_window) {
        // |lambda| >= |lambda'|  <=>  P n >= 0; and |lambda| < eps^2 |lambda'|  <=>  for
        // mu = lambda eps' = (P2 + n2 sqrt D) / (4A): P2 n2 < 0.
        const __int128 p2 = p * ut - static_cast<__int128>(n) * uu * d;
        const __int128 n2 = static_cast<__int128>(n) * ut - p * uu;
        inside = p * n >= 0 && p2 * n2 < 0;
      } else {
        const double pd = static_cast<double>(p);
        const double ratio = std::log(std::abs(pd + nsd)) - std::log(std::abs(pd - nsd));
        inside = ratio >= req.windowOffset && ratio < req.windowOffset + 2 * log_eps;
      }
      if (!inside) continue;
      out.value += std::exp(-s * std::log(static_cast<double>(ideal_norm)));
      ++out.count;
      if (keep_norms) out.norms.push_back(static_cast<std::int64_t>(ideal_norm));
    }
    return out;
  });
  ClassZeta out;
  out.sum.value = 0.5 * acc.value;
  out.sum.termsUsed = acc.count;
  out.idealsCounted = acc.count / 2;
  if (keep_norms) out.norms = acc.norms;
  // Ideals in a wide class have density kappa = 2 log(eps) / sqrt(D).
  const double kappa = 2 * log_eps / sd;
  const double sigma = s.real();
  // The ideal count up to x is kappa x + O(sqrt x); the second term bounds that fluctuation.
  const double fluctuation = 4.0 * std::max(1.0, kappa) * std::pow(lam, 0.5 - sigma);
  if (req.tailCorrection) {
    out.sum.tailCorrection = kappa * std::exp((1.0 - s) * std::log(lam)) / (s - 1.0);
    out.sum.value += out.sum.tailCorrection;
    out.sum.errorBound = fluctuation;
  } else {
    out.sum.errorBound = kappa * std::pow(lam, 1.0 - sigma) / (sigma - 1.0) + fluctuation;
  }
  return out;
}

struct PhiBeta {
  Complex value;      // the Eisenstein route
  Complex direct;     // quadrature of the lift kernel along the geodesic
  Complex eisenstein;
  double bound = 0;   // combined error bound of the two routes
};

/// Start of the integration window: the period centred on the top z_0 of the semicircle.
inline double centered_start(const Form& q) { return -0.5 * period_length(q); }

/// Phi_beta(s) = -sqrt(D) Int(Q, gamma_Q) for the lift kernel, computed by two routes.
inline PhiBeta phi_beta(const Form& q, Complex s, const QuadratureParams& qp, const TruncationParams& tp) {
  require_convergent(s, "phi_beta");
  const double t0 = centered_start(q);
  const double sd = std::sqrt(to_double(q.discriminant()));
  const PeriodValue direct = hyperbolic_period(Kernel::lift(s, tp), q, t0, qp);
  const PeriodValue eis = period_via_eisenstein(q, s, t0, qp, tp);
  PhiBeta out;
  out.direct = -sd * direct.value;
  out.eisenstein = eis.value;
  out.value = eis.value;
  out.bound = sd * direct.combined_bound() + eis.combined_bound();
  if (std::abs(out.direct - out.eisenstein) > 3.0 * out.bound)
    throw std::runtime_error("phi_beta: the two routes disagree for " + q.str() + " (|difference| = " +
                             std::to_string(std::abs(out.direct - out.eisenstein)) +
                             ", bound = " + std::to_string(out.bound) + ")");
  return out;
}

struct HeckeCheck {
  Complex lhs, rhs;
  double relResidual = 0;
  std::vector<std::size_t> narrowClasses;  // cycle indices summed on the left
  std::vector<PhiBeta> phis;
  ClassZeta zeta;
};

/// Sum of Phi_beta over the narrow classes of one wide class against
/// 4 c(s) (i sqrt D)^s zeta([b]^{-1}, s) / zeta(2s), b taken from the same forms.
inline HeckeCheck hecke_theorem_check(const BigInt& d, std::size_t wide_index, const ZetaRequest& req,
                                      const QuadratureParams& qp, const TruncationParams& tp) {
  const ClassTable table = wide_class_table(d);
  if (wide_index >= table.widePairs.size())
    throw std::invalid_argument("hecke_theorem_check: wide class index " + std::to_string(wide_index) +
                                " out of range (D = " + d.str() + " has " +
                                std::to_string(table.widePairs.size()) + " wide classes)");
  const auto [i, j] = table.widePairs[wide_index];
  HeckeCheck out;
  out.narrowClasses = i == j ? std::vector<std::size_t>{i} : std::vector<std::size_t>{i, j};
  for (std::size_t k : out.narrowClasses) {
    out.phis.push_back(phi_beta(table.cycles[k].forms.front(), req.s, qp, tp));
    out.lhs += out.phis.back().value;
  }
  out.zeta = partial_class_zeta(ideal_of_form(table.cycles[i].forms.front()), req);
  const Complex s = req.s;
  const Complex i_sqrt_d(0.0, std::sqrt(to_double(d)));
  out.rhs = 4.0 * c_of_s(s) * principal_power(i_sqrt_d, s) * out.zeta.sum.value / riemann_zeta(2.0 * s);
  out.relResidual = std::abs(out.lhs - out.rhs) / std::abs(out.rhs);
  return out;
}

struct WideGrouping {
  ClassTable table;
  std::vector<double> pairDiscrepancy;  // |Phi_beta1 - Phi_beta2| per wide pair, 0 when self-paired
  bool consistent = true;
};

/// The wide class table, with the equality of Phi_beta on conjugate narrow classes checked at s.
inline WideGrouping wide_grouping(const BigInt& d, Complex s, const QuadratureParams& qp,
                                  const TruncationParams& tp, double tolerance = 1e-3) {
  WideGrouping out{wide_class_table(d), {}, true};
  for (const auto& [i, j] : out.table.widePairs) {
    double diff = 0;
    if (i != j) {
      const PhiBeta a = phi_beta(out.table.cycles[i].forms.front(), s, qp, tp);
      const PhiBeta b = phi_beta(out.table.cycles[j].forms.front(), s, qp, tp);
      diff = std::abs(a.value - b.value);
    }
    out.pairDiscrepancy.push_back(diff);
    if (diff > tolerance) out.consistent = false;
  }
  return out;
}

}  // namespace geozeta
