#pragma once

// Composite Gauss-Legendre quadrature with panel doubling.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace geozeta {

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadratureParams {
  int nodes = 16;          // Gauss-Legendre order per panel, in [8, 64]
  int panels = 4;          // initial panel count; doubled until converged
  double relTol = 1e-9;
  double absTol = 0.0;     // convergence also accepted below this absolute change
  int maxPanels = 1 << 14;

  void validate() const {
    if (nodes < 8 || nodes > 64)
      throw std::invalid_argument("quadrature nodes must lie in [8, 64], got " +
                                  std::to_string(nodes));
    if (panels < 1) throw std::invalid_argument("quadrature needs at least one panel");
    if (!(relTol > 0)) throw std::invalid_argument("quadrature relTol must be positive");
  }
};

struct GaussRule {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

/// Nodes by Newton iteration on the Legendre recurrence.
inline GaussRule gauss_legendre_rule(int n) {
  GaussRule rule;
  rule.x.resize(static_cast<std::size_t>(n));
  rule.w.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1;
      dp = n * (x * p1 - p0) / (x * x - 1);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1);
    const double w = 2 / ((1 - x * x) * dp * dp);
    rule.x[static_cast<std::size_t>(i)] = -x;
    rule.x[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.w[static_cast<std::size_t>(i)] = w;
    rule.w[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return rule;
}

/// Fixed composite rule: `panels` equal panels of an n-point rule on [a, b].
template <class F>
auto composite_gauss(const F& f, double a, double b, const GaussRule& rule, int panels)
    -> decltype(f(a)) {
  using R = decltype(f(a));
  R total{};
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    R panel{};
    for (std::size_t k = 0; k < rule.x.size(); ++k) panel += rule.w[k] * f(mid + 0.5 * h * rule.x[k]);
    total += 0.5 * h * panel;
  }
  return total;
}

template <class R>
struct QuadResult {
  R value{};
  double errorEstimate = 0;  // |I(2P) - I(P)| at acceptance
  long evaluations = 0;
  int panels = 0;
};

/// Doubles the panel count until successive composite values agree to relTol.
template <class F>
auto integrate(const F& f, double a, double b, const QuadratureParams& qp)
    -> QuadResult<decltype(f(a))> {
  qp.validate();
  using R = decltype(f(a));
  const GaussRule rule = gauss_legendre_rule(qp.nodes);
  QuadResult<R> res;
  int panels = qp.panels;
  R prev = composite_gauss(f, a, b, rule, panels);
  res.evaluations = static_cast<long>(panels) * qp.nodes;
  while (true) {
    panels *= 2;
    if (panels > qp.maxPanels)
      throw ConvergenceError("quadrature did not converge on [" + std::to_string(a) + ", " +
                             std::to_string(b) + "] with " + std::to_string(qp.maxPanels) +
                             " panels");
    const R cur = composite_gauss(f, a, b, rule, panels);
    res.evaluations += static_cast<long>(panels) * qp.nodes;
    const double diff = std::abs(cur - prev);
    if (diff <= qp.relTol * std::abs(cur) || diff <= qp.absTol) {
      res.value = cur;
      res.errorEstimate = diff;
      res.panels = panels;
      return res;
    }
    prev = cur;
  }
}

}  // namespace geozeta
