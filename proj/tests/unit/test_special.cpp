#include "geozeta/modular.hpp"
#include "geozeta/parallel.hpp"
#include "geozeta/quadrature.hpp"
#include "geozeta/special.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <numbers>
#include <random>

using namespace geozeta;
using std::numbers::pi;

TEST(Special, RiemannZeta) {
  EXPECT_NEAR(riemann_zeta(2.0), pi * pi / 6, 1e-12);
  EXPECT_NEAR(riemann_zeta(4.0), std::pow(pi, 4) / 90, 1e-12);
  EXPECT_NEAR(riemann_zeta(3.0), oracle::zeta_direct(3.0), 1e-11);
  EXPECT_NEAR(riemann_zeta(1.5), oracle::zeta_direct(1.5, 400000), 1e-9);
  // zeta(conj s) = conj zeta(s), and the value at 2+i from the direct sum.
  const Complex s(2.0, 1.0);
  EXPECT_LT(std::abs(riemann_zeta(std::conj(s)) - std::conj(riemann_zeta(s))), 1e-14);
  Complex direct = 0;
  const int n = 100000;
  for (int k = n; k >= 1; --k) direct += std::exp(-s * std::log(static_cast<double>(k)));
  direct += std::exp((1.0 - s) * std::log(static_cast<double>(n))) / (s - 1.0) -
            0.5 * std::exp(-s * std::log(static_cast<double>(n)));
  EXPECT_LT(std::abs(riemann_zeta(s) - direct), 1e-9);
}

TEST(Special, Gamma) {
  EXPECT_NEAR(gamma_fn(1.0).real(), 1.0, 1e-14);
  EXPECT_NEAR(gamma_fn(0.5).real(), std::sqrt(pi), 1e-14);
  EXPECT_NEAR(std::abs(gamma_fn(4.5) / gamma_fn(3.5) - 3.5), 0.0, 1e-12);
  for (double x : {0.3, 1.7, 2.5, 6.2, 11.0}) EXPECT_NEAR(gamma_fn(x).real(), std::tgamma(x), 1e-12 * std::tgamma(x));
  const Complex z(0.7, 1.3);
  EXPECT_LT(std::abs(gamma_fn(z + 1.0) - z * gamma_fn(z)), 1e-13);
  // Reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z).
  EXPECT_LT(std::abs(gamma_fn(z) * gamma_fn(1.0 - z) - pi / std::sin(pi * z)), 1e-12);
}

TEST(Special, CofS) {
  EXPECT_NEAR(std::abs(c_of_s(2.0) - 0.5), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(c_of_s(4.0) - 1.0 / 12), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(c_of_s(2.0, CMethod::quadrature) - 0.5), 0.0, 1e-12);
  const Complex s(1.5, 0.7);
  EXPECT_LE(std::abs(c_of_s(s, CMethod::quadrature) - c_of_s(s, CMethod::gamma)), 1e-10);
  EXPECT_THROW(c_of_s(Complex(-1.0, 0.0)), std::domain_error);
}

TEST(Quadrature, PolynomialsAndOscillation) {
  QuadratureParams qp;
  qp.absTol = 1e-14;
  const auto r = integrate([](double x) { return x * x * x * x; }, 0.0, 2.0, qp);
  EXPECT_NEAR(r.value, 32.0 / 5, 1e-13);
  const auto osc = integrate([](double x) { return Complex(std::cos(20 * x), std::sin(20 * x)); }, 0.0, pi, qp);
  EXPECT_LT(std::abs(osc.value), 1e-12);
  qp.maxPanels = 4;
  qp.relTol = 1e-15;
  EXPECT_THROW(integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, qp), ConvergenceError);
}

TEST(Modular, TauExamplesAndProduct) {
  const std::vector<BigInt> tau = delta_coefficients(60);
  EXPECT_EQ(tau[0], 1);
  EXPECT_EQ(tau[1], -24);
  EXPECT_EQ(tau[2], 252);
  const std::vector<BigInt> naive = oracle::tau_by_product(60);
  for (std::size_t i = 0; i < tau.size(); ++i) EXPECT_EQ(tau[i], naive[i]) << "n = " << i + 1;
}

TEST(Modular, TauHeckeRelations) {
  const std::vector<BigInt> tau = delta_coefficients(2000);
  const auto t = [&](std::size_t n) { return tau[n - 1]; };
  for (std::size_t m = 2; m <= 40; ++m)
    for (std::size_t n = 2; m * n <= 2000; ++n)
      if (std::gcd(m, n) == 1) EXPECT_EQ(t(m * n), t(m) * t(n));
  for (std::size_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43}) {
    BigInt p11 = 1;
    for (int k = 0; k < 11; ++k) p11 *= p;
    EXPECT_EQ(t(p * p), t(p) * t(p) - p11) << p;
  }
}

TEST(Modular, ReducePoint) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> x(-30, 30), ly(-6, 3);
  for (int i = 0; i < 1000; ++i) {
    const Complex z(x(rng), std::exp(ly(rng)));
    const ReducedPoint rp = reduce_point(z);
    EXPECT_LE(std::abs(rp.z.real()), 0.5 + 1e-12);
    EXPECT_GE(std::abs(rp.z), 1.0 - 1e-12);
    EXPECT_LT(std::abs(mobius(rp.h, z) - rp.z), 1e-9 * std::max(1.0, std::abs(rp.z)));
  }
}

TEST(Modular, DeltaModularity) {
  const std::vector<BigInt> tau = delta_coefficients(40);
  std::vector<double> coeffs;
  for (const BigInt& t : tau) coeffs.push_back(to_double(t));
  for (const Complex z : {Complex(0.1, 1.2), Complex(-0.3, 0.8), Complex(0.45, 1.05)}) {
    const Complex f = cusp_form_value(coeffs, 12, z);
    const Complex g = cusp_form_value(coeffs, 12, -1.0 / z);
    EXPECT_LT(std::abs(g - std::pow(z, 12) * f), 1e-9 * std::abs(g));
    // Direct q-series at a point already in the fundamental domain.
    const Complex q = std::exp(Complex(0, 2 * pi) * z);
    Complex direct = 0, qn = q;
    for (double a : coeffs) {
      direct += a * qn;
      qn *= q;
    }
    if (std::abs(z) >= 1 && std::abs(z.real()) <= 0.5) EXPECT_LT(std::abs(f - direct), 1e-12 * std::abs(direct));
  }
}

TEST(Parallel, BlockedSumIsDeterministic) {
  const auto run = [] {
    return blocked_sum<double>(1000, [](std::size_t i) {
      double s = 0;
      for (int k = 1; k < 100; ++k) s += std::sin(static_cast<double>(i * k)) / k;
      return s;
    });
  };
  ::setenv("GEOZETA_THREADS", "1", 1);
  const double one = run();
  ::setenv("GEOZETA_THREADS", "4", 1);
  const double four = run();
  ::unsetenv("GEOZETA_THREADS");
  EXPECT_EQ(one, four);
  EXPECT_EQ(run(), one);
}
