#include "geozeta/geodesics.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace geozeta;

namespace {

Form F(std::int64_t a, std::int64_t b, std::int64_t c) { return Form(a, b, c); }

double matrix_distance(const RealMatrix& x, const RealMatrix& y) {
  return std::max({std::abs(x.a - y.a), std::abs(x.b - y.b), std::abs(x.c - y.c), std::abs(x.d - y.d)});
}

std::vector<Form> sample_forms() {
  return {F(1, -3, 1), F(3, -12, 7), F(7, -16, 7), F(1, 0, -2), F(2, -6, 3), F(-3, 12, -7),
          F(5, 13, -7), F(1, -8, 1), F(-2, 1, 4), F(6, -18, 11)};
}

}  // namespace

TEST(Geodesics, CircleExamples) {
  const Circle c1 = circle_of(F(1, 0, -15));
  EXPECT_NEAR(c1.center, 0.0, 1e-15);
  EXPECT_NEAR(c1.radius, std::sqrt(15.0), 1e-14);
  const Circle c2 = circle_of(F(1, -3, 1));
  EXPECT_NEAR(c2.center, 1.5, 1e-15);
  EXPECT_NEAR(c2.radius, std::sqrt(5.0) / 2, 1e-15);
  const Circle c3 = circle_of(F(3, -12, 7));
  EXPECT_NEAR(c3.center, 2.0, 1e-15);
  EXPECT_NEAR(c3.radius, std::sqrt(60.0) / 6, 1e-15);
}

TEST(Geodesics, PointExamples) {
  const Complex z0 = point_at(F(1, -3, 1), 0.0).z;
  EXPECT_NEAR(std::abs(z0 - Complex(1.5, std::sqrt(5.0) / 2)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(point_at(RealForm{1, 0, -1}, 0.0).z - Complex(0, 1)), 0.0, 1e-15);
  EXPECT_NEAR(point_at(F(1, -3, 1), 45.0).z.real(), (3 + std::sqrt(5.0)) / 2, 1e-12);
}

TEST(Geodesics, PointsLieOnCircle) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> t(-20, 20);
  for (const Form& q : sample_forms()) {
    const RealForm r = RealForm::from(q);
    for (int i = 0; i < 50; ++i) {
      const Complex z = point_at(q, t(rng)).z;
      ASSERT_GT(z.imag(), 0);
      const double scale = std::abs(r.A) * std::norm(z) + std::abs(r.B * z.real()) + std::abs(r.C);
      EXPECT_LE(std::abs(r.A * std::norm(z) + r.B * z.real() + r.C), 1e-12 * scale);
    }
  }
}

TEST(Geodesics, EndpointLimits) {
  for (const Form& q : sample_forms()) {
    const auto [xp, x] = real_roots(q);
    EXPECT_NEAR(std::abs(point_at(q, 40.0).z - Complex(x, 0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(point_at(q, -40.0).z - Complex(xp, 0)), 0.0, 1e-12);
  }
}

TEST(Geodesics, UnitSpeed) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> t(-6, 6);
  const std::vector<Form> forms = sample_forms();
  for (int i = 0; i < 100; ++i) {
    const Form& q = forms[static_cast<std::size_t>(i) % forms.size()];
    const double s = t(rng), u = t(rng);
    EXPECT_NEAR(hyperbolic_distance(point_at(q, s).z, point_at(q, u).z), std::abs(s - u), 1e-9);
  }
}

TEST(Geodesics, VelocityMatchesDifferenceQuotient) {
  const Form q = F(3, -12, 7);
  for (double t : {-2.0, -0.4, 0.0, 0.7, 3.0}) {
    const double h = 1e-5;
    const Complex fd = (point_at(q, t + h).z - point_at(q, t - h).z) / (2 * h);
    EXPECT_LT(std::abs(fd - point_velocity(q, t)), 1e-8);
  }
}

TEST(Geodesics, LengthDifferentialExamples) {
  EXPECT_LE(length_differential_residual(F(1, -3, 1), 0.3), 1e-10);
  EXPECT_LE(length_differential_residual(F(3, -12, 7), -2.0), 1e-10);
  const Form neg = F(-3, 12, -7);
  EXPECT_LE(length_differential_residual(neg, 0.5), 1e-10);
  // The differential itself is -dt for A < 0.
  const Complex z = point_at(neg, 0.5).z;
  const Complex lhs = -std::sqrt(60.0) / evaluate(neg, z) * point_velocity(neg, 0.5);
  EXPECT_NEAR(lhs.real(), -1.0, 1e-10);
}

TEST(Geodesics, LengthDifferentialRandom) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> t(-8, 8);
  const std::vector<Form> forms = sample_forms();
  for (int i = 0; i < 100; ++i)
    EXPECT_LE(length_differential_residual(forms[static_cast<std::size_t>(i) % forms.size()], t(rng)), 1e-10);
}

TEST(Geodesics, PeriodLengthExamples) {
  EXPECT_NEAR(period_length(BigInt(5)), 1.9248473002, 1e-10);
  EXPECT_NEAR(period_length(BigInt(60)), 2 * std::log(4 + std::sqrt(15.0)), 1e-12);
  EXPECT_NEAR(period_length(BigInt(60)), 4.12687413779, 1e-10);
  EXPECT_NEAR(period_length(BigInt(12)), 2 * std::log(2 + std::sqrt(3.0)), 1e-12);
}

TEST(Geodesics, ShiftMatrixExamples) {
  EXPECT_LT(matrix_distance(shift_matrix(F(3, -12, 7), 0.0), RealMatrix::identity()), 1e-15);
  EXPECT_LT(matrix_distance(shift_matrix(F(1, -3, 1), 2 * std::log((3 + std::sqrt(5.0)) / 2)), RealMatrix{3, -1, 1, 0}), 1e-10);
  EXPECT_LT(matrix_distance(shift_matrix(F(3, -12, 7), 2 * std::log(4 + std::sqrt(15.0))), RealMatrix{10, -7, 3, -2}), 1e-10);
}

TEST(Geodesics, ShiftMatrixGroupLawAndAction) {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> t(-3, 3);
  for (const Form& q : sample_forms()) {
    for (int i = 0; i < 10; ++i) {
      const double s = t(rng), u = t(rng);
      EXPECT_LT(matrix_distance(shift_matrix(q, s) * shift_matrix(q, u), shift_matrix(q, s + u)), 1e-10);
      // M_s moves z_t along C_Q by sign(A) s.
      const double sign = q.A() > 0 ? 1.0 : -1.0;
      EXPECT_LT(std::abs(mobius(shift_matrix(q, s), point_at(q, u).z) - point_at(q, u + sign * s).z), 1e-9);
    }
  }
}

TEST(Geodesics, FullPeriodClosure) {
  for (const Form& q : sample_forms()) {
    const UnimodularMatrix g = stabilizer_generator(q);
    const double len = period_length(q);
    const double sign = q.A() > 0 ? 1.0 : -1.0;
    for (double t : {-1.5, 0.0, 0.8}) {
      EXPECT_LT(std::abs(mobius(g, point_at(q, t).z) - point_at(q, t + sign * len).z), 1e-9) << q.str();
    }
  }
  const Form q = F(3, -12, 7);
  EXPECT_LT(std::abs(mobius(UnimodularMatrix(10, -7, 3, -2), point_at(q, 0).z) - point_at(q, period_length(q)).z), 1e-10);
}

TEST(Geodesics, MobiusExamples) {
  EXPECT_LT(std::abs(mobius(UnimodularMatrix::inversion(), Complex(0, 1)) - Complex(0, 1)), 1e-15);
  const Complex z(0.3, 1.7);
  EXPECT_LT(std::abs(mobius(UnimodularMatrix::translation(1), z) - (z + 1.0)), 1e-15);
  // N^2 - (N^2 - 1) = 1 exactly, but not in double precision.
  const std::int64_t n = 200000000;
  const Complex w = mobius(UnimodularMatrix(n, n - 1, n + 1, n), Complex(0, 1));
  // w = (2N^2 + i) / (2N^2 + 2N + 1).
  const double dn = static_cast<double>(n);
  EXPECT_NEAR(w.real(), 2 * dn * dn / (2 * dn * dn + 2 * dn + 1), 1e-12);
}
