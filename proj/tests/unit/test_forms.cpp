#include "geozeta/forms.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace geozeta;

namespace {

Form F(std::int64_t a, std::int64_t b, std::int64_t c) { return Form(a, b, c); }

UnimodularMatrix from_word(const oracle::Word& w) { return {w.a, w.b, w.c, w.d}; }

/// Random primitive indefinite form with nonsquare discriminant.
Form random_form(std::mt19937_64& rng, int bound = 40) {
  std::uniform_int_distribution<int> coef(-bound, bound);
  while (true) {
    const BigInt a = coef(rng), b = coef(rng), c = coef(rng);
    const BigInt d = b * b - 4 * a * c;
    if (d <= 0 || is_square(d) || gcd(a, b, c) != 1) continue;
    return Form(a, b, c);
  }
}

}  // namespace

TEST(Forms, DiscriminantExamples) {
  EXPECT_EQ(F(3, -12, 7).discriminant(), 60);
  EXPECT_EQ(F(1, -3, 1).discriminant(), 5);
  EXPECT_THROW(F(1, 0, -1), std::invalid_argument);
  EXPECT_THROW(F(1, 1, 1), std::invalid_argument);
  EXPECT_THROW(F(2, 4, -6), std::invalid_argument);
  RealForm degenerate{1, 0, -1};
  EXPECT_DOUBLE_EQ(degenerate.discriminant(), 4.0);
}

TEST(Forms, ParseLiteral) {
  EXPECT_EQ(Form::parse("3,-12,7"), F(3, -12, 7));
  EXPECT_EQ(Form::parse("-1,0,15").str(), "-1,0,15");
  for (const char* bad : {"3,-12", "3,-12,7,1", "a,b,c", "3, -12,7", "", "3,,7"})
    EXPECT_THROW(Form::parse(bad), std::invalid_argument) << bad;
}

TEST(Forms, TransformExamples) {
  EXPECT_EQ(transform(F(3, -12, 7), UnimodularMatrix::step(4)), F(7, -12, 3));
  EXPECT_EQ(transform(F(3, -12, 7), UnimodularMatrix::identity()), F(3, -12, 7));
  EXPECT_EQ(transform(F(1, -4, 1), UnimodularMatrix::step(4)), F(1, -4, 1));
}

TEST(Forms, RightActionAndDiscriminantInvariance) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const Form q = random_form(rng, 1000);
    const UnimodularMatrix g1 = from_word(oracle::random_sl2(rng, 3, 5));
    const UnimodularMatrix g2 = from_word(oracle::random_sl2(rng, 3, 5));
    EXPECT_EQ(transform(transform(q, g1), g2), transform(q, g1 * g2));
    EXPECT_EQ(transform(q, g1).discriminant(), q.discriminant());
    // Substituting into the polynomial agrees with the coefficient formula.
    const Form t = transform(q, g1);
    for (const auto& [x, y] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{2, -3}})
      EXPECT_EQ(t(x, y), q(g1.a() * x + g1.b() * y, g1.c() * x + g1.d() * y));
  }
}

TEST(Forms, Roots) {
  const auto [xp, x] = roots(F(3, -12, 7));
  EXPECT_EQ(x.with_squarefree_radicand(), QuadExact(6, 1, 3, 15));
  EXPECT_EQ(xp.with_squarefree_radicand(), QuadExact(6, -1, 3, 15));
  EXPECT_EQ(roots(F(1, -3, 1)).second, QuadExact(3, 1, 2, 5));
  EXPECT_EQ(roots(F(7, -16, 7)).second.with_squarefree_radicand(), QuadExact(8, 1, 7, 15));
  EXPECT_EQ(roots(F(7, -16, 7)).first.with_squarefree_radicand(), QuadExact(8, -1, 7, 15));
}

TEST(Forms, CompanionExamples) {
  const IntMatrix n = companion(F(3, -12, 7));
  EXPECT_EQ(n, (IntMatrix{12, -14, 6, -12}));
  EXPECT_EQ(n.det(), -60);
}

TEST(Forms, CompanionAppendixProperties) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 500; ++i) {
    const Form q = random_form(rng, 200);
    const IntMatrix n = companion(q);
    const BigInt& d = q.discriminant();
    EXPECT_EQ(n.det(), -d);
    EXPECT_EQ(n * n, (IntMatrix{d, 0, 0, d}));
    const UnimodularMatrix g = from_word(oracle::random_sl2(rng, 4, 4));
    // g N_Q g^{-1} = N_{gQ} with gQ = Q|g^{-1}.
    EXPECT_EQ(g.matrix() * n * g.inverse().matrix(), companion(act(g, q)));
  }
}

TEST(Forms, ReducedPredicate) {
  EXPECT_TRUE(is_reduced(F(3, -12, 7)));
  EXPECT_FALSE(is_reduced(F(1, 0, -15)));
  EXPECT_TRUE(is_reduced(F(1, -4, 1)));
  EXPECT_FALSE(is_reduced(F(-1, 4, -1)));
}

TEST(Forms, ReduceExamples) {
  const ReductionResult r = reduce(F(1, 0, -15));
  EXPECT_EQ(r.reduced, F(1, -8, 1));
  EXPECT_EQ(r.steps, 1u);
  EXPECT_EQ(transform(F(1, 0, -15), r.transform), r.reduced);
  const ReductionResult same = reduce(F(3, -12, 7));
  EXPECT_EQ(same.reduced, F(3, -12, 7));
  EXPECT_EQ(same.steps, 0u);
  const ReductionResult neg = reduce(F(-1, 0, 15));
  EXPECT_TRUE(is_reduced(neg.reduced));
  EXPECT_EQ(transform(F(-1, 0, 15), neg.transform), neg.reduced);
}

TEST(Forms, ReduceRandom) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 500; ++i) {
    const Form q = random_form(rng, 10000);
    const ReductionResult r = reduce(q);
    ASSERT_TRUE(is_reduced(r.reduced)) << q.str();
    EXPECT_EQ(transform(q, r.transform), r.reduced);
    EXPECT_EQ(r.transform.matrix().det(), 1);
  }
}

TEST(Forms, CycleExamples) {
  const Cycle c = cycle_of(F(3, -12, 7));
  EXPECT_EQ(c.forms, (std::vector<Form>{F(3, -12, 7), F(7, -12, 3), F(7, -16, 7)}));
  EXPECT_EQ(c.quotients, (std::vector<BigInt>{4, 2, 2}));
  EXPECT_EQ(cycle_of(F(1, -3, 1)).quotients, std::vector<BigInt>{3});
  EXPECT_EQ(cycle_of(F(1, -8, 1)).quotients, std::vector<BigInt>{8});
  for (const BigInt& m : c.quotients) EXPECT_GE(m, 2);
}

TEST(Forms, EnumerationMatchesBruteForce) {
  for (std::int64_t d = 5; d <= 200; ++d) {
    if ((d % 4 != 0 && d % 4 != 1) || is_square(BigInt(d))) continue;
    std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t>> expected;
    for (const auto& [a, b, c] : oracle::reduced_forms(d))
      if (std::gcd(std::gcd(a, b), c) == 1) expected.emplace(a, b, c);
    std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t>> got;
    for (const Form& f : enumerate_reduced(BigInt(d))) {
      EXPECT_TRUE(is_reduced(f));
      got.emplace(to_int64(f.A()), to_int64(f.B()), to_int64(f.C()));
    }
    EXPECT_EQ(got, expected) << "D = " << d;
  }
}

TEST(Forms, EnumerationExamples) {
  EXPECT_EQ(enumerate_reduced(5), std::vector<Form>{F(1, -3, 1)});
  const std::vector<Form> d12 = enumerate_reduced(12);
  EXPECT_EQ(std::set<Form>(d12.begin(), d12.end()), (std::set<Form>{F(1, -4, 1), F(2, -6, 3), F(3, -6, 2)}));
  const std::vector<Form> d60 = enumerate_reduced(60);
  EXPECT_EQ(d60.size(), 12u);
  for (const Form& f : {F(1, -8, 1), F(2, -10, 5), F(3, -12, 7), F(7, -16, 7), F(6, -18, 11), F(15, -30, 14)})
    EXPECT_NE(std::find(d60.begin(), d60.end(), f), d60.end()) << f.str();
}

TEST(Forms, CyclesPartitionReducedForms) {
  for (std::int64_t d = 5; d <= 300; ++d) {
    if ((d % 4 != 0 && d % 4 != 1) || is_square(BigInt(d))) continue;
    const ClassTable t = narrow_classes(d);
    std::multiset<Form> covered;
    for (const Cycle& c : t.cycles) {
      // The cycle returns to its start.
      Form cur = c.forms.front();
      for (const BigInt& m : c.quotients) cur = transform(cur, UnimodularMatrix::step(m));
      EXPECT_EQ(cur, c.forms.front());
      covered.insert(c.forms.begin(), c.forms.end());
    }
    const std::vector<Form> all = enumerate_reduced(d);
    EXPECT_EQ(covered, std::multiset<Form>(all.begin(), all.end())) << "D = " << d;
  }
}

TEST(Forms, NarrowClassExamples) {
  EXPECT_EQ(narrow_classes(5).cycles.size(), 1u);
  EXPECT_EQ(narrow_classes(12).cycles.size(), 2u);
  const ClassTable t = narrow_classes(60);
  std::multiset<std::size_t> lengths;
  for (const Cycle& c : t.cycles) lengths.insert(c.size());
  EXPECT_EQ(lengths, (std::multiset<std::size_t>{1, 2, 3, 6}));
}

TEST(Forms, PellExamples) {
  EXPECT_EQ(pell_fundamental(60).v, 8);
  EXPECT_EQ(pell_fundamental(60).u, 1);
  EXPECT_EQ(pell_fundamental(5).v, 3);
  EXPECT_EQ(pell_fundamental(5).u, 1);
  EXPECT_EQ(pell_fundamental(12).v, 4);
  EXPECT_EQ(pell_fundamental(12).u, 1);
  EXPECT_THROW(pell_fundamental(7), std::invalid_argument);
  EXPECT_THROW(pell_fundamental(16), std::invalid_argument);
}

TEST(Forms, PellSolutionsSmallDiscriminants) {
  // Full minimality scan where the solution is small enough to scan up to.
  for (std::int64_t d = 5; d <= 500; ++d) {
    if ((d % 4 != 0 && d % 4 != 1) || is_square(BigInt(d))) continue;
    const PellSolution p = pell_fundamental(d);
    EXPECT_EQ(p.v * p.v - d * p.u * p.u, 4) << "D = " << d;
    if (p.u <= 20000) EXPECT_EQ(oracle::pell_scan(d, 20000), to_int64(p.u)) << "D = " << d;
  }
}

TEST(Forms, FundamentalUnitExamples) {
  const FundamentalUnit u5 = fundamental_unit(5);
  EXPECT_EQ(u5.eps, QuadExact(1, 1, 2, 5));
  EXPECT_EQ(u5.normSign, -1);
  EXPECT_EQ(u5.f, 2);
  const FundamentalUnit u60 = fundamental_unit(60);
  EXPECT_EQ(u60.eps, QuadExact(8, 1, 2, 60));
  EXPECT_EQ(u60.normSign, 1);
  EXPECT_EQ(u60.f, 1);
  const FundamentalUnit u12 = fundamental_unit(12);
  EXPECT_EQ(u12.eps, QuadExact(4, 1, 2, 12));
  EXPECT_EQ(u12.f, 1);
  // eps^f is the Pell unit.
  for (std::int64_t d : {5, 8, 12, 13, 17, 21, 24, 29, 60, 61, 85, 101}) {
    const FundamentalUnit u = fundamental_unit(d);
    const PellSolution p = pell_fundamental(d);
    const QuadExact pell_unit(p.v, p.u, 2, d);
    EXPECT_EQ(u.f == 1 ? u.eps : u.eps * u.eps, pell_unit) << "D = " << d;
    EXPECT_EQ(u.eps.norm(), BigRational(u.normSign)) << "D = " << d;
  }
}

TEST(Forms, StabilizerExamples) {
  EXPECT_TRUE(stabilizer_generator(F(1, -3, 1)).equals_exactly(UnimodularMatrix(3, -1, 1, 0)));
  const UnimodularMatrix g = stabilizer_generator(F(3, -12, 7));
  EXPECT_TRUE(g.equals_exactly(UnimodularMatrix(10, -7, 3, -2)));
  const UnimodularMatrix prod = UnimodularMatrix::step(4) * UnimodularMatrix::step(2) * UnimodularMatrix::step(2);
  EXPECT_TRUE(g.equals_exactly(prod));
}

TEST(Forms, StabilizerFixesFormAndMatchesCycle) {
  for (std::int64_t d = 5; d <= 200; ++d) {
    if ((d % 4 != 0 && d % 4 != 1) || is_square(BigInt(d))) continue;
    for (const Cycle& c : narrow_classes(d).cycles) {
      for (std::size_t j = 0; j < c.size(); ++j) {
        const Form& q = c.forms[j];
        const UnimodularMatrix g = stabilizer_generator(q);
        EXPECT_EQ(transform(q, g), q);
        EXPECT_EQ(g.matrix().det(), 1);
        Cycle rotated;
        for (std::size_t k = 0; k < c.size(); ++k) {
          rotated.forms.push_back(c.forms[(j + k) % c.size()]);
          rotated.quotients.push_back(c.quotients[(j + k) % c.size()]);
        }
        EXPECT_EQ(g, cycle_matrix(rotated)) << q.str();
      }
    }
  }
}

TEST(Forms, UnitMatrixMultiplicativity) {
  for (std::int64_t d : {5, 12, 13, 60, 92}) {
    for (const Form& q : enumerate_reduced(d)) {
      const PellSolution p = pell_fundamental(d);
      const QuadExact eps(p.v, p.u, 2, d);
      std::vector<QuadExact> powers{eps, eps * eps, eps * eps * eps};
      const auto m_of = [&](const QuadExact& e) {
        // e = (v + u sqrt D)/2.
        const BigInt v = 2 * e.p() / e.r(), u = 2 * e.q() / e.r();
        EXPECT_EQ(v * e.r(), 2 * e.p());
        return unit_matrix(q, v, u);
      };
      for (std::size_t i = 0; i < powers.size(); ++i)
        for (std::size_t j = 0; i + j + 1 < powers.size(); ++j)
          EXPECT_TRUE((m_of(powers[i]) * m_of(powers[j])).equals_exactly(m_of(powers[i + j + 1])));
    }
  }
}

TEST(Forms, WideClassExamples) {
  const ClassTable t5 = wide_class_table(5);
  EXPECT_EQ(t5.widePairs.size(), 1u);
  EXPECT_EQ(t5.f, 2);
  const ClassTable t12 = wide_class_table(12);
  EXPECT_EQ(t12.widePairs.size(), 1u);
  EXPECT_EQ(t12.f, 1);
  const auto [i, j] = t12.widePairs.front();
  EXPECT_NE(i, j);
  const ClassTable t60 = wide_class_table(60);
  EXPECT_EQ(t60.cycles.size(), 4u);
  EXPECT_EQ(t60.widePairs.size(), 2u);
  EXPECT_THROW(wide_class_table(20), std::invalid_argument);
}

TEST(Forms, WidePairingAgreesWithNegation) {
  // reduce(-Q) lands in the narrow class paired with the class of Q.
  for (std::int64_t d : {12, 21, 24, 28, 33, 60, 65, 85, 105, 140, 165}) {
    if (!is_fundamental_discriminant(d)) continue;
    const ClassTable t = wide_class_table(d);
    for (const auto& [i, j] : t.widePairs) {
      const Form q = t.cycles[i].forms.front();
      const std::size_t k = t.cycle_index(reduce(-q).reduced);
      if (t.f == 1)
        EXPECT_EQ(k, j) << "D = " << d << " Q = " << q.str();
      else
        EXPECT_EQ(k, i);
    }
  }
}

TEST(Forms, FundamentalDiscriminants) {
  for (std::int64_t d : {5, 8, 12, 13, 17, 21, 24, 28, 60, 85}) EXPECT_TRUE(is_fundamental_discriminant(d)) << d;
  for (std::int64_t d : {20, 32, 45, 48, 16, 7, 9}) EXPECT_FALSE(is_fundamental_discriminant(d)) << d;
}
