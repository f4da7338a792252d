#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace sliceob;

namespace {

using Poly = LaurentPoly<Cyclotomic>;
using QPoly = LaurentPoly<Rational>;

Poly random_poly(std::mt19937& rng, int nvars, int max_terms, long n = 8) {
  Poly p(nvars);
  std::uniform_int_distribution<int> e(-2, 2);
  const int terms = 1 + rng() % max_terms;
  for (int i = 0; i < terms; ++i) {
    Exponent x(nvars);
    for (auto& v : x) v = e(rng);
    p.add_term(x, oracle::random_cyclotomic(rng, n, 2));
  }
  return p;
}

LaurentMatrix<Cyclotomic> random_matrix(std::mt19937& rng, std::size_t k, int nvars, int max_terms) {
  LaurentMatrix<Cyclotomic> m(k, k, nvars, Cyclotomic::one(8));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (rng() % 4) m(i, j) = random_poly(rng, nvars, max_terms);
  return m;
}

QPoly qpoly(std::initializer_list<std::pair<int, long>> terms) {
  QPoly p(1);
  for (auto [e, c] : terms) p.add_term({e}, Rational(c));
  return p;
}

}  // namespace

TEST(LaurentPolys, ZeroIsEmpty) {
  Poly p(2);
  p.add_term({1, 0}, Cyclotomic::one(8));
  p.add_term({1, 0}, -Cyclotomic::one(8));
  EXPECT_TRUE(p.is_zero());
  EXPECT_EQ(p.term_count(), 0u);
  try {
    p.add_term({1}, Cyclotomic::one(8));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(LaurentPolys, ArithmeticMatchesPointEvaluation) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const Poly f = random_poly(rng, 2, 4), g = random_poly(rng, 2, 4);
    const std::vector<Rational> pt{Rational(3, 2), Rational(-5, 7)};
    const Cyclotomic zero(8);
    EXPECT_EQ((f * g).evaluate_rational(pt, zero), f.evaluate_rational(pt, zero) * g.evaluate_rational(pt, zero));
    EXPECT_EQ((f + g).evaluate_rational(pt, zero), f.evaluate_rational(pt, zero) + g.evaluate_rational(pt, zero));
  }
}

TEST(LaurentPolys, ProductMatchesDenseConvolution) {
  std::mt19937 rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<long> a(1 + rng() % 5), b(1 + rng() % 5);
    for (auto& x : a) x = static_cast<long>(rng() % 7) - 3;
    for (auto& x : b) x = static_cast<long>(rng() % 7) - 3;
    std::vector<long> conv(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) conv[i + j] += a[i] * b[j];
    QPoly pa(1), pb(1), pc(1);
    for (std::size_t i = 0; i < a.size(); ++i) pa.add_term({static_cast<int>(i) - 2}, a[i]);
    for (std::size_t i = 0; i < b.size(); ++i) pb.add_term({static_cast<int>(i) + 1}, b[i]);
    for (std::size_t i = 0; i < conv.size(); ++i) pc.add_term({static_cast<int>(i) - 1}, conv[i]);
    EXPECT_EQ(pa * pb, pc);
  }
}

TEST(Bar, Examples) {
  const Cyclotomic one = Cyclotomic::one(8);
  EXPECT_EQ(Poly::variable(1, 1, one).bar(), Poly::monomial({-1}, one));
  const Poly p = Poly::monomial({1, -1}, Cyclotomic::zeta_power(8, 1));
  EXPECT_EQ(p.bar(), Poly::monomial({-1, 1}, -Cyclotomic::zeta_power(8, 3)));
  std::mt19937 rng(33);
  for (int trial = 0; trial < 30; ++trial) {
    const Poly f = random_poly(rng, 2, 5), g = random_poly(rng, 2, 5);
    EXPECT_EQ(f.bar().bar(), f);
    EXPECT_EQ((f * g).bar(), f.bar() * g.bar());
    EXPECT_EQ((f + g).bar(), f.bar() + g.bar());
  }
  const RationalFunction<Cyclotomic> r(p, Poly::constant(2, one) + p);
  EXPECT_EQ(r.bar().bar(), r);
}

TEST(ExactDivision, RecoversFactors) {
  std::mt19937 rng(34);
  for (int trial = 0; trial < 30; ++trial) {
    const Poly f = random_poly(rng, 2, 4), g = random_poly(rng, 2, 3);
    if (g.is_zero()) continue;
    const auto q = divide_exact(f * g, g);
    ASSERT_TRUE(q.has_value());
    EXPECT_EQ(*q, f);
  }
  EXPECT_FALSE(divide_exact(qpoly({{0, 1}, {2, 1}}), qpoly({{0, 1}, {1, -1}})).has_value());
}

TEST(RationalFunctions, CrossMultipliedEquality) {
  const QPoly a = qpoly({{0, 1}, {1, -1}}), b = qpoly({{0, 2}, {1, 1}});
  EXPECT_EQ(RationalFunction<Rational>(a * b, b * b), RationalFunction<Rational>(a, b));
  EXPECT_FALSE(RationalFunction<Rational>(a, b) == RationalFunction<Rational>(b, a));
  try {
    RationalFunction<Rational>(a, QPoly(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DivisionByZero);
  }
}

TEST(LaurentDet, Examples) {
  LaurentMatrix<Rational> one_by_one(1, 1, 1, Rational(1));
  one_by_one(0, 0) = qpoly({{0, 1}, {1, -1}});
  EXPECT_EQ(laurent_det(one_by_one), qpoly({{0, 1}, {1, -1}}));

  LaurentMatrix<Rational> trefoil(2, 2, 1, Rational(1));
  trefoil(0, 0) = qpoly({{0, -1}, {1, 1}});
  trefoil(0, 1) = qpoly({{1, -1}});
  trefoil(1, 0) = qpoly({{0, 1}});
  trefoil(1, 1) = qpoly({{0, -1}, {1, 1}});
  EXPECT_EQ(laurent_det(trefoil), qpoly({{0, 1}, {1, -1}, {2, 1}}));

  LaurentMatrix<Rational> empty(0, 0, 1, Rational(1));
  EXPECT_EQ(laurent_det(empty), qpoly({{0, 1}}));
}

TEST(LaurentDet, AgreesWithCofactorExpansion) {
  std::mt19937 rng(35);
  for (int trial = 0; trial < 30; ++trial) {
    const auto m = random_matrix(rng, 1 + rng() % 4, 2, 3);
    EXPECT_EQ(laurent_det(m), oracle::laurent_cofactor_det(m));
  }
}

TEST(LaurentDet, MultiplicativeAndTransposeInvariant) {
  std::mt19937 rng(36);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t k = 1 + rng() % 3;
    const auto a = random_matrix(rng, k, 2, 2), b = random_matrix(rng, k, 2, 2);
    EXPECT_EQ(laurent_det(laurent_multiply(a, b)), laurent_det(a) * laurent_det(b));
    EXPECT_EQ(laurent_det(a.transposed()), laurent_det(a));
  }
}

TEST(LaurentDet, UnimodularCongruence) {
  std::mt19937 rng(37);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t k = 2 + rng() % 3;
    const auto a = random_matrix(rng, k, 2, 2);
    const IntMatrix p = oracle::random_unimodular(rng, static_cast<int>(k));
    LaurentMatrix<Cyclotomic> pm(k, k, 2, Cyclotomic::one(8));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (p(i, j)) pm(i, j) = Poly::constant(2, Cyclotomic::rational(8, p(i, j)));
    EXPECT_EQ(laurent_det(laurent_multiply(laurent_multiply(pm, a), pm.transposed())), laurent_det(a));
  }
}

TEST(LaurentRank, Examples) {
  LaurentMatrix<Rational> zero(3, 2, 1, Rational(1));
  EXPECT_EQ(laurent_rank(zero), 0u);
  LaurentMatrix<Rational> id(4, 4, 2, Rational(1));
  for (int i = 0; i < 4; ++i) id(i, i) = QPoly::constant(2, 1);
  EXPECT_EQ(laurent_rank(id), 4u);

  LaurentMatrix<Rational> fig8(2, 2, 1, Rational(1));
  fig8(0, 0) = qpoly({{0, 1}, {1, -1}});
  fig8(0, 1) = qpoly({{1, -1}});
  fig8(1, 0) = qpoly({{0, 1}});
  fig8(1, 1) = qpoly({{0, -1}, {1, 1}});
  EXPECT_EQ(laurent_rank(fig8), 2u);
  EXPECT_EQ(laurent_det(fig8), qpoly({{0, -1}, {1, 3}, {2, -1}}));
}

TEST(LaurentRank, DeficientMatricesUseElimination) {
  // rows 2 and 3 are (1 + t1) and (t2 - 1) times row 1: rank 1 everywhere,
  // so no specialization certifies full rank
  std::mt19937 rng(38);
  for (int trial = 0; trial < 10; ++trial) {
    LaurentMatrix<Cyclotomic> m(3, 3, 2, Cyclotomic::one(8));
    const Poly f1 = Poly::constant(2, Cyclotomic::one(8)) + Poly::variable(2, 1, Cyclotomic::one(8));
    const Poly f2 = Poly::variable(2, 2, Cyclotomic::one(8)) - Poly::constant(2, Cyclotomic::one(8));
    for (std::size_t j = 0; j < 3; ++j) {
      m(0, j) = random_poly(rng, 2, 3);
      m(1, j) = m(0, j) * f1;
      m(2, j) = m(0, j) * f2;
    }
    EXPECT_EQ(laurent_rank(m), 1u);
    EXPECT_EQ(detail::bareiss_rank(m.entries, 2, Cyclotomic::one(8)), 1u);
    EXPECT_FALSE(laurent_det_nonzero(m));
    // column and row permutations do not change the rank
    LaurentMatrix<Cyclotomic> swapped = m;
    swapped.entries.swap_rows(0, 2);
    swapped.entries.swap_cols(0, 1);
    EXPECT_EQ(laurent_rank(swapped), 1u);
  }
}

TEST(LaurentRank, FullRankMatchesNonzeroDeterminant) {
  std::mt19937 rng(39);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = random_matrix(rng, 1 + rng() % 4, 2, 2);
    const bool nonzero = !laurent_det(m).is_zero();
    EXPECT_EQ(laurent_rank(m) == m.rows(), nonzero);
    EXPECT_EQ(detail::bareiss_rank(m.entries, 2, Cyclotomic::one(8)) == m.rows(), nonzero);
  }
}
