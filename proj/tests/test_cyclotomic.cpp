#include <gtest/gtest.h>

#include <complex>
#include <random>

#include "oracles.hpp"

using namespace sliceob;

namespace {

Cyclotomic z(long n, long j = 1) { return Cyclotomic::zeta_power(n, j); }
Cyclotomic q(long n, long v) { return Cyclotomic::rational(n, v); }

}  // namespace

TEST(CyclotomicPolynomial, SmallConductors) {
  EXPECT_EQ(cyclotomic_polynomial(1), (IntPoly{-1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(8), (IntPoly{1, 0, 0, 0, 1}));
  EXPECT_EQ(cyclotomic_polynomial(16), (IntPoly{1, 0, 0, 0, 0, 0, 0, 0, 1}));
  EXPECT_EQ(cyclotomic_polynomial(6), (IntPoly{1, -1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(12), (IntPoly{1, 0, -1, 0, 1}));
}

TEST(CyclotomicPolynomial, VanishesAtZeta) {
  for (long n = 1; n <= 64; ++n) {
    const IntPoly phi = cyclotomic_polynomial(n);
    ASSERT_EQ(static_cast<long>(phi.size()) - 1, euler_phi(n));
    Cyclotomic acc(n);
    for (std::size_t j = phi.size(); j-- > 0;) acc = acc * z(n) + Cyclotomic::rational(n, Rational(phi[j]));
    EXPECT_TRUE(acc.is_zero()) << "n = " << n;
  }
}

TEST(CyclotomicRing, Reductions) {
  EXPECT_EQ(z(8, 4), q(8, -1));
  EXPECT_EQ(z(8).conj(), -z(8, 3));
  const Cyclotomic i = z(4);
  EXPECT_EQ((q(4, 6) + q(4, 3) * i) * (q(4, 6) - q(4, 3) * i), q(4, 45));
}

TEST(CyclotomicRing, ConductorMismatchThrows) {
  try {
    (void)(z(8) + z(16));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConductorMismatch);
  }
}

TEST(CyclotomicRing, ExactDivide) {
  const Cyclotomic a = q(8, 1) + z(8);
  const Cyclotomic b = q(8, 2) - z(8, 3);
  EXPECT_EQ(exact_divide(a * b, b), a);
  try {
    (void)exact_divide(q(8, 1), q(8, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotDivisible);
  }
  EXPECT_EQ(a / a, q(8, 1));
  EXPECT_EQ(a * a.inverse(), q(8, 1));
}

TEST(CyclotomicRing, AxiomsOnRandomTriples) {
  std::mt19937 rng(11);
  for (long n : {1L, 2L, 4L, 8L, 16L, 12L}) {
    for (int trial = 0; trial < 30; ++trial) {
      const auto x = oracle::random_cyclotomic(rng, n), y = oracle::random_cyclotomic(rng, n),
                 w = oracle::random_cyclotomic(rng, n);
      EXPECT_EQ((x * y) * w, x * (y * w));
      EXPECT_EQ(x * (y + w), x * y + x * w);
      EXPECT_EQ(x * y, y * x);
      EXPECT_EQ(x.conj().conj(), x);
      EXPECT_EQ((x * y).conj(), x.conj() * y.conj());
      EXPECT_EQ((x + y).conj(), x.conj() + y.conj());
      if (!y.is_zero()) {
        EXPECT_EQ((x / y) * y, x);
      }
    }
  }
}

TEST(CyclotomicRing, HermitianSquareIsNonNegativeInEveryEmbedding) {
  std::mt19937 rng(12);
  for (long n : {4L, 8L, 16L, 15L}) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto x = oracle::random_cyclotomic(rng, n);
      for (const auto& v : (x * x.conj()).embeddings()) {
        const double scale = std::max(1.0, std::abs(v));
        EXPECT_LE(std::abs(v.imag()), 1e-9 * scale);
        EXPECT_GE(v.real(), -1e-9 * scale);
      }
    }
  }
}

TEST(CyclotomicRing, EmbeddingMatchesDefinition) {
  std::mt19937 rng(13);
  const auto x = oracle::random_cyclotomic(rng, 8);
  std::complex<double> expect = 0;
  const auto c = x.coefficients();
  for (std::size_t j = 0; j < c.size(); ++j) expect += c[j].get_d() * std::polar(1.0, 2 * M_PI * j / 8.0);
  EXPECT_NEAR(std::abs(x.embed(1) - expect), 0.0, 1e-9);
}

TEST(Promote, Examples) {
  EXPECT_EQ(promote(z(8), 16), z(16, 2));
  EXPECT_EQ(promote(q(4, 45), 8), q(8, 45));
  EXPECT_EQ(promote(z(8), 16) * z(16), z(16, 3));
  try {
    (void)promote(z(8), 12);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotDivisor);
  }
}

TEST(Promote, RingEmbeddingAndDemoteRoundTrip) {
  std::mt19937 rng(14);
  for (auto [n, m] : {std::pair{4L, 8L}, {8L, 16L}, {3L, 12L}, {4L, 12L}, {1L, 16L}, {6L, 24L}}) {
    for (int trial = 0; trial < 15; ++trial) {
      const auto x = oracle::random_cyclotomic(rng, n), y = oracle::random_cyclotomic(rng, n);
      EXPECT_EQ(promote(x * y, m), promote(x, m) * promote(y, m));
      EXPECT_EQ(promote(x + y, m), promote(x, m) + promote(y, m));
      auto back = try_demote(promote(x, m), n);
      ASSERT_TRUE(back.has_value());
      EXPECT_EQ(*back, x);
    }
  }
  EXPECT_FALSE(try_demote(z(16), 8).has_value());
}

TEST(AsRational, Examples) {
  EXPECT_EQ(q(16, 2115).as_rational(), std::optional<Rational>(2115));
  EXPECT_FALSE(z(8).as_rational().has_value());
  const Cyclotomic sqrt2 = z(8) + z(8).conj();
  EXPECT_FALSE(sqrt2.as_rational().has_value());
  EXPECT_NE(sqrt2.coefficient(1), 0);
  EXPECT_NE(sqrt2.coefficient(3), 0);
  EXPECT_EQ((sqrt2 * sqrt2).as_rational(), std::optional<Rational>(2));
  EXPECT_EQ(Cyclotomic::rational(12, Rational(-3, 7)).as_rational(), std::optional<Rational>(Rational(-3, 7)));
}

TEST(RootOfUnityValue, Normalization) {
  EXPECT_EQ(RootOfUnity(4, 8), RootOfUnity(1, 2));
  EXPECT_EQ(RootOfUnity(8, 8), RootOfUnity(0, 1));
  EXPECT_EQ(RootOfUnity(-1, 4), RootOfUnity(3, 4));
  EXPECT_EQ(RootOfUnity(1, 8) * RootOfUnity(1, 16), RootOfUnity(3, 16));
  EXPECT_EQ(RootOfUnity(3, 16).to_string(), "3/16");
  EXPECT_EQ(Cyclotomic::root(16, RootOfUnity(1, 4)), z(16, 4));
}

TEST(CyclotomicFormat, ToString) {
  EXPECT_EQ((q(8, 3) + q(8, 2) * z(8, 2)).to_string(), "3 + 2*z8^2");
  EXPECT_EQ(q(8, 0).to_string(), "0");
}
