#include "chatelet/arith.hpp"
#include "chatelet/factor.hpp"
#include "chatelet/rational.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace chatelet;

TEST(Rational, NormalizesSignAndCommonFactors) {
  const Rational r(Integer(6), Integer(-4));
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(Rational(0, 7).den(), 1);
  EXPECT_EQ(Rational::parse("-10/4"), Rational(-5, 2));
  EXPECT_EQ(Rational::parse("7"), Rational(7));
  EXPECT_THROW(Rational::parse("1/0"), std::exception);
  EXPECT_THROW(Rational::parse("x"), std::exception);
}

TEST(Rational, Height) {
  EXPECT_EQ(height(Rational(0)), 0);
  EXPECT_EQ(height(Rational(-7, 3)), 7);
  EXPECT_EQ(height(Rational(2, 9)), 9);
  for (const auto& r : oracle::rationals_up_to(20)) EXPECT_EQ(height(r), height(-r));
}

TEST(Factor, Examples) {
  const Factorization f12 = factor(12);
  EXPECT_EQ(f12.sign, 1);
  ASSERT_EQ(f12.factors.size(), 2u);
  EXPECT_EQ(f12.factors[0], (PrimePower{2, 2}));
  EXPECT_EQ(f12.factors[1], (PrimePower{3, 1}));

  const Factorization m1 = factor(-1);
  EXPECT_EQ(m1.sign, -1);
  EXPECT_TRUE(m1.factors.empty());

  const Factorization f = factor(80314);
  ASSERT_EQ(f.factors.size(), 3u);
  EXPECT_EQ(f.factors[0], (PrimePower{2, 1}));
  EXPECT_EQ(f.factors[1], (PrimePower{13, 1}));
  EXPECT_EQ(f.factors[2], (PrimePower{3089, 1}));
  EXPECT_THROW(factor(0), std::exception);
}

TEST(Factor, AgreesWithTrialDivisionUpTo1e5) {
  for (long n = 2; n <= 100000; ++n) {
    const Factorization f = factor(n);
    ASSERT_EQ(f.value(), n);
    const auto ref = oracle::trial_factor(n);
    ASSERT_EQ(f.factors.size(), ref.size()) << n;
    std::size_t i = 0;
    for (const auto& [p, e] : ref) {
      ASSERT_EQ(f.factors[i].prime, static_cast<long>(p)) << n;
      ASSERT_EQ(f.factors[i].exponent, static_cast<unsigned>(e)) << n;
      ++i;
    }
  }
}

TEST(Factor, LargeInputsReconstruct) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Integer n = from_u64(rng() | 1);
    n *= from_u64(rng() >> 20);
    if (sgn(n) == 0) continue;
    const Factorization f = factor(n);
    ASSERT_EQ(f.value(), n);
    for (std::size_t k = 0; k < f.factors.size(); ++k) {
      EXPECT_TRUE(is_prime(f.factors[k].prime));
      if (k > 0) {
        EXPECT_LT(f.factors[k - 1].prime, f.factors[k].prime);
      }
    }
  }
}

TEST(Factor, PrimalityMatchesTrialDivision) {
  for (long n = 0; n < 20000; ++n) ASSERT_EQ(is_prime(Integer(n)), oracle::trial_prime(n)) << n;
  EXPECT_TRUE(is_prime_u64(18446744073709551557ULL));  // largest 64-bit prime
  EXPECT_FALSE(is_prime_u64(3215031751ULL));           // strong pseudoprime to bases 2, 3, 5, 7
}

TEST(Factor, BudgetExhaustionIsReported) {
  // Product of two primes near 2^80 with a starved rho budget.
  Integer p, q;
  const Integer base = pow(Integer(2), 80);
  mpz_nextprime(p.get_mpz_t(), base.get_mpz_t());
  mpz_nextprime(q.get_mpz_t(), p.get_mpz_t());
  FactorBudget tiny;
  tiny.rho_iterations = 10;
  EXPECT_THROW(factor(p * q, tiny), FactoringExceededBudget);
}

TEST(Valuation, Examples) {
  EXPECT_EQ(padic_valuation(Rational(9, 2), Integer(3)), 2);
  EXPECT_EQ(padic_valuation(Rational(12), Integer(2)), 2);
  EXPECT_EQ(padic_valuation(Rational(12, 5), Integer(3)), 1);
  EXPECT_EQ(padic_valuation(Rational(5, 12), Integer(2)), -2);
}

TEST(Valuation, Additive) {
  const auto rs = oracle::rationals_up_to(100);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> pick(1, rs.size() - 1);
  for (long p : {2, 3, 5, 7, 11, 13}) {
    for (int i = 0; i < 2000; ++i) {
      const Rational& r = rs[pick(rng)];
      const Rational& s = rs[pick(rng)];
      ASSERT_EQ(padic_valuation(r * s, Integer(p)), padic_valuation(r, Integer(p)) + padic_valuation(s, Integer(p)));
    }
  }
}

TEST(Legendre, Examples) {
  EXPECT_EQ(legendre_symbol(1, 7), 1);
  EXPECT_EQ(legendre_symbol(14, 7), 0);
  EXPECT_EQ(legendre_symbol(2, 5), -1);
}

TEST(Legendre, EulerCriterion) {
  for (long p : {3, 5, 7, 11, 13, 17}) {
    for (long a = 0; a < p; ++a) ASSERT_EQ(legendre_symbol(a, p), oracle::euler_legendre(a, p)) << a << " " << p;
  }
}

TEST(RationalSquare, Examples) {
  ASSERT_TRUE(is_rational_square(Rational(9, 4)));
  EXPECT_EQ(abs(*is_rational_square(Rational(9, 4))), Rational(3, 2));
  EXPECT_FALSE(is_rational_square(2));
  EXPECT_FALSE(is_rational_square(17));
  EXPECT_FALSE(is_rational_square(-4));
  EXPECT_EQ(*is_rational_square(0), Rational(0));
}

TEST(RationalSquare, AgreesWithBruteForce) {
  const auto candidates = oracle::rationals_up_to(15);  // roots of height <= 15 cover squares of height <= 200
  for (const auto& r : oracle::rationals_up_to(200)) {
    bool brute = false;
    for (const auto& s : candidates) {
      if (height(s) <= height(r) && s * s == r) {
        brute = true;
        break;
      }
    }
    const auto w = is_rational_square(r);
    ASSERT_EQ(w.has_value(), brute) << r.to_string();
    if (w) {
      ASSERT_EQ(*w * *w, r);
    }
  }
}

TEST(SquarefreePart, Examples) {
  EXPECT_EQ(squarefree_part(12), (std::pair<Integer, Integer>{3, 2}));
  EXPECT_EQ(squarefree_part(-50), (std::pair<Integer, Integer>{-2, 5}));
  EXPECT_EQ(squarefree_part(526), (std::pair<Integer, Integer>{526, 1}));
}

TEST(SquarefreePart, Reconstructs) {
  for (long n = -3000; n <= 3000; ++n) {
    if (n == 0) continue;
    const auto [sf, c] = squarefree_part(n);
    ASSERT_EQ(sf * c * c, n);
    for (const auto& [p, e] : oracle::trial_factor(n)) {
      ASSERT_NE(Integer(sf % Integer(static_cast<long>(p * p))), 0) << n;
    }
  }
}
