#include "chatelet/local.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace chatelet;

namespace {

const std::vector<Place>& sample_places() {
  static const std::vector<Place> places{Place::real(),      Place::finite(2), Place::finite(3),
                                         Place::finite(5),   Place::finite(7), Place::finite(13)};
  return places;
}

std::vector<Rational> nonzero_up_to(long h) {
  std::vector<Rational> out;
  for (const auto& r : oracle::rationals_up_to(h)) {
    if (!r.is_zero()) out.push_back(r);
  }
  return out;
}

}  // namespace

TEST(Place, VerifiesPrimality) {
  EXPECT_THROW(Place::finite(9), std::invalid_argument);
  EXPECT_EQ(Place::finite(7).prime(), 7);
  EXPECT_TRUE(Place::real().is_real());
  EXPECT_EQ(Place::real().to_string(), "inf");
}

TEST(SquareInQp, Examples) {
  EXPECT_TRUE(is_square_in_Qp(-7, Integer(2)));
  EXPECT_TRUE(is_square_in_Qp(4, Integer(5)));
  EXPECT_FALSE(is_square_in_Qp(10, Integer(5)));
  EXPECT_FALSE(is_square_in_Qp(3, Integer(2)));
  EXPECT_TRUE(is_square_in_Qp(Rational(17, 4), Integer(2)));
}

TEST(SquareInQp, AgreesWithSquaresModPowers) {
  // A p-adic unit is a square iff it is a square mod p^3 (p = 2) or mod p.
  for (long p : {2, 3, 5, 7, 11}) {
    const long m = p == 2 ? 8 : p;
    for (long u = 1; u < 200; ++u) {
      if (u % p == 0) continue;
      bool brute = false;
      for (long x = 0; x < m; ++x) brute = brute || (x * x - u) % m == 0;
      ASSERT_EQ(is_square_in_Qp(u, Integer(p)), brute) << u << " " << p;
      const long s = p == 7 ? 11 : 7;
      ASSERT_EQ(is_square_in_Qp(Rational(u * p * p, s * s), Integer(p)), brute);
      ASSERT_FALSE(is_square_in_Qp(u * p, Integer(p)));
    }
  }
}

TEST(SquareInR, Examples) {
  EXPECT_TRUE(is_square_in_R(0));
  EXPECT_FALSE(is_square_in_R(-1));
  EXPECT_TRUE(is_square_in_R(Rational(3, 16)));
}

TEST(Hilbert, Examples) {
  EXPECT_EQ(hilbert_symbol(-1, -1, Place::finite(2)), -1);
  EXPECT_EQ(hilbert_symbol(-1, 2, Place::finite(2)), 1);
  EXPECT_EQ(hilbert_symbol(-1, -1, Place::real()), -1);
  for (const auto& v : sample_places()) {
    for (long b : {-7, -1, 2, 3, 10}) EXPECT_EQ(hilbert_symbol(1, b, v), 1);
  }
}

TEST(Hilbert, SymmetryAndOppositeIsTrivial) {
  const auto values = nonzero_up_to(8);
  for (const auto& v : sample_places()) {
    for (const auto& a : values) {
      ASSERT_EQ(hilbert_symbol(a, -a, v), 1) << a.to_string();
      for (const auto& b : values) ASSERT_EQ(hilbert_symbol(a, b, v), hilbert_symbol(b, a, v));
    }
  }
}

TEST(Hilbert, Bimultiplicative) {
  std::mt19937_64 rng(3);
  for (const auto& v : sample_places()) {
    for (int i = 0; i < 2000; ++i) {
      const Rational a = oracle::random_rational(rng, 30), a2 = oracle::random_rational(rng, 30),
                     b = oracle::random_rational(rng, 30);
      ASSERT_EQ(hilbert_symbol(a * a2, b, v), hilbert_symbol(a, b, v) * hilbert_symbol(a2, b, v));
    }
  }
}

TEST(Hilbert, ProductFormula) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const Rational a = oracle::random_rational(rng, 50), b = oracle::random_rational(rng, 50);
    std::set<Integer> primes{2};
    for (const Integer& n : {a.num(), a.den(), b.num(), b.den()}) {
      for (const auto& [p, e] : factor(abs(n)).factors) primes.insert(p);
    }
    int product = hilbert_symbol(a, b, Place::real());
    for (const auto& p : primes) product *= hilbert_symbol(a, b, Place::finite(p));
    ASSERT_EQ(product, 1) << a.to_string() << " " << b.to_string();
  }
}

TEST(Hilbert, AgreesWithBruteForceModP5) {
  for (long p : {2, 3, 5, 7}) {
    const long m = p == 2 ? 8 : p;
    std::vector<long> reps;
    for (long u = 1; u < m; ++u) {
      if (u % p != 0) reps.push_back(u);
    }
    for (long a : reps) {
      for (long b : reps) {
        ASSERT_EQ(hilbert_symbol(a, b, Place::finite(p)) == 1, oracle::conic_solvable_mod(a, b, p, 5))
            << a << " " << b << " " << p;
      }
      if (p != 2) {
        // One argument of valuation 1.
        for (long b : reps) {
          ASSERT_EQ(hilbert_symbol(a * p, b, Place::finite(p)) == 1, oracle::conic_solvable_mod(a * p, b, p, 5))
              << a * p << " " << b << " " << p;
        }
      }
    }
  }
}

TEST(Hensel, Examples) {
  const auto z = hensel_lift_sqrt(-7, Integer(2), 5);
  EXPECT_TRUE(z.center == 5 || z.center == 11 || z.center == 21 || z.center == 27);
  EXPECT_EQ(mod(z.center * z.center + 7, Integer(32)), 0);

  EXPECT_EQ(hensel_lift_sqrt(4, Integer(5), 3).center, 2);

  const auto six = hensel_lift_sqrt(6, Integer(5), 4);
  EXPECT_EQ(mod(six.center * six.center - 6, Integer(625)), 0);

  EXPECT_THROW(hensel_lift_sqrt(3, Integer(2), 4), NotALocalSquare);
  EXPECT_THROW(hensel_lift_sqrt(10, Integer(5), 4), NotALocalSquare);
}

TEST(Hensel, CongruenceAndCompatibility) {
  for (long p : {2, 3, 5, 7, 13}) {
    for (long num = -60; num <= 60; ++num) {
      for (long den : {1, 3, 7, 11}) {
        const Rational c(num, den);
        if (c.is_zero() || padic_valuation(c, Integer(p)) != 0 || !is_square_in_Qp(c, Integer(p))) continue;
        PAdicApproximation prev{Integer(p), 0, 0};
        for (unsigned k = 1; k <= 12; ++k) {
          const auto z = hensel_lift_sqrt(c, Integer(p), k);
          const Integer mk = z.modulus();
          ASSERT_TRUE(z.center >= 0 && z.center < mk);
          ASSERT_EQ(mod(z.center * z.center * c.den() - c.num(), mk), 0) << c.to_string() << " mod " << p << "^" << k;
          if (k > 1) {
            ASSERT_EQ(mod(z.center, prev.modulus()), prev.center);
          }
          prev = z;
        }
      }
    }
  }
}

TEST(SumOfTwoSquares, Examples) {
  EXPECT_EQ(sum_of_two_squares(2), (std::pair<Rational, Rational>{1, 1}));
  EXPECT_FALSE(sum_of_two_squares(526));
  EXPECT_EQ(sum_of_two_squares(80314), (std::pair<Rational, Rational>{95, 267}));
  EXPECT_EQ(sum_of_two_squares(0), (std::pair<Rational, Rational>{0, 0}));
  EXPECT_FALSE(sum_of_two_squares(-1));
  const auto q = sum_of_two_squares(Rational(25, 9));
  ASSERT_TRUE(q);
  EXPECT_EQ(q->first * q->first + q->second * q->second, Rational(25, 9));
  EXPECT_FALSE(sum_of_two_squares(Rational(3, 4)));
}

TEST(SumOfTwoSquares, AgreesWithBruteForceUpTo1e4) {
  for (long n = 0; n <= 10000; ++n) {
    const auto w = sum_of_two_squares(n);
    ASSERT_EQ(w.has_value(), oracle::brute_two_squares(n).has_value()) << n;
    if (w) {
      ASSERT_EQ(w->first * w->first + w->second * w->second, Rational(n));
    }
    ASSERT_EQ(is_sum_of_two_squares(static_cast<std::uint64_t>(n)), w.has_value()) << n;
  }
}

TEST(SumOfTwoSquares, FastTestOnLargeValues) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 3000; ++i) {
    const std::uint64_t n = rng() >> 4;
    ASSERT_EQ(is_sum_of_two_squares(n), sum_of_two_squares(Rational(from_u64(n))).has_value()) << n;
  }
}
