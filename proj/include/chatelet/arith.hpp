#pragma once

#include "chatelet/factor.hpp"
#include "chatelet/rational.hpp"

#include <optional>
#include <stdexcept>
#include <utility>

namespace chatelet {

/// Exponent of p in a nonzero integer.
inline long padic_valuation(const Integer& n, const Integer& p) {
  if (sgn(n) == 0) throw std::domain_error("valuation of zero");
  Integer rest;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

/// v_p(num) - v_p(den).
inline long padic_valuation(const Rational& r, const Integer& p) {
  if (r.is_zero()) throw std::domain_error("valuation of zero");
  return padic_valuation(r.num(), p) - padic_valuation(r.den(), p);
}

/// Legendre symbol (a / p) for an odd prime p, as -1, 0 or +1.
inline int legendre_symbol(const Integer& a, const Integer& p) {
  if (p < 3 || mpz_even_p(p.get_mpz_t()) != 0) {
    throw std::invalid_argument("legendre_symbol needs an odd prime");
  }
  const Integer r = mod(a, p);
  return mpz_legendre(r.get_mpz_t(), p.get_mpz_t());
}

/// Exact square root in Q, if there is one.
inline std::optional<Rational> is_rational_square(const Rational& r) {
  if (r.sign() < 0) return std::nullopt;
  if (!is_perfect_square(r.num()) || !is_perfect_square(r.den())) return std::nullopt;
  return Rational(isqrt(r.num()), isqrt(r.den()));
}

/// Splits n = squarefree * cofactor^2 with squarefree carrying the sign.
inline std::pair<Integer, Integer> squarefree_part(const Integer& n, const FactorBudget& budget = {}) {
  const Factorization f = factor(n, budget);
  Integer squarefree = f.sign;
  Integer cofactor = 1;
  for (const auto& [p, e] : f.factors) {
    if (e % 2 == 1) squarefree *= p;
    cofactor *= pow(p, e / 2);
  }
  return {squarefree, cofactor};
}

/// Distinct primes dividing a nonzero integer.
inline std::vector<Integer> prime_divisors(const Integer& n, const FactorBudget& budget = {}) {
  std::vector<Integer> out;
  for (const auto& f : factor(n, budget).factors) out.push_back(f.prime);
  return out;
}

}  // namespace chatelet
