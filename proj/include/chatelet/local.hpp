#pragma once

// Squares, norms and Hilbert symbols over R and Q_p.

#include "chatelet/arith.hpp"
#include "chatelet/factor.hpp"
#include "chatelet/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace chatelet {

/// A place of Q: the real place or a finite place at a verified prime.
class Place {
 public:
  static Place real() { return Place(); }
  static Place finite(const Integer& p) {
    if (!is_prime(p)) throw std::invalid_argument("place at non-prime " + p.get_str());
    Place v;
    v.prime_ = p;
    return v;
  }
  static Place finite(long p) { return finite(Integer(p)); }

  bool is_real() const { return sgn(prime_) == 0; }
  const Integer& prime() const {
    if (is_real()) throw std::logic_error("the real place has no prime");
    return prime_;
  }
  std::string to_string() const { return is_real() ? "inf" : prime_.get_str(); }

  friend bool operator==(const Place& a, const Place& b) { return a.prime_ == b.prime_; }
  /// The real place sorts first, then primes increasing.
  friend bool operator<(const Place& a, const Place& b) { return a.prime_ < b.prime_; }

 private:
  Place() = default;
  Integer prime_ = 0;
};

/// The residue class center mod prime^precision, 0 <= center < prime^precision.
struct PAdicApproximation {
  Integer prime;
  Integer center;
  unsigned precision = 1;

  Integer modulus() const { return pow(prime, precision); }
  friend bool operator==(const PAdicApproximation&, const PAdicApproximation&) = default;
};

class NotALocalSquare : public std::domain_error {
 public:
  explicit NotALocalSquare(const std::string& what) : std::domain_error(what) {}
};

namespace detail {

/// n / d reduced into (Z/m)^x; d must be invertible mod m.
inline Integer residue(const Rational& r, const Integer& m) {
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), r.den().get_mpz_t(), m.get_mpz_t()) == 0) {
    throw std::domain_error("denominator not invertible modulo " + m.get_str());
  }
  return mod(r.num() * inv, m);
}

/// Strips p from r: returns (v_p(r), r / p^v).
inline std::pair<long, Rational> split_valuation(const Rational& r, const Integer& p) {
  Integer num, den;
  const long vn = static_cast<long>(mpz_remove(num.get_mpz_t(), r.num().get_mpz_t(), p.get_mpz_t()));
  const long vd = static_cast<long>(mpz_remove(den.get_mpz_t(), r.den().get_mpz_t(), p.get_mpz_t()));
  return {vn - vd, Rational(num, den)};
}

/// Unit part reduced to an integer representative with the same Legendre
/// symbol (odd p) or the same class mod 8 (p = 2).
inline Integer unit_representative(const Rational& unit, const Integer& p) {
  if (p == 2) return mod(unit.num() * unit.den(), Integer(8));
  return mod(unit.num() * unit.den(), p);
}

/// Tonelli-Shanks square root of a nonzero quadratic residue modulo an odd prime.
inline Integer sqrt_mod_prime(const Integer& a, const Integer& p) {
  const Integer n = mod(a, p);
  if (sgn(n) == 0) return 0;
  if (legendre_symbol(n, p) != 1) throw NotALocalSquare(n.get_str() + " is not a square mod " + p.get_str());
  Integer q = p - 1;
  unsigned long s = 0;
  while (mpz_even_p(q.get_mpz_t()) != 0) {
    q /= 2;
    ++s;
  }
  Integer z = 2;
  while (legendre_symbol(z, p) != -1) ++z;
  Integer m_c, c, t, r, e;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  mpz_powm(t.get_mpz_t(), n.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  e = (q + 1) / 2;
  mpz_powm(r.get_mpz_t(), n.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  unsigned long m = s;
  while (t != 1) {
    unsigned long i = 0;
    Integer tt = t;
    while (tt != 1) {
      tt = mod(tt * tt, p);
      ++i;
    }
    Integer b = c;
    for (unsigned long j = 0; j + i + 1 < m; ++j) b = mod(b * b, p);
    m = i;
    c = mod(b * b, p);
    t = mod(t * c, p);
    r = mod(r * b, p);
  }
  return r;
}

}  // namespace detail

inline bool is_square_in_R(const Rational& r) { return r.sign() >= 0; }

/// r is a nonzero square in Q_p: even valuation, and the unit part is a
/// square mod p (odd p) or congruent to 1 mod 8 (p = 2).
inline bool is_square_in_Qp(const Rational& r, const Integer& p) {
  if (r.is_zero()) throw std::domain_error("is_square_in_Qp(0)");
  const auto [v, unit] = detail::split_valuation(r, p);
  if (v % 2 != 0) return false;
  if (p == 2) return detail::unit_representative(unit, p) == 1;
  return legendre_symbol(detail::unit_representative(unit, p), p) == 1;
}

/// Hilbert symbol (a, b)_v: +1 exactly when z^2 = a x^2 + b y^2 has a
/// nontrivial solution over the completion of Q at v.
inline int hilbert_symbol(const Rational& a, const Rational& b, const Place& v) {
  if (a.is_zero() || b.is_zero()) throw std::domain_error("hilbert_symbol with a zero argument");
  if (v.is_real()) return (a.sign() < 0 && b.sign() < 0) ? -1 : 1;
  const Integer& p = v.prime();
  const auto [alpha, u_unit] = detail::split_valuation(a, p);
  const auto [beta, v_unit] = detail::split_valuation(b, p);
  const Integer u = detail::unit_representative(u_unit, p);
  const Integer w = detail::unit_representative(v_unit, p);
  if (p == 2) {
    const long ui = u.get_si();
    const long wi = w.get_si();
    auto eps = [](long x) { return ((x - 1) / 2) & 1; };
    auto omega = [](long x) { return ((x * x - 1) / 8) & 1; };
    const long e = eps(ui) * eps(wi) + (alpha & 1) * omega(wi) + (beta & 1) * omega(ui);
    return (e & 1) ? -1 : 1;
  }
  int sign = 1;
  const bool p_is_3_mod_4 = mod(p, Integer(4)) == 3;
  if ((alpha & 1) && (beta & 1) && p_is_3_mod_4) sign = -sign;
  if (beta & 1) sign *= legendre_symbol(u, p);
  if (alpha & 1) sign *= legendre_symbol(w, p);
  return sign;
}

/// Square root of a p-adic unit square, approximated modulo p^precision.
///
/// The branch is fixed once at the bottom level (the smaller root mod p, or the
/// root congruent to 1 mod 4 when p = 2) and then lifted, so approximations at
/// different precisions are reductions of the same p-adic root.
inline PAdicApproximation hensel_lift_sqrt(const Rational& c, const Integer& p, unsigned precision) {
  if (precision == 0) throw std::invalid_argument("precision must be positive");
  if (c.is_zero() || padic_valuation(c, p) != 0 || !is_square_in_Qp(c, p)) {
    throw NotALocalSquare(c.to_string() + " is not a unit square in Q_" + p.get_str());
  }
  PAdicApproximation out{p, 0, precision};
  const Integer target = out.modulus();
  if (p == 2) {
    const Integer work = pow(Integer(2), precision + 1);
    const Integer cc = detail::residue(c, std::max(work, Integer(8)));
    Integer z = 1;  // z^2 = c mod 8 holds since c = 1 mod 8
    for (unsigned j = 3; j <= precision; ++j) {
      const Integer next = pow(Integer(2), j + 1);
      if (mod(z * z - cc, next) != 0) z += pow(Integer(2), j - 1);
    }
    out.center = mod(z, target);
    return out;
  }
  Integer z = detail::sqrt_mod_prime(detail::residue(c, p), p);
  if (p - z < z) z = p - z;
  Integer level = p;
  while (level < target) {
    level = std::min(Integer(level * level), target);
    const Integer cc = detail::residue(c, level);
    Integer inv;
    const Integer two_z = 2 * z;
    mpz_invert(inv.get_mpz_t(), two_z.get_mpz_t(), level.get_mpz_t());
    z = mod(z - (z * z - cc) * inv, level);
  }
  out.center = mod(z, target);
  return out;
}

namespace detail {

struct Gaussian {
  Integer re, im;
};

inline Gaussian operator*(const Gaussian& a, const Gaussian& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

/// The Gaussian prime above p = 1 mod 4 that divides r + i, with r the least
/// positive square root of -1 mod p, rotated into the first quadrant.
inline Gaussian gaussian_prime_above(const Integer& p) {
  Integer r;
  const Integer e = (p - 1) / 4;
  for (Integer c = 2;; ++c) {
    if (legendre_symbol(c, p) == -1) {
      mpz_powm(r.get_mpz_t(), c.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
      break;
    }
  }
  if (p - r < r) r = p - r;
  // Cornacchia: Euclid on (p, r) down to the first remainder below sqrt(p).
  Integer a = p, b = r;
  while (b * b > p) {
    Integer t = mod(a, b);
    a = b;
    b = t;
  }
  const Integer x = b;
  const Integer y = isqrt(Integer(p - x * x));
  if (mod(x - r * y, p) == 0) return {x, y};
  return {y, x};
}

}  // namespace detail

/// Exact (y, z) with y^2 + z^2 = N, when one exists over Q.
///
/// N = M / d^2 with M = num * den and d = den. M = s^2 * m with m squarefree;
/// m is represented as the norm of a product of Gaussian primes and s scales
/// the result. Returns nothing for negative N or when a prime 3 mod 4 divides
/// m.
inline std::optional<std::pair<Rational, Rational>> sum_of_two_squares(const Rational& n,
                                                                       const FactorBudget& budget = {}) {
  if (n.sign() < 0) return std::nullopt;
  if (n.is_zero()) return std::pair<Rational, Rational>{0, 0};
  const Integer m = n.num() * n.den();
  Integer scale = 1;
  detail::Gaussian g{1, 0};
  for (const auto& [p, e] : factor(m, budget).factors) {
    scale *= pow(p, e / 2);
    if (e % 2 == 0) continue;
    if (p == 2) {
      g = g * detail::Gaussian{1, 1};
    } else if (mod(p, Integer(4)) == 3) {
      return std::nullopt;
    } else {
      g = g * detail::gaussian_prime_above(p);
    }
  }
  const Rational y(abs(g.re) * scale, n.den());
  const Rational z(abs(g.im) * scale, n.den());
  if (y * y + z * z != n) throw std::logic_error("sum_of_two_squares produced a wrong witness");
  return std::pair<Rational, Rational>{y, z};
}

/// Fast decision of whether a 64-bit integer is a sum of two integer squares.
inline bool is_sum_of_two_squares(std::uint64_t m, const FactorBudget& budget = {}) {
  if (m == 0) return true;
  while ((m & 3) == 0) m >>= 2;
  if ((m & 1) == 0) m >>= 1;
  if ((m & 3) == 3) return false;
  static constexpr std::uint64_t kSmall[] = {3, 7, 11, 19, 23, 31, 43, 47, 59, 67, 71, 79, 83};
  for (std::uint64_t q : kSmall) {
    unsigned e = 0;
    while (m % q == 0) {
      m /= q;
      ++e;
    }
    if (e & 1) return false;
  }
  // m is now odd; every remaining prime 3 mod 4 must appear squared, so a
  // cofactor congruent to 3 mod 4 is already decisive.
  if ((m & 3) == 3) return false;
  if (m == 1 || is_prime_u64(m)) return true;
  for (const auto& [p, e] : factor_u64(m, budget)) {
    if ((p & 3) == 3 && (e & 1)) return false;
  }
  return true;
}

}  // namespace chatelet
