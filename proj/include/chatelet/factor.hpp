#pragma once

// Primality proving and integer factorization.
//
// Inputs below 2^64 are handled with deterministic Miller-Rabin and Brent's
// variant of Pollard rho in native 128-bit arithmetic. Larger cofactors fall
// back to GMP: they are split by rho under an iteration budget and accepted as
// prime only when GMP proves it or trial division up to the square root does.

#include "chatelet/rational.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace chatelet {

/// Raised when a cofactor resists the configured budget. Results that depend
/// on the factorization must be treated as unknown.
class FactoringExceededBudget : public std::runtime_error {
 public:
  explicit FactoringExceededBudget(const std::string& what) : std::runtime_error(what) {}
};

struct FactorBudget {
  /// Primes below this bound are removed by trial division.
  std::uint64_t trial_division_limit = 1000;
  /// Rho iterations allowed per attempted split of a large cofactor.
  std::uint64_t rho_iterations = 1u << 22;
  /// Composite-looking cofactors above 2^64 are only certified prime by trial
  /// division when their square root is below this bound.
  std::uint64_t proof_trial_limit = 1'000'000;
};

struct PrimePower {
  Integer prime;
  unsigned exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  int sign = 1;
  std::vector<PrimePower> factors;  // strictly increasing primes

  Integer value() const {
    Integer n = sign;
    for (const auto& f : factors) n *= pow(f.prime, f.exponent);
    return n;
  }
  friend bool operator==(const Factorization&, const Factorization&) = default;
};

namespace detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

inline const std::vector<u64>& small_primes(u64 limit) {
  // Sieve grows monotonically and is shared; callers only read below `limit`.
  static const std::vector<u64> primes = [] {
    constexpr u64 kMax = 1'000'000;
    std::vector<bool> composite(kMax + 1, false);
    std::vector<u64> out;
    for (u64 i = 2; i <= kMax; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (u64 j = i * i; j <= kMax; j += i) composite[j] = true;
    }
    return out;
  }();
  if (limit > 1'000'000) throw std::invalid_argument("trial division limit above 10^6");
  return primes;
}

}  // namespace detail

/// Deterministic for every 64-bit input (first twelve prime bases).
inline bool is_prime_u64(std::uint64_t n) {
  using namespace detail;
  if (n < 2) return false;
  static constexpr std::array<u64, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kBases) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : kBases) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

namespace detail {

// Brent's cycle detection with batched gcds. Returns a nontrivial divisor of
// the odd composite n, or 0 if the budget is exhausted.
inline u64 brent_rho(u64 n, u64 budget) {
  for (u64 c = 1; c < 64; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    const u64 m = 128;
    u64 r = 1, spent = 0;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    while (g == 1 && spent < budget) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      while (k < r && g == 1) {
        ys = y;
        const u64 lim = std::min(m, r - k);
        for (u64 i = 0; i < lim; ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      }
      spent += r;
      r <<= 1;
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
    if (spent >= budget) return 0;
  }
  return 0;
}

inline void factor_u64_into(u64 n, std::map<u64, unsigned>& out, u64 budget) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    ++out[n];
    return;
  }
  // Perfect squares defeat rho with some constants; peel them directly.
  const u64 root = static_cast<u64>(std::llround(std::sqrt(static_cast<long double>(n))));
  for (u64 r = root > 0 ? root - 1 : 0; r <= root + 1; ++r) {
    if (r > 1 && static_cast<u128>(r) * r == n) {
      std::map<u64, unsigned> half;
      factor_u64_into(r, half, budget);
      for (auto [p, e] : half) out[p] += 2 * e;
      return;
    }
  }
  const u64 d = brent_rho(n, budget);
  if (d == 0) {
    throw FactoringExceededBudget("rho budget exhausted on " + std::to_string(n));
  }
  factor_u64_into(d, out, budget);
  factor_u64_into(n / d, out, budget);
}

}  // namespace detail

/// Factorization of a nonzero 64-bit value, as (prime, exponent) pairs in
/// increasing order.
inline std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n,
                                                                  const FactorBudget& budget = {}) {
  if (n == 0) throw std::invalid_argument("factor_u64(0)");
  std::map<std::uint64_t, unsigned> acc;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    while (n % p == 0) {
      n /= p;
      ++acc[p];
    }
  }
  detail::factor_u64_into(n, acc, budget.rho_iterations);
  return {acc.begin(), acc.end()};
}

/// Proven primality. Throws FactoringExceededBudget when n exceeds 64 bits
/// and neither GMP nor bounded trial division can settle it.
inline bool is_prime(const Integer& n, const FactorBudget& budget = {}) {
  if (sgn(n) <= 0) return false;
  if (fits_u64(n)) return is_prime_u64(to_u64(n));
  const int verdict = mpz_probab_prime_p(n.get_mpz_t(), 30);
  if (verdict == 0) return false;
  if (verdict == 2) return true;
  const Integer root = isqrt(n);
  if (root > Integer(static_cast<unsigned long>(budget.proof_trial_limit))) {
    throw FactoringExceededBudget("cannot certify primality of " + n.get_str());
  }
  for (std::uint64_t p : detail::small_primes(budget.proof_trial_limit)) {
    if (Integer(static_cast<unsigned long>(p)) > root) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) return false;
  }
  return true;
}

namespace detail {

inline Integer rho_mpz(const Integer& n, std::uint64_t budget) {
  for (unsigned long c = 1; c < 16; ++c) {
    Integer x = 2, y = 2, d = 1, q = 1, ys;
    std::uint64_t r = 1, spent = 0;
    auto f = [&](const Integer& v) { return mod(v * v + c, n); };
    while (d == 1 && spent < budget) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t k = 0; k < r && d == 1; k += 64) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min<std::uint64_t>(64, r - k); ++i) {
          y = f(y);
          q = mod(q * abs(Integer(x - y)), n);
        }
        d = gcd(q, n);
      }
      spent += r;
      r <<= 1;
    }
    if (d == n) {
      do {
        ys = f(ys);
        d = gcd(abs(Integer(x - ys)), n);
      } while (d == 1);
    }
    if (d != 1 && d != n) return d;
    if (spent >= budget) break;
  }
  return 0;
}

inline void factor_mpz_into(const Integer& n, std::map<Integer, unsigned>& out,
                            const FactorBudget& budget) {
  if (n == 1) return;
  if (fits_u64(n)) {
    std::map<u64, unsigned> small;
    factor_u64_into(to_u64(n), small, budget.rho_iterations);
    for (auto [p, e] : small) out[from_u64(p)] += e;
    return;
  }
  if (is_prime(n, budget)) {
    ++out[n];
    return;
  }
  if (is_perfect_square(n)) {
    std::map<Integer, unsigned> half;
    factor_mpz_into(isqrt(n), half, budget);
    for (const auto& [p, e] : half) out[p] += 2 * e;
    return;
  }
  const Integer d = rho_mpz(n, budget.rho_iterations);
  if (d == 0) throw FactoringExceededBudget("rho budget exhausted on " + n.get_str());
  factor_mpz_into(d, out, budget);
  factor_mpz_into(n / d, out, budget);
}

}  // namespace detail

/// Complete factorization of a nonzero integer: sign and prime powers with
/// strictly increasing primes.
inline Factorization factor(const Integer& n, const FactorBudget& budget = {}) {
  if (sgn(n) == 0) throw std::invalid_argument("factor(0)");
  Factorization out;
  out.sign = sgn(n) < 0 ? -1 : 1;
  Integer rest = abs(n);
  std::map<Integer, unsigned> acc;
  for (std::uint64_t p : detail::small_primes(budget.trial_division_limit)) {
    if (p >= budget.trial_division_limit) break;
    if (Integer(static_cast<unsigned long>(p * p)) > rest) break;
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p) != 0) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    if (e != 0) acc[Integer(static_cast<unsigned long>(p))] = e;
  }
  detail::factor_mpz_into(rest, acc, budget);
  for (const auto& [p, e] : acc) out.factors.push_back({p, e});
  return out;
}

}  // namespace chatelet
