#pragma once

// Dense univariate polynomials over Q of small degree: division, gcd,
// resultants and Sturm-based real root isolation.

#include "chatelet/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace chatelet {

/// Coefficients lowest degree first, no trailing zeros; the zero polynomial
/// is the empty vector.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly monomial(const Rational& coeff, std::size_t degree) {
    std::vector<Rational> c(degree + 1);
    c[degree] = coeff;
    return Poly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  /// Degree of the zero polynomial is -1.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& leading() const { return c_.back(); }

  Rational operator()(const Rational& x) const {
    Rational acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return Poly(std::move(d));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + b * Rational(-1); }
  friend Poly operator*(const Poly& a, const Rational& s) {
    std::vector<Rational> c = a.c_;
    for (auto& x : c) x *= s;
    return Poly(std::move(c));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(c));
  }
  friend bool operator==(const Poly&, const Poly&) = default;

  /// Euclidean division: (quotient, remainder).
  std::pair<Poly, Poly> divmod(const Poly& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> rem = c_;
    const int dd = divisor.degree();
    if (degree() < dd) return {Poly(), *this};
    std::vector<Rational> quot(static_cast<std::size_t>(degree() - dd + 1));
    for (int i = degree(); i >= dd; --i) {
      const Rational q = rem[static_cast<std::size_t>(i)] / divisor.leading();
      quot[static_cast<std::size_t>(i - dd)] = q;
      if (q.is_zero()) continue;
      for (int j = 0; j <= dd; ++j) {
        rem[static_cast<std::size_t>(i - dd + j)] -= q * divisor.c_[static_cast<std::size_t>(j)];
      }
    }
    return {Poly(std::move(quot)), Poly(std::move(rem))};
  }

  Poly monic() const { return is_zero() ? *this : *this * (Rational(1) / leading()); }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Monic gcd over Q.
inline Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Determinant by Gaussian elimination over Q.
inline Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[r][k] -= f * m[col][k];
    }
  }
  return det;
}

/// Resultant via the Sylvester matrix.
inline Rational resultant(const Poly& f, const Poly& g) {
  const int m = f.degree();
  const int n = g.degree();
  if (m < 0 || n < 0) return 0;
  if (m == 0 && n == 0) return 1;
  const std::size_t size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<Rational>> s(size, std::vector<Rational>(size));
  for (int row = 0; row < n; ++row) {
    for (int i = 0; i <= m; ++i) s[row][row + i] = f.coeff(static_cast<std::size_t>(m - i));
  }
  for (int row = 0; row < m; ++row) {
    for (int i = 0; i <= n; ++i) s[n + row][row + i] = g.coeff(static_cast<std::size_t>(n - i));
  }
  return determinant(std::move(s));
}

/// disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f).
inline Rational discriminant(const Poly& f) {
  const int n = f.degree();
  if (n < 1) throw std::domain_error("discriminant of a constant");
  if (n == 1) return 1;
  Rational r = resultant(f, f.derivative()) / f.leading();
  if ((n * (n - 1) / 2) % 2 == 1) r = -r;
  return r;
}

/// Open interval (lo, hi) containing exactly one real root, or the exact
/// rational root when lo == hi.
struct RootInterval {
  Rational lo, hi;
  bool exact() const { return lo == hi; }
};

namespace detail {

inline std::vector<Poly> sturm_chain(const Poly& f) {
  std::vector<Poly> chain{f, f.derivative()};
  while (!chain.back().is_zero()) {
    Poly r = chain[chain.size() - 2].divmod(chain.back()).second * Rational(-1);
    if (r.is_zero()) break;
    chain.push_back(std::move(r));
  }
  return chain;
}

inline int sign_changes_at(const std::vector<Poly>& chain, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& p : chain) {
    const int s = p(x).sign();
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

/// Cauchy bound: every root has |x| < bound.
inline Rational root_bound(const Poly& f) {
  Rational m = 0;
  for (int i = 0; i < f.degree(); ++i) {
    const Rational r = abs(f.coeff(static_cast<std::size_t>(i)) / f.leading());
    if (r > m) m = r;
  }
  return m + 1;
}

}  // namespace detail

/// Isolates the distinct real roots of a squarefree polynomial, in increasing
/// order. Each interval is refined until its width is at most `width`.
inline std::vector<RootInterval> isolate_real_roots(const Poly& f, const Rational& width = Rational(1, 1 << 20)) {
  if (f.degree() < 1) return {};
  const auto chain = detail::sturm_chain(f);
  const Rational bound = detail::root_bound(f);
  // Roots in (lo, hi] = V(lo) - V(hi).
  auto count = [&](const Rational& lo, const Rational& hi) {
    return detail::sign_changes_at(chain, lo) - detail::sign_changes_at(chain, hi);
  };
  std::vector<RootInterval> out;
  std::vector<std::pair<Rational, Rational>> stack{{-bound, bound}};
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    const int n = count(lo, hi);
    if (n == 0) continue;
    if (n == 1) {
      if (f(hi).is_zero()) {
        out.push_back({hi, hi});
        continue;
      }
      // lo may itself be a root of f (the previous interval's endpoint), so
      // bisect against the sign at hi, which is not a root.
      const int s_hi = f(hi).sign();
      while (hi - lo > width) {
        const Rational mid = (lo + hi) / 2;
        const int s = f(mid).sign();
        if (s == 0) {
          lo = hi = mid;
          break;
        }
        if (s == s_hi) hi = mid;
        else lo = mid;
      }
      out.push_back({lo, hi});
      continue;
    }
    const Rational mid = (lo + hi) / 2;
    stack.emplace_back(mid, hi);
    stack.emplace_back(lo, mid);
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
  return out;
}

inline Integer floor(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
  return q;
}

/// The rational of least height strictly between lo and hi (lo < hi); either
/// end may be absent for an unbounded side.
inline Rational simplest_between(const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
  if (lo && hi && !(*lo < *hi)) throw std::invalid_argument("empty interval");
  if ((!lo || lo->sign() < 0) && (!hi || hi->sign() > 0)) return 0;
  if (hi && hi->sign() <= 0) {
    std::optional<Rational> nlo = -*hi;
    std::optional<Rational> nhi = lo ? std::optional<Rational>(-*lo) : std::nullopt;
    return -simplest_between(nlo, nhi);
  }
  // 0 <= lo < hi (hi possibly infinite).
  const Integer fl = floor(*lo);
  const Rational next(fl + 1);
  if (!hi || next < *hi) return next;
  // lo and hi both lie in [fl, fl + 1].
  const Rational base(fl);
  const std::optional<Rational> inv_lo = Rational(1) / (*hi - base);
  const std::optional<Rational> inv_hi =
      *lo == base ? std::nullopt : std::optional<Rational>(Rational(1) / (*lo - base));
  return base + Rational(1) / simplest_between(inv_lo, inv_hi);
}

}  // namespace chatelet
