#pragma once

// Polynomials of degree at most four over Q, the biquadratic irreducibility
// criterion, and a complete factorization routine used to cross-check it.

#include "chatelet/arith.hpp"
#include "chatelet/factor.hpp"
#include "chatelet/poly.hpp"
#include "chatelet/rational.hpp"

#include <algorithm>
#include <array>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chatelet {

/// c0 + c1 x + c2 x^2 + c3 x^3 + c4 x^4.
class QuarticPoly {
 public:
  QuarticPoly() = default;
  explicit QuarticPoly(const std::array<Rational, 5>& ascending) : c_(ascending) {}

  /// Coefficients from x^4 down to the constant term.
  static QuarticPoly from_descending(std::initializer_list<Rational> coeffs) {
    return from_descending(std::vector<Rational>(coeffs));
  }
  static QuarticPoly from_descending(const std::vector<Rational>& coeffs) {
    if (coeffs.size() > 5) throw std::invalid_argument("more than five coefficients");
    std::array<Rational, 5> c{};
    for (std::size_t i = 0; i < coeffs.size(); ++i) c[coeffs.size() - 1 - i] = coeffs[i];
    return QuarticPoly(c);
  }
  static QuarticPoly from_poly(const Poly& p) {
    if (p.degree() > 4) throw std::invalid_argument("degree above four");
    std::array<Rational, 5> c{};
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) c[i] = p.coeffs()[i];
    return QuarticPoly(c);
  }

  const Rational& operator[](std::size_t i) const { return c_.at(i); }
  const std::array<Rational, 5>& coeffs() const { return c_; }
  Poly poly() const { return Poly(std::vector<Rational>(c_.begin(), c_.end())); }

  int degree() const {
    for (int i = 4; i >= 0; --i) {
      if (!c_[static_cast<std::size_t>(i)].is_zero()) return i;
    }
    return -1;
  }
  bool is_zero() const { return degree() < 0; }
  bool is_even() const { return c_[1].is_zero() && c_[3].is_zero(); }

  Rational operator()(const Rational& x) const {
    return (((c_[4] * x + c_[3]) * x + c_[2]) * x + c_[1]) * x + c_[0];
  }

  friend QuarticPoly operator*(const Rational& s, const QuarticPoly& p) {
    std::array<Rational, 5> c = p.c_;
    for (auto& x : c) x *= s;
    return QuarticPoly(c);
  }
  friend QuarticPoly operator+(const QuarticPoly& a, const QuarticPoly& b) {
    std::array<Rational, 5> c{};
    for (std::size_t i = 0; i < 5; ++i) c[i] = a.c_[i] + b.c_[i];
    return QuarticPoly(c);
  }
  friend bool operator==(const QuarticPoly&, const QuarticPoly&) = default;

  std::string to_string() const {
    std::string out;
    for (int i = 4; i >= 0; --i) {
      const Rational& c = c_[static_cast<std::size_t>(i)];
      if (c.is_zero()) continue;
      if (!out.empty()) out += c.sign() < 0 ? " - " : " + ";
      else if (c.sign() < 0) out += "-";
      const Rational mag = abs(c);
      if (i == 0 || mag != 1) out += mag.to_string();
      if (i >= 1) out += (i == 0 || mag != 1) ? "*x" : "x";
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
  }

 private:
  std::array<Rational, 5> c_{};
};

/// a x^4 + b x^2 + c.
struct BiquadraticQuartic {
  Rational a, b, c;

  QuarticPoly quartic() const { return QuarticPoly({c, 0, b, 0, a}); }
  friend bool operator==(const BiquadraticQuartic&, const BiquadraticQuartic&) = default;
};

inline Rational evaluate(const QuarticPoly& p, const Rational& x) { return p(x); }

/// Value of w^4 P(x/w) at (x:w) = (1:0), i.e. the x^4 coefficient.
inline Rational homogenize_value_at_infinity(const QuarticPoly& p) { return p[4]; }

inline bool is_separable(const QuarticPoly& p) {
  if (p.is_zero()) throw std::domain_error("is_separable of the zero polynomial");
  const Poly f = p.poly();
  return gcd(f, f.derivative()).degree() == 0;
}

inline Rational discriminant(const QuarticPoly& p) { return discriminant(p.poly()); }

/// P = unit * (integer coefficients with content 1 and positive leading term).
struct PrimitiveForm {
  Rational unit;
  std::array<Integer, 5> coeffs{};
};

inline PrimitiveForm primitive_form(const QuarticPoly& p) {
  if (p.is_zero()) throw std::domain_error("primitive form of zero");
  Integer lcm = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.den().get_mpz_t());
  PrimitiveForm out;
  Integer content = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    out.coeffs[i] = p[i].num() * (lcm / p[i].den());
    content = gcd(content, out.coeffs[i]);
  }
  if (sgn(out.coeffs[static_cast<std::size_t>(p.degree())]) < 0) content = -content;
  for (auto& c : out.coeffs) c /= content;
  out.unit = Rational(content, lcm);
  return out;
}

/// Factorization over Q: unit times primitive integer factors with positive
/// leading coefficients, irreducible, sorted by degree then coefficients.
struct PolyFactorization {
  Rational unit;
  std::vector<QuarticPoly> factors;

  QuarticPoly product() const {
    Poly acc(std::vector<Rational>{unit});
    for (const auto& f : factors) acc = acc * f.poly();
    return QuarticPoly::from_poly(acc);
  }
  bool irreducible() const { return factors.size() == 1; }
};

namespace detail {

inline std::vector<Integer> positive_divisors(const Integer& n, const FactorBudget& budget) {
  std::vector<Integer> divs{1};
  for (const auto& [p, e] : factor(n, budget).factors) {
    const std::size_t base = divs.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

inline Poly integer_poly(const std::vector<Integer>& ascending) {
  std::vector<Rational> c;
  for (const auto& x : ascending) c.emplace_back(x);
  return Poly(std::move(c));
}

inline std::vector<Integer> integer_coeffs(const Poly& p) {
  std::vector<Integer> out;
  for (const auto& c : p.coeffs()) {
    if (!c.is_integer()) throw std::logic_error("expected an integer polynomial");
    out.push_back(c.num());
  }
  return out;
}

// Quadratic factors of a primitive integer quartic without rational roots.
inline std::optional<std::pair<Poly, Poly>> split_into_quadratics(const std::vector<Integer>& f,
                                                                  const FactorBudget& budget) {
  const Integer& f4 = f[4];
  const Integer& f3 = f[3];
  const Integer& f2 = f[2];
  const Integer& f1 = f[1];
  const Integer& f0 = f[0];
  const auto lead_divs = positive_divisors(f4, budget);
  const auto const_divs = positive_divisors(f0, budget);
  auto accept = [&](const Integer& a2, const Integer& a1, const Integer& a0, const Integer& b2,
                    const Integer& b1, const Integer& b0) -> std::optional<std::pair<Poly, Poly>> {
    if (a2 * b1 + a1 * b2 != f3 || a2 * b0 + a1 * b1 + a0 * b2 != f2 || a1 * b0 + a0 * b1 != f1) {
      return std::nullopt;
    }
    return std::pair{integer_poly({a0, a1, a2}), integer_poly({b0, b1, b2})};
  };
  for (const auto& a2 : lead_divs) {
    const Integer b2 = f4 / a2;
    for (const auto& d : const_divs) {
      for (int s : {1, -1}) {
        const Integer a0 = s * d;
        const Integer b0 = f0 / a0;
        // a2 b1 + b2 a1 = f3 and a0 b1 + b0 a1 = f1.
        const Integer det = b2 * a0 - a2 * b0;
        if (sgn(det) != 0) {
          const Integer num_a1 = f3 * a0 - a2 * f1;
          const Integer num_b1 = b2 * f1 - b0 * f3;
          if (mpz_divisible_p(num_a1.get_mpz_t(), det.get_mpz_t()) == 0 ||
              mpz_divisible_p(num_b1.get_mpz_t(), det.get_mpz_t()) == 0) {
            continue;
          }
          if (auto hit = accept(a2, num_a1 / det, a0, b2, num_b1 / det, b0)) return hit;
          continue;
        }
        // Singular system: a0 = l a2 and b0 = l b2, so a1 solves
        // b2 a1^2 - f3 a1 + a2 (f2 - a2 b0 - a0 b2) = 0.
        const Integer k = a2 * (f2 - a2 * b0 - a0 * b2);
        const Integer disc = f3 * f3 - 4 * b2 * k;
        if (!is_perfect_square(disc)) continue;
        const Integer root = isqrt(disc);
        for (const Integer& num : {Integer(f3 + root), Integer(f3 - root)}) {
          const Integer den = 2 * b2;
          if (mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()) == 0) continue;
          const Integer a1 = num / den;
          const Integer rest = f3 - a1 * b2;
          if (mpz_divisible_p(rest.get_mpz_t(), a2.get_mpz_t()) == 0) continue;
          if (auto hit = accept(a2, a1, a0, b2, rest / a2, b0)) return hit;
        }
      }
    }
  }
  return std::nullopt;
}

inline QuarticPoly normalized_factor(const Poly& p) {
  return QuarticPoly::from_poly(p * (Rational(1) / primitive_form(QuarticPoly::from_poly(p)).unit));
}

}  // namespace detail

/// Complete factorization over Q by the rational root theorem followed by a
/// search for integer quadratic factors.
inline PolyFactorization factorization_oracle(const QuarticPoly& p, const FactorBudget& budget = {}) {
  const PrimitiveForm prim = primitive_form(p);
  PolyFactorization out{prim.unit, {}};
  Poly rest = detail::integer_poly(std::vector<Integer>(prim.coeffs.begin(), prim.coeffs.end()));

  const Poly x = Poly::monomial(1, 1);
  while (rest.degree() >= 1 && rest.coeff(0).is_zero()) {
    out.factors.push_back(QuarticPoly::from_poly(x));
    rest = rest.divmod(x).first;
  }
  if (rest.degree() >= 2) {
    const auto lead_divs = detail::positive_divisors(rest.leading().num(), budget);
    const auto const_divs = detail::positive_divisors(rest.coeff(0).num(), budget);
    for (const auto& t : lead_divs) {
      for (const auto& s : const_divs) {
        if (gcd(s, t) != 1) continue;
        for (int sign : {1, -1}) {
          const Rational root(sign * s, t);
          const Poly lin(std::vector<Rational>{-root * Rational(t), Rational(t)});
          while (rest.degree() >= 1 && rest(root).is_zero()) {
            out.factors.push_back(detail::normalized_factor(lin));
            rest = rest.divmod(lin).first;
          }
        }
      }
    }
  }
  if (rest.degree() == 4) {
    if (auto split = detail::split_into_quadratics(detail::integer_coeffs(rest), budget)) {
      out.factors.push_back(detail::normalized_factor(split->first));
      out.factors.push_back(detail::normalized_factor(split->second));
      rest = Poly(std::vector<Rational>{1});
    }
  }
  if (rest.degree() >= 1) {
    out.factors.push_back(detail::normalized_factor(rest));
  }
  // Absorb the remaining constant and the factors' contents into the unit.
  const Rational check = out.product()[static_cast<std::size_t>(p.degree())];
  out.unit *= p[static_cast<std::size_t>(p.degree())] / check;
  std::sort(out.factors.begin(), out.factors.end(), [](const QuarticPoly& a, const QuarticPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = 4; i >= 0; --i) {
      const auto k = static_cast<std::size_t>(i);
      if (a[k] != b[k]) return a[k] < b[k];
    }
    return false;
  });
  if (out.product() != p) throw std::logic_error("factorization does not reproduce its input");
  return out;
}

/// Sufficient test: a x^4 + b x^2 + c is irreducible when b^2 - 4ac and ac are
/// both nonsquares in Q.
inline bool biquadratic_criterion(const BiquadraticQuartic& q) {
  return !is_rational_square(q.b * q.b - 4 * q.a * q.c) && !is_rational_square(q.a * q.c);
}

/// Irreducibility over Q: the criterion when it applies, the factorization
/// otherwise.
inline bool biquadratic_irreducible(const BiquadraticQuartic& q, const FactorBudget& budget = {}) {
  if (q.a.is_zero()) throw std::invalid_argument("biquadratic with zero leading coefficient");
  if (biquadratic_criterion(q)) return true;
  return factorization_oracle(q.quartic(), budget).irreducible();
}

}  // namespace chatelet
