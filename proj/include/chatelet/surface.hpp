#pragma once

// Chatelet surfaces y^2 - alpha z^2 = P(x): local solvability certificates at
// each place, rational point search, and Hasse principle classification.

#include "chatelet/arith.hpp"
#include "chatelet/factor.hpp"
#include "chatelet/heights.hpp"
#include "chatelet/local.hpp"
#include "chatelet/poly.hpp"
#include "chatelet/quartic.hpp"
#include "chatelet/rational.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

namespace chatelet {

/// Raised for surface data that does not define a Chatelet surface.
class InvalidSurface : public std::invalid_argument {
 public:
  explicit InvalidSurface(const std::string& what) : std::invalid_argument(what) {}
};

class PreconditionViolated : public std::invalid_argument {
 public:
  explicit PreconditionViolated(const std::string& what) : std::invalid_argument(what) {}
};

/// y^2 - alpha z^2 = P(x) with alpha != 0 and P separable of degree 3 or 4.
class ChateletSurface {
 public:
  ChateletSurface(Rational alpha, QuarticPoly p) : alpha_(std::move(alpha)), p_(std::move(p)) {
    if (alpha_.is_zero()) throw InvalidSurface("alpha must be nonzero");
    if (p_.degree() != 3 && p_.degree() != 4) {
      throw InvalidSurface("P must have degree 3 or 4, got " + std::to_string(p_.degree()));
    }
    if (!is_separable(p_)) throw InvalidSurface("P is not separable: " + p_.to_string());
    // alpha * den^2 = num * den; strip squares to get the class in Q*/Q*^2.
    alpha_squarefree_ = squarefree_part(alpha_.num() * alpha_.den()).first;
  }

  const Rational& alpha() const { return alpha_; }
  const QuarticPoly& p() const { return p_; }
  /// Squarefree integer a with alpha / a a rational square.
  const Integer& alpha_squarefree() const { return alpha_squarefree_; }

  /// P(x), or the leading coefficient of the homogenized quartic at infinity.
  Rational value_at(const Abscissa& x) const {
    return is_infinite(x) ? homogenize_value_at_infinity(p_) : p_(std::get<Rational>(x));
  }

  friend bool operator==(const ChateletSurface& a, const ChateletSurface& b) {
    return a.alpha_ == b.alpha_ && a.p_ == b.p_;
  }

 private:
  Rational alpha_;
  QuarticPoly p_;
  Integer alpha_squarefree_;
};

// ---------------------------------------------------------------------------
// Certificates

/// Over R: alpha > 0, or the conic value is positive.
struct RealSign {
  friend bool operator==(const RealSign&, const RealSign&) = default;
};

/// (alpha, conic_value)_p = +1, so the conic has a Q_p point.
struct HilbertSymbolPlusOne {
  friend bool operator==(const HilbertSymbolPlusOne&, const HilbertSymbolPlusOne&) = default;
};

/// A smooth point of the reduction mod p; one coordinate is held fixed at its
/// residue and the other is lifted as a p-adic square root.
struct SmoothFpPointLifted {
  Integer y_mod_p, z_mod_p;
  char lifted = 'y';  // 'y' or 'z'
  PAdicApproximation lift;
  friend bool operator==(const SmoothFpPointLifted&, const SmoothFpPointLifted&) = default;
};

/// One coordinate fixed to an exact rational; the square of the other equals
/// p^(2 * half_valuation) times a unit whose root is approximated.
struct HenselLift {
  char fixed = 'y';
  Rational fixed_value;
  long half_valuation = 0;
  PAdicApproximation unit_root;
  friend bool operator==(const HenselLift&, const HenselLift&) = default;
};

using Evidence = std::variant<RealSign, HilbertSymbolPlusOne, SmoothFpPointLifted, HenselLift>;

struct LocalCertificate {
  Place place = Place::real();
  Abscissa witness_x;
  Rational conic_value;
  Evidence evidence;
  friend bool operator==(const LocalCertificate&, const LocalCertificate&) = default;
};

struct Solvable {
  LocalCertificate certificate;
  friend bool operator==(const Solvable&, const Solvable&) = default;
};
struct NotSolvable {
  std::string reason;
  friend bool operator==(const NotSolvable&, const NotSolvable&) = default;
};
struct Unknown {
  std::string reason;
  friend bool operator==(const Unknown&, const Unknown&) = default;
};

/// Search failure yields Unknown; NotSolvable only comes from exact criteria.
using SolvabilityVerdict = std::variant<Solvable, NotSolvable, Unknown>;

inline bool is_solvable(const SolvabilityVerdict& v) { return std::holds_alternative<Solvable>(v); }

/// An exact rational point. When x is at infinity the equation checked is
/// y^2 - alpha z^2 = leading coefficient of P.
struct GlobalPoint {
  Abscissa x;
  Rational y, z;
  friend bool operator==(const GlobalPoint&, const GlobalPoint&) = default;
};

inline bool lies_on(const ChateletSurface& s, const GlobalPoint& pt) {
  const Rational value = s.value_at(pt.x);
  if (pt.y * pt.y - s.alpha() * pt.z * pt.z != value) return false;
  // (x, 0, 0) over a root of P is excluded from the smooth model.
  return !(value.is_zero() && pt.y.is_zero() && pt.z.is_zero());
}

// ---------------------------------------------------------------------------
// Certificate replay

namespace detail {

inline bool check_lift(const Rational& target, const PAdicApproximation& a) {
  if (target.is_zero() || padic_valuation(target, a.prime) != 0) return false;
  const Integer m = a.modulus();
  if (sgn(a.center) < 0 || a.center >= m) return false;
  return mod(a.center * a.center - residue(target, m), m) == 0;
}

}  // namespace detail

/// Re-derives the evidence of a certificate from the surface data alone.
inline bool replay(const ChateletSurface& s, const LocalCertificate& cert) {
  if (s.value_at(cert.witness_x) != cert.conic_value) return false;
  const Rational& c = cert.conic_value;
  return std::visit(
      [&](const auto& ev) -> bool {
        using T = std::decay_t<decltype(ev)>;
        if constexpr (std::is_same_v<T, RealSign>) {
          if (!cert.place.is_real()) return false;
          return !c.is_zero() && (s.alpha().sign() > 0 || c.sign() > 0);
        } else if constexpr (std::is_same_v<T, HilbertSymbolPlusOne>) {
          return !c.is_zero() && hilbert_symbol(s.alpha(), c, cert.place) == 1;
        } else if constexpr (std::is_same_v<T, SmoothFpPointLifted>) {
          if (cert.place.is_real()) return false;
          const Integer& p = cert.place.prime();
          if (ev.lift.prime != p) return false;
          if (padic_valuation(s.alpha(), p) != 0) return false;
          if (c.is_zero() || padic_valuation(c, p) < 0 || mod(detail::residue(c, p), p) == 0) return false;
          const Integer cr = detail::residue(c, p);
          const Integer ar = detail::residue(s.alpha(), p);
          if (mod(ev.y_mod_p * ev.y_mod_p - ar * ev.z_mod_p * ev.z_mod_p - cr, p) != 0) return false;
          if (ev.lifted == 'y') {
            if (mod(ev.y_mod_p, p) == 0) return false;
            const Rational target = c + s.alpha() * Rational(ev.z_mod_p) * Rational(ev.z_mod_p);
            return detail::check_lift(target, ev.lift);
          }
          if (ev.lifted == 'z') {
            if (mod(ev.z_mod_p, p) == 0) return false;
            const Rational target = (Rational(ev.y_mod_p) * Rational(ev.y_mod_p) - c) / s.alpha();
            return detail::check_lift(target, ev.lift);
          }
          return false;
        } else {
          if (cert.place.is_real()) return false;
          const Integer& p = cert.place.prime();
          if (ev.unit_root.prime != p) return false;
          const Rational square = ev.fixed == 'y' ? (ev.fixed_value * ev.fixed_value - c) / s.alpha()
                                                  : c + s.alpha() * ev.fixed_value * ev.fixed_value;
          if (square.is_zero()) return false;
          const auto [v, unit] = detail::split_valuation(square, p);
          return v == 2 * ev.half_valuation && detail::check_lift(unit, ev.unit_root);
        }
      },
      cert.evidence);
}

// ---------------------------------------------------------------------------
// The real place

namespace detail {

/// Abscissa order used for witnesses: height, nonnegative first, |num|, den.
inline bool precedes(const Rational& a, const Rational& b) {
  const Integer ha = height(a), hb = height(b);
  if (ha != hb) return ha < hb;
  if ((a.sign() < 0) != (b.sign() < 0)) return a.sign() >= 0;
  const Integer na = abs(a.num()), nb = abs(b.num());
  if (na != nb) return na < nb;
  return a.den() < b.den();
}

/// Simplest rational with P > 0, or nothing when P <= 0 on all of R.
inline std::optional<Rational> positive_witness(const QuarticPoly& p) {
  const Poly f = p.poly();
  auto roots = isolate_real_roots(f);
  // Open gaps between consecutive isolating intervals must be nonempty.
  for (bool again = true; again;) {
    again = false;
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
      if (!(roots[i].hi < roots[i + 1].lo)) {
        for (auto* r : {&roots[i], &roots[i + 1]}) {
          if (r->exact()) continue;
          const Rational mid = (r->lo + r->hi) / 2;
          const int s = f(mid).sign();
          if (s == 0) r->lo = r->hi = mid;
          else if (s == f(r->hi).sign()) r->hi = mid;
          else r->lo = mid;
        }
        again = true;
      }
    }
  }
  std::optional<Rational> best;
  for (std::size_t gap = 0; gap <= roots.size(); ++gap) {
    const std::optional<Rational> lo = gap == 0 ? std::nullopt : std::optional<Rational>(roots[gap - 1].hi);
    const std::optional<Rational> hi = gap == roots.size() ? std::nullopt : std::optional<Rational>(roots[gap].lo);
    const Rational x = simplest_between(lo, hi);
    if (f(x).sign() > 0 && (!best || precedes(x, *best))) best = x;
  }
  return best;
}

}  // namespace detail

inline SolvabilityVerdict real_solvability(const ChateletSurface& s) {
  const QuarticPoly& p = s.p();
  auto solvable_at = [&](const Abscissa& x) {
    return Solvable{LocalCertificate{Place::real(), x, s.value_at(x), RealSign{}}};
  };
  if (s.alpha().sign() > 0) {
    // Any value is y^2 - alpha z^2 for some real y, z; pick P(x) != 0.
    std::optional<Abscissa> witness;
    for_each_abscissa(8, [&](const Abscissa& x) {
      if (s.value_at(x).is_zero()) return false;
      witness = x;
      return true;
    });
    return solvable_at(*witness);
  }
  if (p.degree() == 4 && p[4].sign() > 0) return solvable_at(AtInfinity{});
  if (p.degree() == 4 && p.is_even()) {
    // Biquadratic: the maximum over x^2 = T >= 0 is at the vertex T* or at 0.
    const Rational vertex = -p[2] / (2 * p[4]);
    const Rational top = vertex.sign() > 0 ? p[0] - p[2] * p[2] / (4 * p[4]) : p[0];
    if (top.sign() < 0) {
      return NotSolvable{"alpha < 0 and P < 0 on P^1(R): maximum " + top.to_string() + " at x^2 = " +
                         (vertex.sign() > 0 ? vertex : Rational(0)).to_string()};
    }
  }
  if (auto x = detail::positive_witness(p)) return solvable_at(*x);
  return NotSolvable{"alpha < 0 and P has no real root with negative leading coefficient"};
}

// ---------------------------------------------------------------------------
// Finite places

namespace detail {

inline bool p_integral(const Rational& r, const Integer& p) {
  return mpz_divisible_p(r.den().get_mpz_t(), p.get_mpz_t()) == 0;
}

}  // namespace detail

/// Hensel-lifted smooth F_p point for an odd prime of good reduction.
inline SolvabilityVerdict good_prime_solvability(const ChateletSurface& s, const Integer& p,
                                                 unsigned precision = 3) {
  if (p == 2 || !is_prime(p)) throw PreconditionViolated("good_prime_solvability needs an odd prime");
  if (padic_valuation(s.alpha(), p) != 0) throw PreconditionViolated("alpha is not a unit at " + p.get_str());
  bool nonzero = false;
  for (const auto& c : s.p().coeffs()) {
    if (!detail::p_integral(c, p)) throw PreconditionViolated("P is not integral at " + p.get_str());
    if (mod(c.num(), p) != 0) nonzero = true;
  }
  if (!nonzero) throw PreconditionViolated("P vanishes identically mod " + p.get_str());

  std::optional<Abscissa> x;
  for (Integer xi = 0; xi < p && !x; ++xi) {
    if (mod(detail::residue(s.p()(Rational(xi)), p), p) != 0) x = Rational(xi);
  }
  if (!x && mod(s.p()[4].num(), p) != 0) x = AtInfinity{};
  if (!x) throw PreconditionViolated("P vanishes on all of P^1(F_" + p.get_str() + ")");

  const Rational c = s.value_at(*x);
  const Integer cr = detail::residue(c, p);
  const Integer ar = detail::residue(s.alpha(), p);
  // y^2 and c + alpha z^2 each take (p + 1) / 2 values; they must meet.
  for (Integer z = 0; z < p; ++z) {
    const Integer target = mod(cr + ar * z * z, p);
    if (sgn(target) != 0 && legendre_symbol(target, p) != 1) continue;
    SmoothFpPointLifted ev;
    ev.y_mod_p = detail::sqrt_mod_prime(target, p);
    if (p - ev.y_mod_p < ev.y_mod_p) ev.y_mod_p = p - ev.y_mod_p;
    ev.z_mod_p = z;
    if (sgn(ev.y_mod_p) != 0) {
      ev.lifted = 'y';
      ev.lift = hensel_lift_sqrt(c + s.alpha() * Rational(z) * Rational(z), p, precision);
    } else {
      ev.lifted = 'z';
      ev.lift = hensel_lift_sqrt(-c / s.alpha(), p, precision);
    }
    return Solvable{LocalCertificate{Place::finite(p), *x, c, ev}};
  }
  throw std::logic_error("no F_p point on a smooth conic");
}

/// Witness hunt over p-adic representatives x = m p^e, and infinity, testing
/// (alpha, P(x))_p = +1.
///
/// Candidates in order: 0, p^-1 ... p^-depth, infinity, then m p^e for
/// e = -depth..depth and p not dividing m < min(p^depth, grid_cap).
inline SolvabilityVerdict deep_local_search(const ChateletSurface& s, const Integer& p, unsigned depth = 8,
                                            unsigned long grid_cap = 4096) {
  const Place place = Place::finite(p);
  auto try_x = [&](const Abscissa& x) -> std::optional<Solvable> {
    const Rational c = s.value_at(x);
    if (c.is_zero() || hilbert_symbol(s.alpha(), c, place) != 1) return std::nullopt;
    return Solvable{LocalCertificate{place, x, c, HilbertSymbolPlusOne{}}};
  };
  if (auto hit = try_x(Rational(0))) return *hit;
  for (unsigned n = 1; n <= depth; ++n) {
    if (auto hit = try_x(Rational(Integer(1), pow(p, n)))) return *hit;
  }
  if (auto hit = try_x(AtInfinity{})) return *hit;
  const Integer pd = pow(p, depth);
  const Integer cap = std::min(pd, Integer(grid_cap));
  for (long e = -static_cast<long>(depth); e <= static_cast<long>(depth); ++e) {
    const Rational scale = e >= 0 ? Rational(pow(p, static_cast<unsigned long>(e)))
                                  : Rational(Integer(1), pow(p, static_cast<unsigned long>(-e)));
    for (Integer m = 1; m < cap; ++m) {
      if (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t()) != 0) continue;
      for (int sign : {1, -1}) {
        if (auto hit = try_x(Rational(sign * m) * scale)) return *hit;
      }
    }
  }
  return Unknown{"no witness among p-adic candidates to depth " + std::to_string(depth)};
}

// ---------------------------------------------------------------------------
// Everywhere local solvability

struct PlaceVerdict {
  Place place = Place::real();
  SolvabilityVerdict verdict;
  friend bool operator==(const PlaceVerdict&, const PlaceVerdict&) = default;
};

/// Every prime outside the bad set is odd, does not divide alpha, and has P
/// primitive with nonzero reduction, so the pigeonhole argument applies.
struct GoodPrimesBlanket {
  std::vector<Integer> bad_primes;
  std::vector<Integer> spot_checked;
  std::string justification;
  friend bool operator==(const GoodPrimesBlanket&, const GoodPrimesBlanket&) = default;
};

enum class Status { Solvable, NotSolvable, Unknown };

struct LocalSolvabilityMap {
  std::vector<PlaceVerdict> places;
  GoodPrimesBlanket blanket;

  Status aggregate() const {
    Status out = Status::Solvable;
    for (const auto& pv : places) {
      if (std::holds_alternative<NotSolvable>(pv.verdict)) return Status::NotSolvable;
      if (std::holds_alternative<Unknown>(pv.verdict)) out = Status::Unknown;
    }
    return out;
  }
  friend bool operator==(const LocalSolvabilityMap&, const LocalSolvabilityMap&) = default;
};

namespace detail {

inline void insert_primes(std::set<Integer>& out, const Integer& n, const FactorBudget& budget) {
  if (sgn(n) == 0) return;
  for (const auto& f : factor(n, budget).factors) out.insert(f.prime);
}

}  // namespace detail

/// {2, 3} together with the primes of alpha, of the content of P, of disc(P)
/// and of the leading coefficient of P in primitive integer form.
inline std::vector<Integer> bad_primes(const ChateletSurface& s, const FactorBudget& budget = {}) {
  std::set<Integer> out{2, 3};
  detail::insert_primes(out, s.alpha_squarefree(), budget);
  const PrimitiveForm prim = primitive_form(s.p());
  const auto& c = prim.coeffs;
  detail::insert_primes(out, prim.unit.num(), budget);
  detail::insert_primes(out, prim.unit.den(), budget);
  detail::insert_primes(out, c[static_cast<std::size_t>(s.p().degree())], budget);
  if (s.p().degree() == 4 && s.p().is_even()) {
    // disc(a x^4 + b x^2 + c) = 16 a c (b^2 - 4ac)^2.
    detail::insert_primes(out, c[4], budget);
    detail::insert_primes(out, c[0], budget);
    detail::insert_primes(out, c[2] * c[2] - 4 * c[4] * c[0], budget);
  } else {
    std::array<Rational, 5> coeffs{};
    for (std::size_t i = 0; i < 5; ++i) coeffs[i] = Rational(c[i]);
    const Rational disc = discriminant(QuarticPoly(coeffs));
    detail::insert_primes(out, disc.num(), budget);
  }
  return {out.begin(), out.end()};
}

inline LocalSolvabilityMap everywhere_locally_solvable(const ChateletSurface& s, unsigned depth = 8,
                                                       const FactorBudget& budget = {}) {
  LocalSolvabilityMap out;
  out.places.push_back({Place::real(), real_solvability(s)});
  const auto bad = bad_primes(s, budget);
  for (const auto& p : bad) {
    SolvabilityVerdict v = deep_local_search(s, p, depth);
    if (std::holds_alternative<Unknown>(v) && p != 2) {
      try {
        v = good_prime_solvability(s, p);
      } catch (const PreconditionViolated&) {
        // Keep the Unknown from the search.
      }
    }
    out.places.push_back({Place::finite(p), std::move(v)});
  }
  out.blanket.bad_primes = bad;
  out.blanket.justification =
      "p outside the bad set: P is nonzero mod p of degree <= 4 < p, so some x has P(x) != 0 mod p; "
      "y^2 and P(x) + alpha z^2 each take (p+1)/2 values mod p and meet at a smooth point, which "
      "lifts by Hensel's lemma";
  for (long q = 5; q < 30; ++q) {
    const Integer qi = q;
    if (!is_prime_u64(static_cast<std::uint64_t>(q)) || std::binary_search(bad.begin(), bad.end(), qi)) continue;
    const auto v = good_prime_solvability(s, qi);
    if (!is_solvable(v) || !replay(s, std::get<Solvable>(v).certificate)) {
      throw std::logic_error("good prime " + qi.get_str() + " failed its local check");
    }
    out.blanket.spot_checked.push_back(qi);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rational points

struct PointSearchOptions {
  long height_bound = 50;
  unsigned workers = 1;
  /// Box for the (Z, W) norm-form enumeration used when alpha is neither a
  /// square nor minus a square.
  long norm_form_box = 200;
  FactorBudget budget{};
};

namespace detail {

/// Exact (y, z) with y^2 - alpha z^2 = value, if one is found.
inline std::optional<std::pair<Rational, Rational>> represent_by_norm_form(const ChateletSurface& s,
                                                                           const Rational& value,
                                                                           const PointSearchOptions& opt) {
  const Rational& alpha = s.alpha();
  if (value.is_zero()) {
    if (auto r = is_rational_square(alpha)) return std::pair<Rational, Rational>{*r, 1};
    return std::nullopt;
  }
  if (auto k = is_rational_square(-alpha)) {
    auto yz = sum_of_two_squares(value, opt.budget);
    if (!yz) return std::nullopt;
    return std::pair<Rational, Rational>{yz->first, yz->second / *k};
  }
  if (auto r = is_rational_square(alpha)) {
    // (y - r z)(y + r z) = value with y - r z = 1.
    return std::pair<Rational, Rational>{(value + 1) / 2, (value - 1) / (2 * *r)};
  }
  const Integer& a = s.alpha_squarefree();
  std::set<Integer> places{2};
  detail::insert_primes(places, a, opt.budget);
  detail::insert_primes(places, value.num(), opt.budget);
  detail::insert_primes(places, value.den(), opt.budget);
  if (hilbert_symbol(Rational(a), value, Place::real()) != 1) return std::nullopt;
  for (const auto& p : places) {
    if (hilbert_symbol(Rational(a), value, Place::finite(p)) != 1) return std::nullopt;
  }
  // alpha = a k^2; value = n / d^2 with n = num * den.
  const Rational k = *is_rational_square(alpha / Rational(a));
  const Integer n = value.num() * value.den();
  for (long w = 1; w <= opt.norm_form_box; ++w) {
    for (long zz = 0; zz <= opt.norm_form_box; ++zz) {
      const Integer target = n * w * w + a * zz * zz;
      if (!is_perfect_square(target)) continue;
      // Y^2 - a Z^2 = n W^2 with Y = sqrt(target).
      const Rational scale(Integer(1), value.den() * w);
      const Rational y = Rational(isqrt(target)) * scale;
      const Rational z = Rational(zz) * scale / k;
      return std::pair<Rational, Rational>{y, z};
    }
  }
  return std::nullopt;
}

/// P = F / lcm with F integral; used to decide candidates in machine words.
struct IntegerKernel {
  std::array<__int128, 5> f{};
  __int128 lcm = 1;
  bool usable = false;
};

inline IntegerKernel make_kernel(const ChateletSurface& s, long bound) {
  IntegerKernel k;
  if (!is_rational_square(-s.alpha())) return k;  // fast path covers sums of two squares only
  Integer lcm = 1;
  for (const auto& c : s.p().coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.den().get_mpz_t());
  Integer worst = 0;
  std::array<Integer, 5> f;
  for (std::size_t i = 0; i < 5; ++i) {
    f[i] = s.p()[i].num() * (lcm / s.p()[i].den());
    worst = std::max(worst, abs(f[i]));
  }
  const Integer limit = pow(Integer(2), 120);
  if (worst * lcm * 5 * pow(Integer(bound), 4) >= limit) return k;
  if (worst > Integer(std::numeric_limits<long>::max()) || lcm > Integer(std::numeric_limits<long>::max())) return k;
  for (std::size_t i = 0; i < 5; ++i) k.f[i] = static_cast<__int128>(f[i].get_si());
  k.lcm = lcm.get_si();
  k.usable = true;
  return k;
}

struct Hit {
  long height = -1;
  std::size_t index = 0;  // position within the height, infinity last at height 1
  GlobalPoint point;
};

}  // namespace detail

/// First rational point in canonical abscissa order with height <= bound.
inline std::optional<GlobalPoint> find_rational_point(const ChateletSurface& s, const PointSearchOptions& opt = {}) {
  const detail::IntegerKernel kernel = detail::make_kernel(s, opt.height_bound);
  const bool even = s.p().is_even();
  auto attempt = [&](const Abscissa& x) -> std::optional<GlobalPoint> {
    const Rational value = s.value_at(x);
    auto yz = detail::represent_by_norm_form(s, value, opt);
    if (!yz) return std::nullopt;
    GlobalPoint pt{x, yz->first, yz->second};
    if (!lies_on(s, pt)) throw std::logic_error("point search produced a point off the surface");
    return pt;
  };

  std::atomic<long> best_height{opt.height_bound + 1};
  const unsigned workers = std::max(1u, opt.workers);
  std::vector<std::optional<detail::Hit>> hits(workers);

  auto run = [&](unsigned w) {
    for (long h = static_cast<long>(w); h <= opt.height_bound; h += static_cast<long>(workers)) {
      if (h > best_height.load()) return;
      const auto fracs = fractions_of_height(h);
      const std::size_t positives = h == 0 ? 1 : fracs.size() / 2;
      for (std::size_t i = 0; i < fracs.size(); ++i) {
        const auto [pn, qn] = fracs[i];
        // P(-x) = P(x) for even P, and the nonnegative twin came first.
        if (even && i >= positives) break;
        if (kernel.usable) {
          __int128 acc = 0, pp = 1;
          std::array<__int128, 5> qpow{1, qn, static_cast<__int128>(qn) * qn, 0, 0};
          qpow[3] = qpow[2] * qn;
          qpow[4] = qpow[3] * qn;
          for (std::size_t j = 0; j < 5; ++j) {
            acc += kernel.f[j] * pp * qpow[4 - j];
            pp *= pn;
          }
          const __int128 m = acc * kernel.lcm;
          if (m < 0) continue;
          if (m != 0 && m < (static_cast<__int128>(1) << 64) &&
              !is_sum_of_two_squares(static_cast<std::uint64_t>(m), opt.budget)) {
            continue;
          }
        }
        if (auto pt = attempt(Rational(pn, qn))) {
          hits[w] = detail::Hit{h, i, *pt};
          long cur = best_height.load();
          while (h < cur && !best_height.compare_exchange_weak(cur, h)) {
          }
          return;
        }
      }
      if (h == 1 && s.p().degree() == 4) {
        if (auto pt = attempt(AtInfinity{})) {
          hits[w] = detail::Hit{h, fracs.size(), *pt};
          long cur = best_height.load();
          while (h < cur && !best_height.compare_exchange_weak(cur, h)) {
          }
          return;
        }
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  std::optional<detail::Hit> best;
  for (const auto& h : hits) {
    if (h && (!best || h->height < best->height || (h->height == best->height && h->index < best->index))) best = h;
  }
  if (!best) return std::nullopt;
  return best->point;
}

// ---------------------------------------------------------------------------
// Classification

enum class HasseKind { HasPoint, CandidateHasseViolation, LocallyObstructed, Undecided };

inline std::string to_string(HasseKind k) {
  switch (k) {
    case HasseKind::HasPoint: return "HasPoint";
    case HasseKind::CandidateHasseViolation: return "CandidateHasseViolation";
    case HasseKind::LocallyObstructed: return "LocallyObstructed";
    case HasseKind::Undecided: return "Undecided";
  }
  return "?";
}

struct HasseReport {
  HasseKind kind = HasseKind::Undecided;
  std::optional<GlobalPoint> point;
  LocalSolvabilityMap local;
  std::optional<Place> obstructed_place;
  long search_bound = 0;
  friend bool operator==(const HasseReport&, const HasseReport&) = default;
};

inline HasseReport hasse_violation_report(const ChateletSurface& s, const PointSearchOptions& opt = {},
                                          unsigned depth = 8) {
  HasseReport r;
  r.search_bound = opt.height_bound;
  r.local = everywhere_locally_solvable(s, depth, opt.budget);
  for (const auto& pv : r.local.places) {
    if (std::holds_alternative<NotSolvable>(pv.verdict)) {
      r.kind = HasseKind::LocallyObstructed;
      r.obstructed_place = pv.place;
      return r;
    }
  }
  r.point = find_rational_point(s, opt);
  if (r.point) r.kind = HasseKind::HasPoint;
  else if (r.local.aggregate() == Status::Solvable) r.kind = HasseKind::CandidateHasseViolation;
  else r.kind = HasseKind::Undecided;
  return r;
}

}  // namespace chatelet
