#pragma once

// Genus-one quartic curves w^2 = f(t): complete bounded point search,
// points at infinity on the weighted model, and informal local evidence.

#include "chatelet/arith.hpp"
#include "chatelet/heights.hpp"
#include "chatelet/local.hpp"
#include "chatelet/quartic.hpp"
#include "chatelet/surface.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace chatelet {

/// w^2 = f(t), f separable of degree 4; projective model w^2 = f(t, s) in P(1,1,2).
class QuarticCurve {
 public:
  explicit QuarticCurve(QuarticPoly f, std::string name = {}) : f_(std::move(f)), name_(std::move(name)) {
    if (f_.degree() != 4) throw std::invalid_argument("curve needs a degree 4 quartic");
    if (!is_separable(f_)) throw std::invalid_argument("curve quartic must be separable");
  }
  const QuarticPoly& f() const { return f_; }
  const std::string& name() const { return name_; }
  friend bool operator==(const QuarticCurve&, const QuarticCurve&) = default;

 private:
  QuarticPoly f_;
  std::string name_;
};

namespace curves {

/// C: w^2 = t^4 + 74 t^2 + 17.
inline QuarticCurve c() { return QuarticCurve(QuarticPoly::from_descending({1, 0, 74, 0, 17}), "C"); }

/// C': w^2 = (-6t^2 - 1)(2 - t^2) = 6t^4 - 11t^2 - 2.
inline QuarticCurve c_prime() {
  const QuarticPoly f = QuarticPoly::from_poly(Poly({-1, 0, -6}) * Poly({2, 0, -1}));
  return QuarticCurve(f, "Cprime");
}

}  // namespace curves

struct CurvePoint {
  Rational t, w;
  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

namespace detail {

inline bool is_square_u128(unsigned __int128 n) {
  // Squares mod 64, 63, 65 and 11 filter about 99.6% of nonsquares.
  const unsigned r64 = static_cast<unsigned>(n & 63), r63 = static_cast<unsigned>(n % 63), r65 = static_cast<unsigned>(n % 65),
                 r11 = static_cast<unsigned>(n % 11);
  auto square_mod = [](unsigned r, unsigned m) {
    for (unsigned x = 0; x <= m / 2; ++x) {
      if (x * x % m == r) return true;
    }
    return false;
  };
  static const auto table = [&] {
    std::array<std::array<bool, 65>, 4> t{};
    for (unsigned r = 0; r < 64; ++r) t[3][r] = square_mod(r, 64);
    for (unsigned r = 0; r < 63; ++r) t[0][r] = square_mod(r, 63);
    for (unsigned r = 0; r < 65; ++r) t[1][r] = square_mod(r, 65);
    for (unsigned r = 0; r < 11; ++r) t[2][r] = square_mod(r, 11);
    return t;
  }();
  if (!table[3][r64] || !table[0][r63] || !table[1][r65] || !table[2][r11]) return false;
  auto root = static_cast<unsigned __int128>(std::sqrt(static_cast<long double>(n)));
  while (root * root > n) --root;
  while ((root + 1) * (root + 1) <= n) ++root;
  return root * root == n;
}

/// L * f with integer coefficients, together with L.
struct CurveKernel {
  std::array<Integer, 5> f;
  Integer lcm = 1;
  std::array<__int128, 5> small{};
  __int128 small_lcm = 1;
  bool usable = false;
};

inline CurveKernel make_curve_kernel(const QuarticPoly& f, long bound) {
  CurveKernel k;
  for (const auto& c : f.coeffs()) mpz_lcm(k.lcm.get_mpz_t(), k.lcm.get_mpz_t(), c.den().get_mpz_t());
  Integer worst = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    k.f[i] = f[i].num() * (k.lcm / f[i].den());
    worst = std::max(worst, abs(k.f[i]));
  }
  if (worst * k.lcm * 5 * pow(Integer(std::max(bound, 1L)), 4) < pow(Integer(2), 120)) {
    for (std::size_t i = 0; i < 5; ++i) k.small[i] = static_cast<__int128>(k.f[i].get_si());
    k.small_lcm = k.lcm.get_si();
    k.usable = true;
  }
  return k;
}

/// The point over t = p/q when L * F(p, q) is a square, F(p, q) = L q^4 f(p/q);
/// then w = sqrt(L * F(p, q)) / (L q^2).
inline std::optional<CurvePoint> curve_point_at(const CurveKernel& k, long p, long q) {
  if (k.usable) {
    __int128 acc = 0, pp = 1;
    std::array<__int128, 5> qpow{1, q, static_cast<__int128>(q) * q, 0, 0};
    qpow[3] = qpow[2] * q;
    qpow[4] = qpow[3] * q;
    for (std::size_t j = 0; j < 5; ++j) {
      acc += k.small[j] * pp * qpow[4 - j];
      pp *= p;
    }
    const __int128 m = acc * k.small_lcm;
    if (m < 0 || !is_square_u128(static_cast<unsigned __int128>(m))) return std::nullopt;
  }
  Integer acc = 0, pp = 1;
  const Integer qq = q;
  for (std::size_t j = 0; j < 5; ++j) {
    acc += k.f[j] * pp * pow(qq, 4 - j);
    pp *= p;
  }
  const Integer m = acc * k.lcm;
  if (sgn(m) < 0 || !is_perfect_square(m)) return std::nullopt;
  return CurvePoint{Rational(p, q), Rational(isqrt(m), k.lcm * qq * qq)};
}

}  // namespace detail

/// All affine rational points with height(t) <= bound, in canonical t order,
/// each t followed by w >= 0 then -w.
inline std::vector<CurvePoint> affine_point_search(const QuarticCurve& curve, long height_bound, unsigned workers = 1) {
  const detail::CurveKernel kernel = detail::make_curve_kernel(curve.f(), height_bound);
  const bool even = curve.f().is_even();
  workers = std::max(1u, workers);
  std::vector<std::vector<std::pair<long, std::vector<CurvePoint>>>> found(workers);

  auto run = [&](unsigned w) {
    for (long h = static_cast<long>(w); h <= height_bound; h += static_cast<long>(workers)) {
      std::vector<CurvePoint> at_h;
      auto visit = [&](long p, long q) {
        if (auto pt = detail::curve_point_at(kernel, p, q)) at_h.push_back(*pt);
        else return;
        if (even && p != 0) at_h.push_back(CurvePoint{Rational(-p, q), at_h.back().w});
      };
      if (h == 0) {
        visit(0, 1);
      } else {
        for (long p = 1; p < h; ++p) {
          if (std::gcd(p, h) == 1) visit(p, h);
        }
        for (long q = 1; q <= h; ++q) {
          if (std::gcd(h, q) == 1) visit(h, q);
        }
        if (!even) {
          for (long p = 1; p < h; ++p) {
            if (std::gcd(p, h) == 1) visit(-p, h);
          }
          for (long q = 1; q <= h; ++q) {
            if (std::gcd(h, q) == 1) visit(-h, q);
          }
        }
      }
      if (!at_h.empty()) found[w].emplace_back(h, std::move(at_h));
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }

  std::vector<CurvePoint> base;
  for (auto& per_worker : found) {
    for (auto& [h, pts] : per_worker) base.insert(base.end(), pts.begin(), pts.end());
  }
  std::stable_sort(base.begin(), base.end(),
                   [](const CurvePoint& a, const CurvePoint& b) { return detail::precedes(a.t, b.t); });
  std::vector<CurvePoint> out;
  for (const auto& pt : base) {
    out.push_back(pt);
    if (!pt.w.is_zero()) out.push_back(CurvePoint{pt.t, -pt.w});
  }
  return out;
}

struct PointsAtInfinity {
  int count = 0;
  /// w-coordinates of (1 : w : 0).
  std::vector<Rational> witnesses;
  friend bool operator==(const PointsAtInfinity&, const PointsAtInfinity&) = default;
};

inline PointsAtInfinity points_at_infinity(const QuarticCurve& curve) {
  PointsAtInfinity out;
  if (auto r = is_rational_square(curve.f()[4])) {
    out.count = 2;
    out.witnesses = {*r, -*r};
  }
  return out;
}

/// The t = 0 and w = 0 eliminations for C'.
struct SymmetryAnalysis {
  Rational value_at_t0;  // w^2 at t = 0
  bool t0_has_point = true;
  std::vector<Rational> w0_t_squares;  // t^2 values where w = 0
  bool w0_has_point = true;
  /// The two-point dichotomy resolves to zero points.
  bool resolved() const { return !t0_has_point && !w0_has_point; }
  friend bool operator==(const SymmetryAnalysis&, const SymmetryAnalysis&) = default;
};

inline SymmetryAnalysis symmetry_case_analysis_Cprime() {
  const QuarticCurve cp = curves::c_prime();
  SymmetryAnalysis a;
  a.value_at_t0 = cp.f()(Rational(0));
  a.t0_has_point = is_rational_square(a.value_at_t0).has_value();
  // f = (-6s - 1)(2 - s) in s = t^2.
  a.w0_t_squares = {Rational(2), Rational(-1, 6)};
  a.w0_has_point = false;
  for (const auto& s : a.w0_t_squares) {
    if (!(cp.f()[4] * s * s + cp.f()[2] * s + cp.f()[0]).is_zero()) throw std::logic_error("C' factorization mismatch");
    if (auto t = is_rational_square(s); t && cp.f()(*t).is_zero()) a.w0_has_point = true;
  }
  return a;
}

struct CurvePlaceEvidence {
  Place place = Place::real();
  Status status = Status::Unknown;
  std::optional<Abscissa> witness;
  friend bool operator==(const CurvePlaceEvidence&, const CurvePlaceEvidence&) = default;
};

namespace detail {

/// Odd p, f p-integral with unit nonsquare leading coefficient, and f(r) a
/// nonzero nonsquare mod p for every residue r: no Q_p point at all.
inline bool residue_obstruction(const QuarticPoly& f, const Integer& p) {
  if (p == 2) return false;
  for (const auto& c : f.coeffs()) {
    if (!c.is_zero() && padic_valuation(c, p) < 0) return false;
  }
  const Integer lead = mod(f[4].num() * f[4].den(), p);
  if (sgn(lead) == 0 || legendre_symbol(lead, p) != -1) return false;
  for (Integer r = 0; r < p; ++r) {
    Integer v = 0;
    for (std::size_t i = 5; i-- > 0;) {
      // c = num/den with den a p-unit: num * den^-1 mod p.
      Integer inv;
      mpz_invert(inv.get_mpz_t(), f[i].den().get_mpz_t(), p.get_mpz_t());
      v = mod(v * r + f[i].num() * inv, p);
    }
    if (sgn(v) == 0 || legendre_symbol(v, p) != -1) return false;
  }
  return true;
}

}  // namespace detail

/// Real place and every prime <= prime_bound. A prime is NotSolvable only by
/// the exact residue obstruction; otherwise a bounded search either finds a
/// witness or leaves it Unknown.
inline std::vector<CurvePlaceEvidence> local_points_evidence(const QuarticCurve& curve, long prime_bound,
                                                             unsigned depth = 4) {
  std::vector<CurvePlaceEvidence> out;
  const QuarticPoly& f = curve.f();
  CurvePlaceEvidence real;
  if (f[4].sign() > 0) {
    real.status = Status::Solvable;
    real.witness = AtInfinity{};
  } else if (auto x = detail::positive_witness(f)) {
    real.status = Status::Solvable;
    real.witness = Abscissa(*x);
  } else if (!isolate_real_roots(f.poly()).empty()) {
    real.status = Status::Solvable;  // w = 0 at a real root
  } else {
    real.status = Status::NotSolvable;
  }
  out.push_back(real);

  for (long p = 2; p <= prime_bound; ++p) {
    if (!is_prime_u64(static_cast<std::uint64_t>(p))) continue;
    const Integer pp = p;
    CurvePlaceEvidence ev;
    ev.place = Place::finite(pp);
    auto accept = [&](const Abscissa& x, const Rational& value) {
      if (value.is_zero() || is_square_in_Qp(value, pp)) {
        ev.status = Status::Solvable;
        ev.witness = x;
        return true;
      }
      return false;
    };
    if (detail::residue_obstruction(f, pp)) {
      ev.status = Status::NotSolvable;
      out.push_back(ev);
      continue;
    }
    bool done = false;
    const long grid = p * p;
    for (long m = 0; m < grid && !done; ++m) done = accept(Abscissa(Rational(m)), f(Rational(m)));
    for (unsigned e = 1; e <= depth && !done; ++e) {
      const Rational x(Integer(1), pow(pp, e));
      done = accept(Abscissa(x), f(x));
    }
    if (!done && is_square_in_Qp(f[4], pp)) {
      ev.status = Status::Solvable;
      ev.witness = AtInfinity{};
    }
    out.push_back(ev);
  }
  return out;
}

/// Search evidence for one curve. Nonexistence of rational points beyond the
/// bound is not decided here.
struct CurveReport {
  std::string name;
  QuarticPoly f;
  long search_bound = 0;
  std::vector<CurvePoint> affine_points;
  PointsAtInfinity at_infinity;
  std::optional<SymmetryAnalysis> symmetry;
  std::vector<CurvePlaceEvidence> local;
  std::vector<std::string> trusted_inputs;
  friend bool operator==(const CurveReport&, const CurveReport&) = default;
};

inline CurveReport curve_report(const QuarticCurve& curve, long bound, unsigned workers = 1, long prime_bound = 30) {
  CurveReport r;
  r.name = curve.name();
  r.f = curve.f();
  r.search_bound = bound;
  r.affine_points = affine_point_search(curve, bound, workers);
  r.at_infinity = points_at_infinity(curve);
  if (curve.name() == "Cprime") r.symmetry = symmetry_case_analysis_Cprime();
  r.local = local_points_evidence(curve, prime_bound);
  if (curve.name() == "C" || curve.name() == "Cprime") r.trusted_inputs = {"Jac(" + curve.name() + ")(Q) = Z/2Z"};
  return r;
}

}  // namespace chatelet
