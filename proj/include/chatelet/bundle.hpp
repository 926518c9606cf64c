#pragma once

// The Chatelet surface bundle
//
//   y^2 + z^2 = (6u^2 - v^2)^2 P0(x) + (12 v^2)^2 Pinf(x),
//   P0 = (x^2 - 2)(3 - x^2),  Pinf = 2x^4 + 3x^2 - 1,
//
// over P^1_(u:v), with the per-fiber checks behind its arithmetic: the
// irreducibility criterion, the real-point identity, the 2- and 3-adic
// valuation lemmas, and a full scan of fibers up to a height bound.

#include "chatelet/arith.hpp"
#include "chatelet/heights.hpp"
#include "chatelet/local.hpp"
#include "chatelet/quartic.hpp"
#include "chatelet/rational.hpp"
#include "chatelet/surface.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chatelet {

class DegenerateFiber : public std::runtime_error {
 public:
  explicit DegenerateFiber(const std::string& what) : std::runtime_error(what) {}
};

/// y^2 - alpha z^2 = a^2 P(x) + b^2 Q(x) over P^1_(a:b).
class ChateletBundle {
 public:
  ChateletBundle(Rational alpha, QuarticPoly p, QuarticPoly q)
      : alpha_(std::move(alpha)), p_(std::move(p)), q_(std::move(q)) {
    if (alpha_.is_zero()) throw std::invalid_argument("alpha must be nonzero");
    // Linear independence of the coefficient vectors: some 2x2 minor is nonzero.
    bool independent = false;
    for (std::size_t i = 0; i < 5 && !independent; ++i) {
      for (std::size_t j = i + 1; j < 5 && !independent; ++j) {
        independent = p_[i] * q_[j] - p_[j] * q_[i] != 0;
      }
    }
    if (!independent) throw std::invalid_argument("P and Q are linearly dependent");
  }

  const Rational& alpha() const { return alpha_; }
  const QuarticPoly& p() const { return p_; }
  const QuarticPoly& q() const { return q_; }

  QuarticPoly fiber_polynomial(const Rational& a, const Rational& b) const {
    return (a * a) * p_ + (b * b) * q_;
  }

 private:
  Rational alpha_;
  QuarticPoly p_, q_;
};

/// (u:v) in lowest terms with v > 0, or (1:0).
class ProjectivePoint {
 public:
  ProjectivePoint(Integer u, Integer v) {
    if (sgn(u) == 0 && sgn(v) == 0) throw std::invalid_argument("(0:0) is not a point");
    const Integer g = gcd(u, v);
    u /= g;
    v /= g;
    if (sgn(v) < 0 || (sgn(v) == 0 && sgn(u) < 0)) {
      u = -u;
      v = -v;
    }
    u_ = std::move(u);
    v_ = std::move(v);
  }
  ProjectivePoint(long u, long v) : ProjectivePoint(Integer(u), Integer(v)) {}
  explicit ProjectivePoint(const Rational& u) : ProjectivePoint(u.num(), u.den()) {}
  static ProjectivePoint infinity() { return ProjectivePoint(1, 0); }

  const Integer& u() const { return u_; }
  const Integer& v() const { return v_; }
  bool is_affine() const { return sgn(v_) != 0; }
  Integer height() const {
    const Integer au = abs(u_);
    return au > v_ ? au : v_;
  }
  std::string to_string() const { return "(" + u_.get_str() + ":" + v_.get_str() + ")"; }
  friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;

 private:
  Integer u_, v_;
};

/// Canonical points of height <= bound: affine points in abscissa order of
/// u/v, then (1:0).
inline std::vector<ProjectivePoint> projective_points_up_to(long bound) {
  std::vector<ProjectivePoint> out;
  for (long h = 0; h <= bound; ++h) {
    for (auto [p, q] : fractions_of_height(h)) out.emplace_back(p, q);
  }
  out.push_back(ProjectivePoint::infinity());
  return out;
}

namespace theorem_one {

inline QuarticPoly p0() { return QuarticPoly::from_descending({-1, 0, 5, 0, -6}); }
inline QuarticPoly p_inf() { return QuarticPoly::from_descending({2, 0, 3, 0, -1}); }
inline ChateletBundle bundle() { return ChateletBundle(-1, p0(), p_inf()); }

/// a = 6u^2 - v^2, b = 12 v^2.
inline std::pair<Integer, Integer> ab_parameters(const ProjectivePoint& pt) {
  return {6 * pt.u() * pt.u() - pt.v() * pt.v(), 12 * pt.v() * pt.v()};
}

/// x^4 (2b^2 - a^2) + x^2 (3b^2 + 5a^2) - (6a^2 + b^2).
inline BiquadraticQuartic expanded_fiber(const Rational& a, const Rational& b) {
  return {2 * b * b - a * a, 3 * b * b + 5 * a * a, -(6 * a * a + b * b)};
}

/// The fiber over (u:v) as a Chatelet surface with alpha = -1.
inline ChateletSurface fiber_at(const ProjectivePoint& pt) {
  const auto [a, b] = ab_parameters(pt);
  const QuarticPoly p = bundle().fiber_polynomial(a, b);
  if (p != expanded_fiber(a, b).quartic()) throw std::logic_error("fiber expansion mismatch");
  try {
    return ChateletSurface(-1, p);
  } catch (const InvalidSurface& e) {
    throw DegenerateFiber("fiber over " + pt.to_string() + ": " + e.what());
  }
}

/// P_t = Pinf + t^2 P0 = (2 - t^2) x^4 + (3 + 5t^2) x^2 + (-6t^2 - 1).
inline BiquadraticQuartic p_t_polynomial(const Rational& t) {
  const Rational t2 = t * t;
  return {2 - t2, 3 + 5 * t2, -6 * t2 - 1};
}

/// b^2 - 4ac for P_t; equals t^4 + 74 t^2 + 17.
inline Rational discriminant_curve_value(const Rational& t) {
  const BiquadraticQuartic q = p_t_polynomial(t);
  return q.b * q.b - 4 * q.a * q.c;
}

/// ac for P_t: (-6t^2 - 1)(2 - t^2).
inline Rational ac_curve_value(const Rational& t) {
  const BiquadraticQuartic q = p_t_polynomial(t);
  return q.a * q.c;
}

/// 4(2b^2 - a^2)(-6a^2 - b^2) - (3b^2 + 5a^2)^2 == -17b^4 - 74a^2b^2 - a^4.
inline bool real_point_identity_check(const Integer& a, const Integer& b) {
  const Integer a2 = a * a, b2 = b * b;
  const Integer lhs = 4 * (2 * b2 - a2) * (-6 * a2 - b2) - (3 * b2 + 5 * a2) * (3 * b2 + 5 * a2);
  const Integer rhs = -17 * b2 * b2 - 74 * a2 * b2 - a2 * a2;
  return lhs == rhs;
}

/// The fiber polynomial at x^2 = -(3b^2 + 5a^2) / (2(2b^2 - a^2)), valid when
/// 2b^2 - a^2 < 0; positive for every such (a, b).
inline Rational vertex_value(const Integer& a, const Integer& b) {
  const BiquadraticQuartic q = expanded_fiber(a, b);
  if (q.a.sign() >= 0) throw std::domain_error("vertex formula needs 2b^2 - a^2 < 0");
  const Rational t = -q.b / (2 * q.a);
  return q.a * t * t + q.b * t + q.c;
}

/// True when the fiber is irreducible; the criterion is tried first.
struct IrreducibilityEvidence {
  Rational discriminant_value;  // b^2 - 4ac of the fiber quartic
  Rational ac_value;
  bool criterion_holds = false;
  bool oracle_irreducible = false;
  bool irreducible = false;
  friend bool operator==(const IrreducibilityEvidence&, const IrreducibilityEvidence&) = default;
};

inline IrreducibilityEvidence irreducibility_evidence(const ProjectivePoint& pt, const FactorBudget& budget = {}) {
  const auto [a, b] = ab_parameters(pt);
  const BiquadraticQuartic q = expanded_fiber(a, b);
  IrreducibilityEvidence ev;
  ev.discriminant_value = q.b * q.b - 4 * q.a * q.c;
  ev.ac_value = q.a * q.c;
  ev.criterion_holds = biquadratic_criterion(q);
  ev.oracle_irreducible = factorization_oracle(q.quartic(), budget).irreducible();
  ev.irreducible = ev.criterion_holds || ev.oracle_irreducible;
  return ev;
}

inline bool verify_fiber_irreducible(const ProjectivePoint& pt, const FactorBudget& budget = {}) {
  if (!pt.is_affine()) throw std::invalid_argument("the fiber over (1:0) is reducible by construction");
  const auto [a, b] = ab_parameters(pt);
  return biquadratic_irreducible(expanded_fiber(a, b), budget);
}

/// v_3(b / a), checked to be positive along the case split on 3 | v.
inline long valuation_lemma_v3(const ProjectivePoint& pt) {
  if (!pt.is_affine()) throw std::invalid_argument("valuation lemma needs v != 0");
  const auto [a, b] = ab_parameters(pt);
  const Integer three = 3;
  const long v = padic_valuation(Rational(b, a), three);
  const bool three_divides_v = mpz_divisible_ui_p(pt.v().get_mpz_t(), 3) != 0;
  if (!three_divides_v) {
    if (mpz_divisible_ui_p(a.get_mpz_t(), 3) != 0 || padic_valuation(b, three) != 1) {
      throw std::logic_error("v3 case 3 !| v violated at " + pt.to_string());
    }
  } else if (padic_valuation(a, three) != 1 || padic_valuation(b, three) < 3) {
    throw std::logic_error("v3 case 3 | v violated at " + pt.to_string());
  }
  if (v < 1) throw std::logic_error("v3(b/a) < 1 at " + pt.to_string());
  return v;
}

/// v_2(b / a), checked to be at least 2 along the case split on 2 | v.
inline long valuation_lemma_v2(const ProjectivePoint& pt) {
  if (!pt.is_affine()) throw std::invalid_argument("valuation lemma needs v != 0");
  const auto [a, b] = ab_parameters(pt);
  const Integer two = 2;
  const long v = padic_valuation(Rational(b, a), two);
  const bool two_divides_v = mpz_even_p(pt.v().get_mpz_t()) != 0;
  if (!two_divides_v) {
    // v odd: a = 6u^2 - v^2 is odd and b = 12 v^2 has v_2 = 2.
    if (mpz_odd_p(a.get_mpz_t()) == 0 || padic_valuation(b, two) != 2) {
      throw std::logic_error("v2 case 2 !| v violated at " + pt.to_string());
    }
  } else if (padic_valuation(a, two) != 1 || padic_valuation(b, two) < 4) {
    // v even forces u odd: v_2(a) = 1 and v_2(b) >= 4.
    throw std::logic_error("v2 case 2 | v violated at " + pt.to_string());
  }
  if (v < 2) throw std::logic_error("v2(b/a) < 2 at " + pt.to_string());
  return v;
}

/// Q_2 point over x = 0: fix y = a; then z^2 = P(0) - a^2 = a^2(-7 - (b/a)^2),
/// whose unit part is 1 mod 8 because v_2(b/a) >= 2.
inline LocalCertificate two_adic_certificate(const ProjectivePoint& pt, unsigned precision = 8) {
  const auto [a, b] = ab_parameters(pt);
  const ChateletSurface s = fiber_at(pt);
  const Rational c = s.value_at(Rational(0));
  const Rational square = c - Rational(a) * Rational(a);
  const Integer two = 2;
  const auto [v, unit] = detail::split_valuation(square, two);
  HenselLift ev{'y', Rational(a), v / 2, hensel_lift_sqrt(unit, two, precision)};
  return LocalCertificate{Place::finite(2), Rational(0), c, ev};
}

/// Q_3 point over x = 3^-n: for n large v_3(P(x)) = -4n + 2 v_3(a) is even
/// and the unit part is a norm from the unramified Q_3(i).
inline LocalCertificate three_adic_certificate(const ProjectivePoint& pt, unsigned max_n = 16) {
  const auto [a, b] = ab_parameters(pt);
  const ChateletSurface s = fiber_at(pt);
  const Integer three = 3;
  const long va = sgn(a) == 0 ? 0 : padic_valuation(a, three);
  for (unsigned n = 1; n <= max_n; ++n) {
    const Rational x(Integer(1), pow(three, n));
    const Rational c = s.value_at(x);
    if (c.is_zero()) continue;
    if (padic_valuation(c, three) != -4 * static_cast<long>(n) + 2 * va) continue;
    if (hilbert_symbol(-1, c, Place::finite(3)) != 1) throw std::logic_error("even valuation without a Q_3 point");
    return LocalCertificate{Place::finite(3), x, c, HilbertSymbolPlusOne{}};
  }
  throw std::logic_error("no 3-adic witness of the predicted valuation at " + pt.to_string());
}

/// No fiber over a rational point degenerates. Scans every canonical point
/// of height <= bound, and checks the only degree drop 2b^2 = a^2 would need
/// 2 to be a rational square.
inline bool degenerate_locus_check(long bound) {
  if (is_rational_square(2)) return false;
  for (const auto& pt : projective_points_up_to(bound)) {
    const auto [a, b] = ab_parameters(pt);
    const BiquadraticQuartic q = expanded_fiber(a, b);
    if (q.a.is_zero() || !is_separable(q.quartic())) return false;
  }
  return true;
}

/// Re-checks a point on the fiber in the form y^2 + z^2 = a^2 P0(x) + b^2 Pinf(x).
inline bool on_fiber_in_theorem_form(const ProjectivePoint& pt, const GlobalPoint& g) {
  const auto [a, b] = ab_parameters(pt);
  const Rational aa(a * a), bb(b * b);
  const Rational rhs = is_infinite(g.x) ? aa * p0()[4] + bb * p_inf()[4]
                                        : aa * p0()(std::get<Rational>(g.x)) + bb * p_inf()(std::get<Rational>(g.x));
  return g.y * g.y + g.z * g.z == rhs;
}

}  // namespace theorem_one

// ---------------------------------------------------------------------------
// Scan

struct ScanOptions {
  long fiber_height = 10;
  long search_height = 50;
  unsigned depth = 8;
  unsigned workers = 1;
  FactorBudget budget{};
};

enum class FiberStatus { PointFound, CandidateHasseViolation, Undecided, Contradiction };

inline std::string to_string(FiberStatus s) {
  switch (s) {
    case FiberStatus::PointFound: return "PointFound";
    case FiberStatus::CandidateHasseViolation: return "CandidateHasseViolation";
    case FiberStatus::Undecided: return "Undecided";
    case FiberStatus::Contradiction: return "Contradiction";
  }
  return "?";
}

/// Per-fiber lemma checks, only present on affine fibers.
struct LemmaChecks {
  bool real_identity = false;
  long v2 = 0;
  long v3 = 0;
  LocalCertificate two_adic;
  LocalCertificate three_adic;
  friend bool operator==(const LemmaChecks&, const LemmaChecks&) = default;
};

struct FiberEntry {
  ProjectivePoint point{1, 0};
  Integer a, b;
  QuarticPoly fiber;
  FiberStatus status = FiberStatus::Undecided;
  std::optional<theorem_one::IrreducibilityEvidence> irreducibility;
  std::optional<LemmaChecks> lemmas;
  HasseReport report;
  std::vector<std::string> notes;
  friend bool operator==(const FiberEntry&, const FiberEntry&) = default;
};

enum class ScanStatus { Verified, Undecided, Contradiction };

inline std::string to_string(ScanStatus s) {
  switch (s) {
    case ScanStatus::Verified: return "Verified";
    case ScanStatus::Undecided: return "Undecided";
    case ScanStatus::Contradiction: return "Contradiction";
  }
  return "?";
}

struct ScanReport {
  long fiber_height = 0;
  long search_height = 0;
  unsigned depth = 0;
  std::vector<FiberEntry> fibers;
  /// Facts consumed without recomputation.
  std::vector<std::string> trusted_inputs;

  ScanStatus status() const {
    ScanStatus out = ScanStatus::Verified;
    for (const auto& f : fibers) {
      if (f.status == FiberStatus::Contradiction) return ScanStatus::Contradiction;
      if (f.status == FiberStatus::Undecided) out = ScanStatus::Undecided;
    }
    return out;
  }
  friend bool operator==(const ScanReport&, const ScanReport&) = default;
};

inline FiberEntry scan_fiber(const ProjectivePoint& pt, const ScanOptions& opt) {
  using namespace theorem_one;
  FiberEntry e;
  e.point = pt;
  std::tie(e.a, e.b) = ab_parameters(pt);
  const ChateletSurface s = fiber_at(pt);
  e.fiber = s.p();
  PointSearchOptions search{opt.search_height, opt.workers, 200, opt.budget};
  e.report = hasse_violation_report(s, search, opt.depth);

  if (!pt.is_affine()) {
    switch (e.report.kind) {
      case HasseKind::CandidateHasseViolation: e.status = FiberStatus::CandidateHasseViolation; break;
      case HasseKind::HasPoint:
        e.status = FiberStatus::Contradiction;
        e.notes.push_back("rational point on the fiber over (1:0)");
        break;
      case HasseKind::LocallyObstructed:
        e.status = FiberStatus::Contradiction;
        e.notes.push_back("fiber over (1:0) is not everywhere locally solvable");
        break;
      case HasseKind::Undecided: e.status = FiberStatus::Undecided; break;
    }
    return e;
  }

  e.irreducibility = irreducibility_evidence(pt, opt.budget);
  LemmaChecks lemmas;
  lemmas.real_identity = real_point_identity_check(e.a, e.b);
  lemmas.v2 = valuation_lemma_v2(pt);
  lemmas.v3 = valuation_lemma_v3(pt);
  lemmas.two_adic = two_adic_certificate(pt);
  lemmas.three_adic = three_adic_certificate(pt);
  e.lemmas = lemmas;

  bool contradiction = false;
  if (!e.irreducibility->irreducible || e.irreducibility->criterion_holds != e.irreducibility->oracle_irreducible) {
    contradiction = true;
    e.notes.push_back("irreducibility check failed or disagreed with the factorization oracle");
  }
  if (!lemmas.real_identity || !replay(s, lemmas.two_adic) || !replay(s, lemmas.three_adic)) {
    contradiction = true;
    e.notes.push_back("lemma check failed");
  }
  if (e.report.kind == HasseKind::LocallyObstructed) {
    contradiction = true;
    e.notes.push_back("affine fiber is locally obstructed");
  }
  if (e.report.point && !on_fiber_in_theorem_form(pt, *e.report.point)) {
    contradiction = true;
    e.notes.push_back("point fails the fiber equation in theorem form");
  }
  if (contradiction) e.status = FiberStatus::Contradiction;
  else if (e.report.point) e.status = FiberStatus::PointFound;
  else e.status = FiberStatus::Undecided;
  return e;
}

/// Every canonical (u:v) of height <= fiber_height; fibers in index order.
inline ScanReport theorem_one_scan(const ScanOptions& opt = {}) {
  ScanReport r;
  r.fiber_height = opt.fiber_height;
  r.search_height = opt.search_height;
  r.depth = opt.depth;
  r.trusted_inputs = {
      "Iskovskikh: y^2 + z^2 = (x^2 - 2)(3 - x^2) has no rational point",
      "Colliot-Thelene, Sansuc, Swinnerton-Dyer: Chatelet surfaces with irreducible quartic satisfy the Hasse principle",
      "Mordell-Weil: Jac(C)(Q) = Z/2Z and Jac(C')(Q) = Z/2Z",
  };
  for (const auto& pt : projective_points_up_to(opt.fiber_height)) r.fibers.push_back(scan_fiber(pt, opt));
  return r;
}

}  // namespace chatelet
