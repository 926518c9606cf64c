#include "chatelet/bundle.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace chatelet;
using namespace chatelet::theorem_one;

namespace {

std::vector<ProjectivePoint> affine_points(long bound) {
  std::vector<ProjectivePoint> out;
  for (const auto& pt : projective_points_up_to(bound)) {
    if (pt.is_affine()) out.push_back(pt);
  }
  return out;
}

}  // namespace

TEST(ProjectivePoint, Canonical) {
  EXPECT_EQ(ProjectivePoint(2, -4), ProjectivePoint(-1, 2));
  EXPECT_EQ(ProjectivePoint(-3, 0), ProjectivePoint::infinity());
  EXPECT_THROW(ProjectivePoint(0, 0), std::invalid_argument);
  EXPECT_EQ(ProjectivePoint(Rational(6, 4)).to_string(), "(3:2)");
  EXPECT_EQ(ProjectivePoint(0, 5), ProjectivePoint(0, 1));
}

TEST(ProjectivePoint, EnumerationIsCompleteAndCanonical) {
  const auto pts = projective_points_up_to(30);
  std::set<std::pair<long, long>> seen;
  for (const auto& pt : pts) {
    EXPECT_EQ(gcd(pt.u(), pt.v()), 1);
    EXPECT_TRUE(sgn(pt.v()) > 0 || pt == ProjectivePoint::infinity());
    EXPECT_LE(pt.height(), 30);
    EXPECT_TRUE(seen.emplace(pt.u().get_si(), pt.v().get_si()).second);
  }
  long brute = 1;  // (1:0)
  for (long u = -30; u <= 30; ++u) {
    for (long v = 1; v <= 30; ++v) brute += std::gcd(u, v) == 1 ? 1 : 0;
  }
  EXPECT_EQ(static_cast<long>(pts.size()), brute);
  EXPECT_EQ(pts.back(), ProjectivePoint::infinity());
}

TEST(Bundle, LinearIndependence) {
  EXPECT_NO_THROW(bundle());
  EXPECT_THROW(ChateletBundle(-1, p0(), Rational(3) * p0()), std::invalid_argument);
  EXPECT_THROW(ChateletBundle(0, p0(), p_inf()), std::invalid_argument);
}

TEST(Bundle, AbParameters) {
  EXPECT_EQ(ab_parameters(ProjectivePoint(0, 1)), (std::pair<Integer, Integer>{-1, 12}));
  EXPECT_EQ(ab_parameters(ProjectivePoint::infinity()), (std::pair<Integer, Integer>{6, 0}));
  EXPECT_EQ(ab_parameters(ProjectivePoint(1, 1)), (std::pair<Integer, Integer>{5, 12}));
  for (const auto& pt : projective_points_up_to(40)) {
    const auto [a, b] = ab_parameters(pt);
    EXPECT_FALSE(sgn(a) == 0 && sgn(b) == 0);
  }
}

TEST(Bundle, FiberExamples) {
  EXPECT_EQ(fiber_at(ProjectivePoint(0, 1)).p(), QuarticPoly::from_descending({287, 0, 437, 0, -150}));
  EXPECT_EQ(fiber_at(ProjectivePoint(1, 1)).p(), QuarticPoly::from_descending({263, 0, 557, 0, -294}));
  const auto inf = fiber_at(ProjectivePoint::infinity());
  EXPECT_EQ(inf.p(), Rational(36) * p0());
  EXPECT_EQ(inf.alpha(), -1);
}

TEST(Bundle, InfinityFiberPointsCorrespond) {
  // (x, y, z) on y^2 + z^2 = P0 iff (x, 6y, 6z) on the (1:0) fiber.
  const ChateletSurface s0(-1, p0());
  const auto s = fiber_at(ProjectivePoint::infinity());
  for (const auto& x : oracle::rationals_up_to(10)) {
    const Rational v = p0()(x);
    ASSERT_EQ(s.value_at(x), 36 * v);
    if (auto yz = sum_of_two_squares(v)) {
      ASSERT_TRUE(lies_on(s0, GlobalPoint{x, yz->first, yz->second}));
      ASSERT_TRUE(lies_on(s, GlobalPoint{x, 6 * yz->first, 6 * yz->second}));
    }
  }
}

TEST(Bundle, ExpansionIdentity) {
  for (long a = -50; a <= 50; ++a) {
    for (long b = -50; b <= 50; ++b) {
      const QuarticPoly lhs = bundle().fiber_polynomial(a, b);
      ASSERT_EQ(lhs, expanded_fiber(a, b).quartic()) << a << " " << b;
    }
  }
}

TEST(Bundle, DegenerateLocus) {
  EXPECT_TRUE(degenerate_locus_check(50));
  const auto q = expanded_fiber(6, 0);
  EXPECT_EQ(q.a, -36);
  EXPECT_TRUE(is_separable(q.quartic()));
  EXPECT_FALSE(is_rational_square(2));
}

TEST(Bundle, PtPolynomial) {
  EXPECT_EQ(p_t_polynomial(0), (BiquadraticQuartic{2, 3, -1}));
  EXPECT_EQ(p_t_polynomial(1), (BiquadraticQuartic{1, 8, -7}));
  const auto q = p_t_polynomial(Rational(5, 12));
  EXPECT_EQ(Rational(144) * q.quartic(), fiber_at(ProjectivePoint(1, 1)).p());
  // b^2 P_t(a/b) is the fiber polynomial wherever b != 0.
  for (const auto& pt : affine_points(15)) {
    const auto [a, b] = ab_parameters(pt);
    ASSERT_EQ(Rational(b * b) * p_t_polynomial(Rational(a, b)).quartic(), fiber_at(pt).p());
  }
}

TEST(Bundle, IrreducibleFibers) {
  EXPECT_TRUE(verify_fiber_irreducible(ProjectivePoint(0, 1)));
  EXPECT_TRUE(verify_fiber_irreducible(ProjectivePoint(1, 1)));
  EXPECT_THROW(verify_fiber_irreducible(ProjectivePoint::infinity()), std::invalid_argument);
  EXPECT_FALSE(factorization_oracle(fiber_at(ProjectivePoint::infinity()).p()).irreducible());
  for (const auto& pt : affine_points(12)) {
    const auto ev = irreducibility_evidence(pt);
    ASSERT_TRUE(ev.irreducible) << pt.to_string();
    ASSERT_EQ(ev.criterion_holds, ev.oracle_irreducible) << pt.to_string();
    ASSERT_EQ(verify_fiber_irreducible(pt), ev.oracle_irreducible);
  }
}

TEST(Bundle, CurveValues) {
  EXPECT_EQ(discriminant_curve_value(0), 17);
  EXPECT_EQ(discriminant_curve_value(1), 92);
  EXPECT_EQ(ac_curve_value(0), -2);
  EXPECT_EQ(ac_curve_value(2), Rational(-25) * Rational(-2));
  EXPECT_EQ(ac_curve_value(2), 50);
  EXPECT_EQ(ac_curve_value(1), -7);
  std::mt19937_64 rng(53);
  for (int i = 0; i < 100; ++i) {
    const Rational t = oracle::random_rational(rng, 1000, false);
    const Rational t2 = t * t;
    ASSERT_EQ(discriminant_curve_value(t), t2 * t2 + 74 * t2 + 17);
    ASSERT_EQ(ac_curve_value(t), (-6 * t2 - 1) * (2 - t2));
  }
}

TEST(Bundle, RealPointIdentity) {
  EXPECT_TRUE(real_point_identity_check(1, 0));
  EXPECT_TRUE(real_point_identity_check(0, 1));
  EXPECT_TRUE(real_point_identity_check(5, 12));
  for (long a = -50; a <= 50; ++a) {
    for (long b = -50; b <= 50; ++b) {
      ASSERT_TRUE(real_point_identity_check(a, b));
      if (2 * b * b - a * a < 0) {
        ASSERT_GT(vertex_value(a, b).sign(), 0) << a << " " << b;
      }
    }
  }
}

TEST(Bundle, ValuationLemmaExamples) {
  EXPECT_EQ(valuation_lemma_v3(ProjectivePoint(1, 1)), 1);
  EXPECT_EQ(valuation_lemma_v3(ProjectivePoint(1, 3)), 2);
  EXPECT_EQ(valuation_lemma_v3(ProjectivePoint(2, 1)), 1);
  EXPECT_EQ(valuation_lemma_v2(ProjectivePoint(1, 1)), 2);
  EXPECT_EQ(valuation_lemma_v2(ProjectivePoint(1, 2)), 3);
  EXPECT_EQ(valuation_lemma_v2(ProjectivePoint(0, 1)), 2);
  EXPECT_THROW(valuation_lemma_v2(ProjectivePoint::infinity()), std::invalid_argument);
}

TEST(Bundle, LocalCertificatesFromTheLemmas) {
  for (const auto& pt : affine_points(20)) {
    const auto s = fiber_at(pt);
    const auto two = two_adic_certificate(pt);
    ASSERT_TRUE(replay(s, two)) << pt.to_string();
    ASSERT_EQ(std::get<Rational>(two.witness_x), Rational(0));
    const auto three = three_adic_certificate(pt);
    ASSERT_TRUE(replay(s, three)) << pt.to_string();
  }
}

TEST(Bundle, ScanSmall) {
  ScanOptions opt;
  opt.fiber_height = 5;
  opt.search_height = 50;
  const ScanReport r = theorem_one_scan(opt);
  EXPECT_EQ(r.status(), ScanStatus::Verified);
  ASSERT_EQ(r.fibers.front().point, ProjectivePoint(0, 1));
  EXPECT_EQ(*r.fibers.front().report.point, (GlobalPoint{Rational(4), 95, 267}));
  const auto& inf = r.fibers.back();
  EXPECT_EQ(inf.point, ProjectivePoint::infinity());
  EXPECT_EQ(inf.status, FiberStatus::CandidateHasseViolation);
  EXPECT_EQ(inf.report.local.aggregate(), Status::Solvable);
  EXPECT_FALSE(inf.report.point);
  for (const auto& f : r.fibers) {
    if (!f.point.is_affine()) continue;
    ASSERT_EQ(f.status, FiberStatus::PointFound);
    ASSERT_TRUE(on_fiber_in_theorem_form(f.point, *f.report.point));
  }

  opt.search_height = 1;
  EXPECT_EQ(theorem_one_scan(opt).status(), ScanStatus::Undecided);
}

TEST(Bundle, ScanIsDeterministicAcrossWorkers) {
  ScanOptions opt;
  opt.fiber_height = 4;
  const ScanReport one = theorem_one_scan(opt);
  opt.workers = 3;
  EXPECT_EQ(theorem_one_scan(opt), one);
}
