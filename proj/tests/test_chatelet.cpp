#include "chatelet/surface.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace chatelet;

namespace {

QuarticPoly P0() { return QuarticPoly::from_descending({-1, 0, 5, 0, -6}); }
QuarticPoly Pinf() { return QuarticPoly::from_descending({2, 0, 3, 0, -1}); }
ChateletSurface iskovskikh() { return ChateletSurface(-1, P0()); }
ChateletSurface fiber_01() { return ChateletSurface(-1, QuarticPoly::from_descending({287, 0, 437, 0, -150})); }
ChateletSurface fiber_11() { return ChateletSurface(-1, QuarticPoly::from_descending({263, 0, 557, 0, -294})); }
ChateletSurface negative_definite() { return ChateletSurface(-1, QuarticPoly::from_descending({-1, 0, 0, 0, -1})); }

const LocalCertificate& certificate(const SolvabilityVerdict& v) { return std::get<Solvable>(v).certificate; }

std::optional<ChateletSurface> random_surface(std::mt19937_64& rng, const Rational& alpha, long h) {
  std::uniform_int_distribution<long> coeff(-h, h);
  std::vector<Rational> c;
  for (int k = 0; k < 5; ++k) c.emplace_back(coeff(rng));
  if (c[0].is_zero()) c[0] = 1;
  try {
    return ChateletSurface(alpha, QuarticPoly::from_descending(c));
  } catch (const InvalidSurface&) {
    return std::nullopt;
  }
}

}  // namespace

TEST(Surface, Validation) {
  EXPECT_THROW(ChateletSurface(0, P0()), InvalidSurface);
  EXPECT_THROW(ChateletSurface(-1, QuarticPoly::from_descending({1, 0, 1})), InvalidSurface);
  EXPECT_THROW(ChateletSurface(-1, QuarticPoly::from_descending({1, 0, -2, 0, 1})), InvalidSurface);
  EXPECT_NO_THROW(ChateletSurface(-1, QuarticPoly::from_descending({1, 0, 0, 1})));
  EXPECT_EQ(ChateletSurface(Rational(-8, 3), P0()).alpha_squarefree(), -6);
  EXPECT_EQ(ChateletSurface(Rational(4), P0()).alpha_squarefree(), 1);
}

TEST(RealPlace, Examples) {
  const auto v = real_solvability(iskovskikh());
  ASSERT_TRUE(is_solvable(v));
  EXPECT_EQ(std::get<Rational>(certificate(v).witness_x), Rational(3, 2));
  EXPECT_EQ(certificate(v).conic_value, Rational(3, 16));
  EXPECT_TRUE(replay(iskovskikh(), certificate(v)));

  EXPECT_TRUE(is_solvable(real_solvability(ChateletSurface(1, P0()))));
  EXPECT_TRUE(std::holds_alternative<NotSolvable>(real_solvability(negative_definite())));
}

TEST(RealPlace, NotSolvableOnlyWhenNegativeEverywhere) {
  std::mt19937_64 rng(31);
  const auto xs = oracle::rationals_up_to(12);
  int not_solvable = 0;
  for (int i = 0; i < 400; ++i) {
    const auto s = random_surface(rng, -1, 20);
    if (!s) continue;
    const auto v = real_solvability(*s);
    if (is_solvable(v)) {
      ASSERT_TRUE(replay(*s, certificate(v)));
      continue;
    }
    ASSERT_TRUE(std::holds_alternative<NotSolvable>(v));
    ++not_solvable;
    ASSERT_LE(s->p()[4].sign(), 0);
    for (const auto& x : xs) ASSERT_LT(s->p()(x).sign(), 0) << s->p().to_string();
    ASSERT_TRUE(isolate_real_roots(s->p().poly()).empty());
  }
  EXPECT_GT(not_solvable, 0);
}

TEST(RealPlace, RootOnBisectionMidpoint) {
  // The root 0 is the first bisection midpoint; its right neighbour starts there.
  const auto p = QuarticPoly::from_descending({-12, 17, 14, -14, 0});
  const auto roots = isolate_real_roots(p.poly());
  ASSERT_EQ(roots.size(), 4u);
  for (const auto& r : roots) {
    if (r.exact()) {
      EXPECT_TRUE(p(r.lo).is_zero());
    } else {
      EXPECT_LT(p(r.lo).sign() * p(r.hi).sign(), 1) << r.lo.to_string() << " " << r.hi.to_string();
      EXPECT_NE(p(r.hi).sign(), 0);
    }
  }
  const auto v = real_solvability(ChateletSurface(-1, p));
  ASSERT_TRUE(is_solvable(v));
  EXPECT_TRUE(replay(ChateletSurface(-1, p), certificate(v)));
}

TEST(GoodPrime, Examples) {
  const auto v = good_prime_solvability(iskovskikh(), 7);
  ASSERT_TRUE(is_solvable(v));
  const auto& ev = std::get<SmoothFpPointLifted>(certificate(v).evidence);
  EXPECT_EQ(ev.lift.modulus(), 343);
  EXPECT_TRUE(replay(iskovskikh(), certificate(v)));

  EXPECT_TRUE(is_solvable(good_prime_solvability(ChateletSurface(-1, Pinf()), 5)));
  EXPECT_THROW(good_prime_solvability(ChateletSurface(-1, QuarticPoly::from_descending({5, 0, 0, 0, 5})), 5),
               PreconditionViolated);
  EXPECT_THROW(good_prime_solvability(iskovskikh(), 2), PreconditionViolated);
}

TEST(GoodPrime, AlwaysSolvableOffTheBadSet) {
  std::mt19937_64 rng(37);
  int surfaces = 0;
  while (surfaces < 20) {
    const Rational alpha = oracle::random_rational(rng, 12);
    const auto s = random_surface(rng, alpha, 15);
    if (!s) continue;
    ++surfaces;
    const auto bad = bad_primes(*s);
    for (long p = 5; p <= 97; ++p) {
      if (!oracle::trial_prime(p) || std::binary_search(bad.begin(), bad.end(), Integer(p))) continue;
      const auto v = good_prime_solvability(*s, p);
      ASSERT_TRUE(is_solvable(v));
      ASSERT_TRUE(replay(*s, certificate(v)));
    }
  }
}

TEST(DeepLocal, Examples) {
  const auto three = deep_local_search(fiber_11(), 3, 6);
  ASSERT_TRUE(is_solvable(three));
  const Rational x = std::get<Rational>(certificate(three).witness_x);
  const long n = -padic_valuation(x, Integer(3));
  EXPECT_GE(n, 1);
  EXPECT_EQ(x, Rational(Integer(1), pow(Integer(3), static_cast<unsigned long>(n))));
  // a = 5 for (1:1): v_3(P(x)) = -4n + 2 v_3(a) = -4n.
  EXPECT_EQ(padic_valuation(certificate(three).conic_value, Integer(3)), -4 * n);

  const auto two = deep_local_search(fiber_01(), 2, 6);
  ASSERT_TRUE(is_solvable(two));
  EXPECT_EQ(std::get<Rational>(certificate(two).witness_x), Rational(0));

  const ChateletSurface one_at_zero(Rational(7, 3), QuarticPoly::from_descending({2, 1, 0, 0, 1}));
  const auto thirteen = deep_local_search(one_at_zero, 13, 4);
  ASSERT_TRUE(is_solvable(thirteen));
  EXPECT_EQ(std::get<Rational>(certificate(thirteen).witness_x), Rational(0));
}

TEST(LocalSolvability, Examples) {
  for (const auto& s : {iskovskikh(), fiber_01(), fiber_11()}) {
    const auto m = everywhere_locally_solvable(s);
    EXPECT_EQ(m.aggregate(), Status::Solvable);
    for (const auto& pv : m.places) {
      ASSERT_TRUE(is_solvable(pv.verdict)) << pv.place.to_string();
      EXPECT_TRUE(replay(s, certificate(pv.verdict)));
      EXPECT_EQ(certificate(pv.verdict).place, pv.place);
    }
    EXPECT_FALSE(m.blanket.spot_checked.empty());
  }
  const auto bad = everywhere_locally_solvable(negative_definite());
  EXPECT_EQ(bad.aggregate(), Status::NotSolvable);
  EXPECT_TRUE(std::holds_alternative<NotSolvable>(bad.places.front().verdict));
}

TEST(LocalSolvability, BadPrimesIncludeContentAndAlpha) {
  const ChateletSurface s(Rational(-7, 11), QuarticPoly::from_descending({5, 0, 0, 0, 5}));
  const auto bad = bad_primes(s);
  for (long p : {2, 3, 5, 7, 11}) EXPECT_TRUE(std::binary_search(bad.begin(), bad.end(), Integer(p))) << p;
}

TEST(Replay, RejectsTamperedCertificates) {
  auto cert = certificate(deep_local_search(fiber_01(), 2, 6));
  EXPECT_TRUE(replay(fiber_01(), cert));
  cert.conic_value += 1;
  EXPECT_FALSE(replay(fiber_01(), cert));

  auto lifted = certificate(good_prime_solvability(iskovskikh(), 7));
  std::get<SmoothFpPointLifted>(lifted.evidence).lift.center += 1;
  EXPECT_FALSE(replay(iskovskikh(), lifted));

  auto real = certificate(real_solvability(iskovskikh()));
  real.witness_x = Rational(0);
  real.conic_value = -6;
  EXPECT_FALSE(replay(iskovskikh(), real));
}

TEST(PointSearch, Examples) {
  const auto pt = find_rational_point(fiber_01());
  ASSERT_TRUE(pt);
  EXPECT_EQ(*pt, (GlobalPoint{Rational(4), 95, 267}));

  const auto q = find_rational_point(ChateletSurface(-1, Pinf()));
  ASSERT_TRUE(q);
  EXPECT_EQ(*q, (GlobalPoint{Rational(1), 2, 0}));

  PointSearchOptions opt;
  opt.height_bound = 1000;
  EXPECT_FALSE(find_rational_point(iskovskikh(), opt));
}

TEST(PointSearch, PointsLieOnTheSurface) {
  std::mt19937_64 rng(41);
  int found = 0;
  for (const Rational& alpha : {Rational(-1), Rational(2), Rational(-3), Rational(5, 4), Rational(-2, 7)}) {
    for (int i = 0; i < 25; ++i) {
      const auto s = random_surface(rng, alpha, 10);
      if (!s) continue;
      PointSearchOptions opt;
      opt.height_bound = 8;
      opt.norm_form_box = 40;
      const auto pt = find_rational_point(*s, opt);
      if (!pt) continue;
      ++found;
      ASSERT_TRUE(lies_on(*s, *pt));
      const Rational v = s->value_at(pt->x);
      ASSERT_EQ(pt->y * pt->y - s->alpha() * pt->z * pt->z, v);
    }
  }
  EXPECT_GT(found, 20);
}

TEST(PointSearch, DeterministicAcrossWorkers) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 30; ++i) {
    const auto s = random_surface(rng, -1, 25);
    if (!s) continue;
    PointSearchOptions opt;
    opt.height_bound = 40;
    const auto one = find_rational_point(*s, opt);
    for (unsigned w : {2u, 3u, 5u}) {
      opt.workers = w;
      ASSERT_EQ(find_rational_point(*s, opt), one) << s->p().to_string();
    }
  }
}

TEST(PointSearch, ScalingEquivalence) {
  std::mt19937_64 rng(47);
  int samples = 0;
  while (samples < 100) {
    const auto s = random_surface(rng, -1, 12);
    if (!s) continue;
    ++samples;
    const Rational c = oracle::random_rational(rng, 9);
    const ChateletSurface scaled(-1, (c * c) * s->p());
    PointSearchOptions opt;
    opt.height_bound = 12;
    const auto a = find_rational_point(*s, opt);
    const auto b = find_rational_point(scaled, opt);
    ASSERT_EQ(a.has_value(), b.has_value()) << s->p().to_string() << " c=" << c.to_string();
    if (a) {
      ASSERT_EQ(a->x, b->x);
      ASSERT_TRUE(lies_on(scaled, GlobalPoint{a->x, c * a->y, c * a->z}));
      ASSERT_TRUE(lies_on(*s, GlobalPoint{b->x, b->y / c, b->z / c}));
    }
  }
  PointSearchOptions opt;
  opt.height_bound = 200;
  EXPECT_FALSE(find_rational_point(ChateletSurface(-1, Rational(36) * P0()), opt));
}

TEST(Hasse, Examples) {
  PointSearchOptions opt;
  opt.height_bound = 100;
  EXPECT_EQ(hasse_violation_report(iskovskikh(), opt).kind, HasseKind::CandidateHasseViolation);
  const auto has = hasse_violation_report(fiber_01(), opt);
  EXPECT_EQ(has.kind, HasseKind::HasPoint);
  EXPECT_EQ(*has.point, (GlobalPoint{Rational(4), 95, 267}));
  const auto obstructed = hasse_violation_report(negative_definite(), opt);
  EXPECT_EQ(obstructed.kind, HasseKind::LocallyObstructed);
  EXPECT_TRUE(obstructed.obstructed_place->is_real());
  EXPECT_EQ(hasse_violation_report(ChateletSurface(1, QuarticPoly::from_descending({1, 0, 0, 0, 1})), opt).kind,
            HasseKind::HasPoint);
}
