#pragma once

// JSON certificates. Integers are decimal strings and rationals are
// {"num", "den"} objects, so documents stay exact. Every document is
//
//   {"schema": "chatelet-certificate/1", "header": {...}, "body": {...}}
//
// where only the header carries run metadata.

#include "chatelet/bundle.hpp"
#include "chatelet/genus1.hpp"
#include "chatelet/surface.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace chatelet {

inline constexpr const char* kCertificateSchema = "chatelet-certificate/1";

}  // namespace chatelet

namespace nlohmann {

template <>
struct adl_serializer<mpz_class> {
  static void to_json(json& j, const mpz_class& n) { j = n.get_str(); }
  static void from_json(const json& j, mpz_class& n) { n = chatelet::parse_integer(j.get<std::string>()); }
};

template <>
struct adl_serializer<chatelet::Rational> {
  static void to_json(json& j, const chatelet::Rational& r) { j = json{{"num", r.num()}, {"den", r.den()}}; }
  static void from_json(const json& j, chatelet::Rational& r) {
    r = chatelet::Rational(j.at("num").get<mpz_class>(), j.at("den").get<mpz_class>());
  }
};

template <>
struct adl_serializer<chatelet::Place> {
  static void to_json(json& j, const chatelet::Place& p) { j = p.to_string(); }
  static chatelet::Place from_json(const json& j) {
    const auto s = j.get<std::string>();
    return s == "inf" ? chatelet::Place::real() : chatelet::Place::finite(chatelet::parse_integer(s));
  }
};

template <>
struct adl_serializer<chatelet::Abscissa> {
  static void to_json(json& j, const chatelet::Abscissa& x) {
    if (chatelet::is_infinite(x)) j = "inf";
    else j = std::get<chatelet::Rational>(x);
  }
  static void from_json(const json& j, chatelet::Abscissa& x) {
    if (j.is_string() && j.get<std::string>() == "inf") x = chatelet::AtInfinity{};
    else x = j.get<chatelet::Rational>();
  }
};

template <>
struct adl_serializer<chatelet::ProjectivePoint> {
  static void to_json(json& j, const chatelet::ProjectivePoint& p) { j = json{{"u", p.u()}, {"v", p.v()}}; }
  static chatelet::ProjectivePoint from_json(const json& j) {
    return chatelet::ProjectivePoint(j.at("u").get<mpz_class>(), j.at("v").get<mpz_class>());
  }
};

template <>
struct adl_serializer<chatelet::QuarticPoly> {
  // Coefficients from x^4 down to the constant.
  static void to_json(json& j, const chatelet::QuarticPoly& q) {
    j = json::array();
    for (std::size_t i = 5; i-- > 0;) j.push_back(q[i]);
  }
  static void from_json(const json& j, chatelet::QuarticPoly& q) {
    q = chatelet::QuarticPoly::from_descending(j.get<std::vector<chatelet::Rational>>());
  }
};

}  // namespace nlohmann

namespace chatelet {

using json = nlohmann::json;

namespace detail {

inline std::string coordinate_name(char c) { return std::string(1, c); }

inline char coordinate_from(const json& j) {
  const auto s = j.get<std::string>();
  if (s != "y" && s != "z") throw std::invalid_argument("coordinate must be y or z");
  return s[0];
}

template <class Enum, std::size_t N>
Enum enum_from(const json& j, const std::array<std::pair<Enum, const char*>, N>& names) {
  const auto s = j.get<std::string>();
  for (const auto& [e, n] : names) {
    if (s == n) return e;
  }
  throw std::invalid_argument("unknown enumerator " + s);
}

inline constexpr std::array<std::pair<Status, const char*>, 3> kStatusNames{
    {{Status::Solvable, "Solvable"}, {Status::NotSolvable, "NotSolvable"}, {Status::Unknown, "Unknown"}}};
inline constexpr std::array<std::pair<HasseKind, const char*>, 4> kHasseNames{
    {{HasseKind::HasPoint, "HasPoint"},
     {HasseKind::CandidateHasseViolation, "CandidateHasseViolation"},
     {HasseKind::LocallyObstructed, "LocallyObstructed"},
     {HasseKind::Undecided, "Undecided"}}};
inline constexpr std::array<std::pair<FiberStatus, const char*>, 4> kFiberNames{
    {{FiberStatus::PointFound, "PointFound"},
     {FiberStatus::CandidateHasseViolation, "CandidateHasseViolation"},
     {FiberStatus::Undecided, "Undecided"},
     {FiberStatus::Contradiction, "Contradiction"}}};

template <class Enum, std::size_t N>
std::string enum_name(Enum e, const std::array<std::pair<Enum, const char*>, N>& names) {
  for (const auto& [v, n] : names) {
    if (v == e) return n;
  }
  throw std::logic_error("unnamed enumerator");
}

}  // namespace detail

inline std::string to_string(Status s) { return detail::enum_name(s, detail::kStatusNames); }

inline void to_json(json& j, const PAdicApproximation& a) {
  j = json{{"prime", a.prime}, {"center", a.center}, {"precision", a.precision}};
}
inline void from_json(const json& j, PAdicApproximation& a) {
  j.at("prime").get_to(a.prime);
  j.at("center").get_to(a.center);
  j.at("precision").get_to(a.precision);
}

inline void to_json(json& j, const Evidence& e) {
  std::visit(
      [&](const auto& ev) {
        using T = std::decay_t<decltype(ev)>;
        if constexpr (std::is_same_v<T, RealSign>) {
          j = json{{"kind", "RealSign"}};
        } else if constexpr (std::is_same_v<T, HilbertSymbolPlusOne>) {
          j = json{{"kind", "HilbertSymbolPlusOne"}};
        } else if constexpr (std::is_same_v<T, SmoothFpPointLifted>) {
          j = json{{"kind", "SmoothFpPointLifted"},
                   {"y_mod_p", ev.y_mod_p},
                   {"z_mod_p", ev.z_mod_p},
                   {"lifted", detail::coordinate_name(ev.lifted)},
                   {"lift", ev.lift}};
        } else {
          j = json{{"kind", "HenselLift"},
                   {"fixed", detail::coordinate_name(ev.fixed)},
                   {"fixed_value", ev.fixed_value},
                   {"half_valuation", ev.half_valuation},
                   {"unit_root", ev.unit_root}};
        }
      },
      e);
}
inline void from_json(const json& j, Evidence& e) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "RealSign") {
    e = RealSign{};
  } else if (kind == "HilbertSymbolPlusOne") {
    e = HilbertSymbolPlusOne{};
  } else if (kind == "SmoothFpPointLifted") {
    SmoothFpPointLifted ev;
    j.at("y_mod_p").get_to(ev.y_mod_p);
    j.at("z_mod_p").get_to(ev.z_mod_p);
    ev.lifted = detail::coordinate_from(j.at("lifted"));
    j.at("lift").get_to(ev.lift);
    e = ev;
  } else if (kind == "HenselLift") {
    HenselLift ev;
    ev.fixed = detail::coordinate_from(j.at("fixed"));
    j.at("fixed_value").get_to(ev.fixed_value);
    j.at("half_valuation").get_to(ev.half_valuation);
    j.at("unit_root").get_to(ev.unit_root);
    e = ev;
  } else {
    throw std::invalid_argument("unknown evidence kind " + kind);
  }
}

inline void to_json(json& j, const LocalCertificate& c) {
  j = json{{"place", c.place}, {"witness_x", c.witness_x}, {"conic_value", c.conic_value}, {"evidence", c.evidence}};
}
inline void from_json(const json& j, LocalCertificate& c) {
  c.place = j.at("place").get<Place>();
  j.at("witness_x").get_to(c.witness_x);
  j.at("conic_value").get_to(c.conic_value);
  j.at("evidence").get_to(c.evidence);
}

inline void to_json(json& j, const SolvabilityVerdict& v) {
  if (const auto* s = std::get_if<Solvable>(&v)) j = json{{"verdict", "Solvable"}, {"certificate", s->certificate}};
  else if (const auto* n = std::get_if<NotSolvable>(&v)) j = json{{"verdict", "NotSolvable"}, {"reason", n->reason}};
  else j = json{{"verdict", "Unknown"}, {"reason", std::get<Unknown>(v).reason}};
}
inline void from_json(const json& j, SolvabilityVerdict& v) {
  const auto kind = j.at("verdict").get<std::string>();
  if (kind == "Solvable") v = Solvable{j.at("certificate").get<LocalCertificate>()};
  else if (kind == "NotSolvable") v = NotSolvable{j.at("reason").get<std::string>()};
  else if (kind == "Unknown") v = Unknown{j.at("reason").get<std::string>()};
  else throw std::invalid_argument("unknown verdict " + kind);
}

inline void to_json(json& j, const PlaceVerdict& p) { j = json{{"place", p.place}, {"verdict", p.verdict}}; }
inline void from_json(const json& j, PlaceVerdict& p) {
  p.place = j.at("place").get<Place>();
  j.at("verdict").get_to(p.verdict);
}

inline void to_json(json& j, const GoodPrimesBlanket& b) {
  j = json{{"bad_primes", b.bad_primes}, {"spot_checked", b.spot_checked}, {"justification", b.justification}};
}
inline void from_json(const json& j, GoodPrimesBlanket& b) {
  j.at("bad_primes").get_to(b.bad_primes);
  j.at("spot_checked").get_to(b.spot_checked);
  j.at("justification").get_to(b.justification);
}

inline void to_json(json& j, const LocalSolvabilityMap& m) {
  j = json{{"places", m.places}, {"good_primes", m.blanket}, {"aggregate", to_string(m.aggregate())}};
}
inline void from_json(const json& j, LocalSolvabilityMap& m) {
  j.at("places").get_to(m.places);
  j.at("good_primes").get_to(m.blanket);
  if (j.at("aggregate").get<std::string>() != to_string(m.aggregate())) {
    throw std::invalid_argument("aggregate status does not match the per-place verdicts");
  }
}

inline void to_json(json& j, const GlobalPoint& p) { j = json{{"x", p.x}, {"y", p.y}, {"z", p.z}}; }
inline void from_json(const json& j, GlobalPoint& p) {
  j.at("x").get_to(p.x);
  j.at("y").get_to(p.y);
  j.at("z").get_to(p.z);
}

inline void to_json(json& j, const HasseReport& r) {
  j = json{{"kind", to_string(r.kind)},
           {"point", r.point ? json(*r.point) : json(nullptr)},
           {"local", r.local},
           {"obstructed_place", r.obstructed_place ? json(*r.obstructed_place) : json(nullptr)},
           {"search_bound", r.search_bound}};
}
inline void from_json(const json& j, HasseReport& r) {
  r.kind = detail::enum_from(j.at("kind"), detail::kHasseNames);
  r.point = j.at("point").is_null() ? std::nullopt : std::optional<GlobalPoint>(j.at("point").get<GlobalPoint>());
  j.at("local").get_to(r.local);
  r.obstructed_place = j.at("obstructed_place").is_null() ? std::nullopt
                                                          : std::optional<Place>(j.at("obstructed_place").get<Place>());
  j.at("search_bound").get_to(r.search_bound);
}

namespace theorem_one {

inline void to_json(json& j, const IrreducibilityEvidence& e) {
  j = json{{"discriminant_value", e.discriminant_value},
           {"ac_value", e.ac_value},
           {"criterion_holds", e.criterion_holds},
           {"oracle_irreducible", e.oracle_irreducible},
           {"irreducible", e.irreducible}};
}
inline void from_json(const json& j, IrreducibilityEvidence& e) {
  j.at("discriminant_value").get_to(e.discriminant_value);
  j.at("ac_value").get_to(e.ac_value);
  j.at("criterion_holds").get_to(e.criterion_holds);
  j.at("oracle_irreducible").get_to(e.oracle_irreducible);
  j.at("irreducible").get_to(e.irreducible);
}

}  // namespace theorem_one

inline void to_json(json& j, const LemmaChecks& l) {
  j = json{{"real_identity", l.real_identity},
           {"v2", l.v2},
           {"v3", l.v3},
           {"two_adic", l.two_adic},
           {"three_adic", l.three_adic}};
}
inline void from_json(const json& j, LemmaChecks& l) {
  j.at("real_identity").get_to(l.real_identity);
  j.at("v2").get_to(l.v2);
  j.at("v3").get_to(l.v3);
  j.at("two_adic").get_to(l.two_adic);
  j.at("three_adic").get_to(l.three_adic);
}

inline void to_json(json& j, const FiberEntry& e) {
  j = json{{"point", e.point},
           {"a", e.a},
           {"b", e.b},
           {"fiber", e.fiber},
           {"status", to_string(e.status)},
           {"irreducibility", e.irreducibility ? json(*e.irreducibility) : json(nullptr)},
           {"lemmas", e.lemmas ? json(*e.lemmas) : json(nullptr)},
           {"report", e.report},
           {"notes", e.notes}};
}
inline void from_json(const json& j, FiberEntry& e) {
  e.point = j.at("point").get<ProjectivePoint>();
  j.at("a").get_to(e.a);
  j.at("b").get_to(e.b);
  j.at("fiber").get_to(e.fiber);
  e.status = detail::enum_from(j.at("status"), detail::kFiberNames);
  const json& irr = j.at("irreducibility");
  e.irreducibility = irr.is_null() ? std::nullopt
                                   : std::optional<theorem_one::IrreducibilityEvidence>(
                                         irr.get<theorem_one::IrreducibilityEvidence>());
  e.lemmas = j.at("lemmas").is_null() ? std::nullopt : std::optional<LemmaChecks>(j.at("lemmas").get<LemmaChecks>());
  j.at("report").get_to(e.report);
  j.at("notes").get_to(e.notes);
}

inline void to_json(json& j, const ScanReport& r) {
  j = json{{"fiber_height", r.fiber_height},
           {"search_height", r.search_height},
           {"depth", r.depth},
           {"fibers", r.fibers},
           {"trusted_inputs", r.trusted_inputs},
           {"status", to_string(r.status())}};
}
inline void from_json(const json& j, ScanReport& r) {
  j.at("fiber_height").get_to(r.fiber_height);
  j.at("search_height").get_to(r.search_height);
  j.at("depth").get_to(r.depth);
  j.at("fibers").get_to(r.fibers);
  j.at("trusted_inputs").get_to(r.trusted_inputs);
  if (j.at("status").get<std::string>() != to_string(r.status())) {
    throw std::invalid_argument("scan status does not match its fibers");
  }
}

inline void to_json(json& j, const CurvePoint& p) { j = json{{"t", p.t}, {"w", p.w}}; }
inline void from_json(const json& j, CurvePoint& p) {
  j.at("t").get_to(p.t);
  j.at("w").get_to(p.w);
}

inline void to_json(json& j, const PointsAtInfinity& p) { j = json{{"count", p.count}, {"witnesses", p.witnesses}}; }
inline void from_json(const json& j, PointsAtInfinity& p) {
  j.at("count").get_to(p.count);
  j.at("witnesses").get_to(p.witnesses);
}

inline void to_json(json& j, const SymmetryAnalysis& a) {
  j = json{{"value_at_t0", a.value_at_t0},
           {"t0_has_point", a.t0_has_point},
           {"w0_t_squares", a.w0_t_squares},
           {"w0_has_point", a.w0_has_point},
           {"resolved", a.resolved()}};
}
inline void from_json(const json& j, SymmetryAnalysis& a) {
  j.at("value_at_t0").get_to(a.value_at_t0);
  j.at("t0_has_point").get_to(a.t0_has_point);
  j.at("w0_t_squares").get_to(a.w0_t_squares);
  j.at("w0_has_point").get_to(a.w0_has_point);
}

inline void to_json(json& j, const CurvePlaceEvidence& e) {
  j = json{{"place", e.place},
           {"status", to_string(e.status)},
           {"witness", e.witness ? json(*e.witness) : json(nullptr)}};
}
inline void from_json(const json& j, CurvePlaceEvidence& e) {
  e.place = j.at("place").get<Place>();
  e.status = detail::enum_from(j.at("status"), detail::kStatusNames);
  e.witness = j.at("witness").is_null() ? std::nullopt : std::optional<Abscissa>(j.at("witness").get<Abscissa>());
}

inline void to_json(json& j, const CurveReport& r) {
  j = json{{"name", r.name},
           {"f", r.f},
           {"search_bound", r.search_bound},
           {"affine_points", r.affine_points},
           {"points_at_infinity", r.at_infinity},
           {"symmetry", r.symmetry ? json(*r.symmetry) : json(nullptr)},
           {"local", r.local},
           {"trusted_inputs", r.trusted_inputs}};
}
inline void from_json(const json& j, CurveReport& r) {
  j.at("name").get_to(r.name);
  j.at("f").get_to(r.f);
  j.at("search_bound").get_to(r.search_bound);
  j.at("affine_points").get_to(r.affine_points);
  j.at("points_at_infinity").get_to(r.at_infinity);
  r.symmetry = j.at("symmetry").is_null() ? std::nullopt
                                          : std::optional<SymmetryAnalysis>(j.at("symmetry").get<SymmetryAnalysis>());
  j.at("local").get_to(r.local);
  j.at("trusted_inputs").get_to(r.trusted_inputs);
}

/// A general surface together with its classification.
struct SurfaceReport {
  Rational alpha;
  QuarticPoly p;
  HasseReport report;
  friend bool operator==(const SurfaceReport&, const SurfaceReport&) = default;
};

inline void to_json(json& j, const SurfaceReport& r) { j = json{{"alpha", r.alpha}, {"p", r.p}, {"report", r.report}}; }
inline void from_json(const json& j, SurfaceReport& r) {
  j.at("alpha").get_to(r.alpha);
  j.at("p").get_to(r.p);
  j.at("report").get_to(r.report);
}

/// Wraps a body in the versioned envelope.
inline json make_document(const std::string& kind, json body, json header = json::object()) {
  header["tool"] = "chatelet";
  header["kind"] = kind;
  return json{{"schema", kCertificateSchema}, {"header", std::move(header)}, {"body", std::move(body)}};
}

/// The body of a document of the given kind; throws on a schema mismatch.
inline const json& document_body(const json& doc, const std::string& kind) {
  if (doc.at("schema").get<std::string>() != kCertificateSchema) throw std::invalid_argument("unsupported schema");
  if (doc.at("header").at("kind").get<std::string>() != kind) throw std::invalid_argument("document is not a " + kind);
  return doc.at("body");
}

}  // namespace chatelet
