// chatelet: command-line front end for the verification pipeline.
//
// Exit codes: 0 success, 1 contradiction, 2 undecided, 64 usage, 65 bad input.

#include "chatelet/certificate_json.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace chatelet;

namespace {

constexpr int kOk = 0;
constexpr int kContradiction = 1;
constexpr int kUndecided = 2;
constexpr int kUsage = 64;
constexpr int kBadInput = 65;

class BadInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  long height = 10;
  long search = 50;
  unsigned depth = 8;
  unsigned workers = 1;
  bool json = false;
  std::string u;
  std::string which;
  long bound = 10000;
  std::string alpha;
  std::string p;
};

Rational parse_rational(const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw BadInput("not a rational number: '" + text + "'");
  }
}

QuarticPoly parse_poly(const std::string& text) {
  std::istringstream in(text);
  std::vector<Rational> coeffs;
  for (std::string tok; in >> tok;) coeffs.push_back(parse_rational(tok));
  if (coeffs.empty() || coeffs.size() > 5) throw BadInput("expected 1 to 5 coefficients, x^4 down to the constant");
  coeffs.insert(coeffs.begin(), 5 - coeffs.size(), Rational(0));
  return QuarticPoly::from_descending(coeffs);
}

void emit(const Config& cfg, const std::string& kind, const json& body, const json& options) {
  json header{{"command", kind}, {"options", options}};
  std::cout << make_document(kind, body, header).dump(2) << "\n";
  (void)cfg;
}

std::string point_text(const GlobalPoint& g) {
  return "(" + to_string(g.x) + ", " + g.y.to_string() + ", " + g.z.to_string() + ")";
}

void print_local(const LocalSolvabilityMap& m) {
  for (const auto& pv : m.places) {
    std::cout << "  place " << pv.place.to_string() << ": ";
    if (const auto* s = std::get_if<Solvable>(&pv.verdict)) {
      std::cout << "solvable at x = " << to_string(s->certificate.witness_x) << "\n";
    } else if (const auto* n = std::get_if<NotSolvable>(&pv.verdict)) {
      std::cout << "not solvable (" << n->reason << ")\n";
    } else {
      std::cout << "unknown (" << std::get<Unknown>(pv.verdict).reason << ")\n";
    }
  }
  std::cout << "  good primes: " << m.blanket.justification << "\n";
}

int fiber_exit(FiberStatus s) {
  switch (s) {
    case FiberStatus::PointFound:
    case FiberStatus::CandidateHasseViolation: return kOk;
    case FiberStatus::Undecided: return kUndecided;
    case FiberStatus::Contradiction: return kContradiction;
  }
  return kContradiction;
}

int cmd_verify_theorem(const Config& cfg) {
  ScanOptions opt;
  opt.fiber_height = cfg.height;
  opt.search_height = cfg.search;
  opt.depth = cfg.depth;
  opt.workers = cfg.workers;
  const ScanReport r = theorem_one_scan(opt);
  if (cfg.json) {
    emit(cfg, "verify-theorem", r,
         {{"height", cfg.height}, {"search", cfg.search}, {"depth", cfg.depth}});
  } else {
    for (const auto& f : r.fibers) {
      std::cout << f.point.to_string() << "  " << f.fiber.to_string() << "  " << to_string(f.status);
      if (f.report.point) std::cout << "  " << point_text(*f.report.point);
      for (const auto& n : f.notes) std::cout << "  [" << n << "]";
      std::cout << "\n";
    }
    std::cout << r.fibers.size() << " fibers, status " << to_string(r.status()) << "\n";
  }
  switch (r.status()) {
    case ScanStatus::Verified: return kOk;
    case ScanStatus::Undecided: return kUndecided;
    case ScanStatus::Contradiction: return kContradiction;
  }
  return kContradiction;
}

int cmd_fiber(const Config& cfg) {
  const ProjectivePoint pt = cfg.u == "inf" ? ProjectivePoint::infinity() : ProjectivePoint(parse_rational(cfg.u));
  ScanOptions opt;
  opt.search_height = cfg.search;
  opt.depth = cfg.depth;
  opt.workers = cfg.workers;
  const FiberEntry e = scan_fiber(pt, opt);
  if (cfg.json) {
    emit(cfg, "fiber", e, {{"u", cfg.u}, {"search", cfg.search}, {"depth", cfg.depth}});
  } else {
    std::cout << "fiber over " << pt.to_string() << ": y^2 + z^2 = " << e.fiber.to_string() << "\n";
    if (e.irreducibility) {
      std::cout << "  irreducible: " << (e.irreducibility->irreducible ? "yes" : "no") << "\n";
    } else {
      std::cout << "  irreducible: no (fiber over (1:0))\n";
    }
    print_local(e.report.local);
    if (e.report.point) std::cout << "  point: " << point_text(*e.report.point) << "\n";
    else std::cout << "  no point up to height " << e.report.search_bound << "\n";
    std::cout << "  " << to_string(e.report.kind) << "\n";
    for (const auto& n : e.notes) std::cout << "  note: " << n << "\n";
  }
  return fiber_exit(e.status);
}

int cmd_curves(const Config& cfg) {
  const QuarticCurve curve = cfg.which == "C" ? curves::c() : curves::c_prime();
  const CurveReport r = curve_report(curve, cfg.bound, cfg.workers);
  if (cfg.json) {
    emit(cfg, "curves", r, {{"which", cfg.which}, {"bound", cfg.bound}});
  } else {
    std::cout << r.name << ": w^2 = " << r.f.to_string() << "\n";
    std::cout << "  affine points with height(t) <= " << r.search_bound << ": " << r.affine_points.size() << "\n";
    for (const auto& p : r.affine_points) std::cout << "    (" << p.t.to_string() << ", " << p.w.to_string() << ")\n";
    std::cout << "  points at infinity: " << r.at_infinity.count << "\n";
    if (r.symmetry) {
      std::cout << "  t = 0: w^2 = " << r.symmetry->value_at_t0.to_string()
                << (r.symmetry->t0_has_point ? " (point)" : " (no rational w)") << "\n";
      std::cout << "  w = 0: t^2 in {";
      for (std::size_t i = 0; i < r.symmetry->w0_t_squares.size(); ++i) {
        std::cout << (i ? ", " : "") << r.symmetry->w0_t_squares[i].to_string();
      }
      std::cout << "}" << (r.symmetry->w0_has_point ? " (point)" : " (no rational t)") << "\n";
    }
    for (const auto& e : r.local) {
      std::cout << "  place " << e.place.to_string() << ": " << to_string(e.status) << "\n";
    }
  }
  return r.affine_points.empty() ? kOk : kContradiction;
}

int cmd_surface(const Config& cfg) {
  const Rational alpha = parse_rational(cfg.alpha);
  const QuarticPoly p = parse_poly(cfg.p);
  std::optional<ChateletSurface> s;
  try {
    s.emplace(alpha, p);
  } catch (const InvalidSurface& e) {
    throw BadInput(e.what());
  }
  PointSearchOptions opt;
  opt.height_bound = cfg.search;
  opt.workers = cfg.workers;
  const SurfaceReport r{alpha, p, hasse_violation_report(*s, opt, cfg.depth)};
  if (cfg.json) {
    emit(cfg, "surface", r, {{"alpha", cfg.alpha}, {"p", cfg.p}, {"search", cfg.search}, {"depth", cfg.depth}});
  } else {
    std::cout << "y^2 - (" << alpha.to_string() << ") z^2 = " << p.to_string() << "\n";
    print_local(r.report.local);
    if (r.report.point) std::cout << "  point: " << point_text(*r.report.point) << "\n";
    std::cout << "  " << to_string(r.report.kind);
    if (r.report.obstructed_place) std::cout << " at " << r.report.obstructed_place->to_string();
    std::cout << "\n";
  }
  return r.report.kind == HasseKind::Undecided ? kUndecided : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chatelet surface bundle verifier"};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&](CLI::App* sub, bool searches) {
    sub->add_flag("--json", cfg.json, "Emit a JSON certificate");
    sub->add_option("--workers", cfg.workers, "Worker threads")->envname("CHATELET_WORKERS")->check(CLI::Range(1u, 1024u));
    if (searches) {
      sub->add_option("--search", cfg.search, "Point search height bound")->capture_default_str()->check(CLI::PositiveNumber);
      sub->add_option("--depth", cfg.depth, "Local search depth")->capture_default_str()->check(CLI::Range(1u, 64u));
    }
  };

  auto* verify = app.add_subcommand("verify-theorem", "Scan every fiber up to a height bound");
  verify->add_option("--height", cfg.height, "Fiber height bound")->capture_default_str()->check(CLI::PositiveNumber);
  common(verify, true);

  auto* fiber = app.add_subcommand("fiber", "Analyse the fiber over u (a rational or inf)");
  fiber->add_option("--u", cfg.u, "Base point u/v, or inf")->required();
  common(fiber, true);

  auto* curve = app.add_subcommand("curves", "Point search on C or Cprime");
  curve->add_option("--which", cfg.which, "C or Cprime")->required()->check(CLI::IsMember({"C", "Cprime"}));
  curve->add_option("--bound", cfg.bound, "Height bound for t")->capture_default_str()->check(CLI::PositiveNumber);
  common(curve, false);

  auto* surface = app.add_subcommand("surface", "Classify y^2 - alpha z^2 = P(x)");
  surface->add_option("--alpha", cfg.alpha, "alpha")->required()->allow_extra_args(false);
  surface->add_option("--p", cfg.p, "Coefficients of P from x^4 down")->required()->allow_extra_args(false);
  common(surface, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify_theorem(cfg);
    if (fiber->parsed()) return cmd_fiber(cfg);
    if (curve->parsed()) return cmd_curves(cfg);
    return cmd_surface(cfg);
  } catch (const BadInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kContradiction;
  }
}
