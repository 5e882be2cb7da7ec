// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. `--only k` runs a single criterion.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "modgrowth/conjugacy.hpp"
#include "modgrowth/error.hpp"
#include "modgrowth/growth.hpp"
#include "modgrowth/identities.hpp"
#include "modgrowth/orbit.hpp"

using namespace modgrowth;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

GroupElement M(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return GroupElement::normalize(a, b, c, d);
}

const Point kI(0.0, 1.0);
const RationalPoint kIr(Rational(0), Rational(1));

unsigned threads() { return std::max(1u, std::thread::hardware_concurrency()); }

std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> out;
  for (int k = 0; lo + k * step <= hi + 1e-9; ++k) out.push_back(lo + k * step);
  return out;
}

Point on_axis(const PseudoAnosov& phi) { return project_to_geodesic(kI, phi.axis()); }

// Test elements for the exact suites: golden, silver and a trace-4 class,
// plus the square of the golden one.
std::vector<PseudoAnosov> test_phis() {
  return {PseudoAnosov(M(2, 1, 1, 1)), PseudoAnosov(M(5, 2, 2, 1)), PseudoAnosov(M(3, 1, 2, 1))};
}

struct Shared {
  CalibrationResult cal{};
  double A = 0;  // hyperbolic
  std::vector<ConjugacyCounts> gamma;  // phi and phi^2 at X = Y = i, radii 12..20
  std::vector<double> gamma_radii = grid(12.0, 20.0, 0.25);
  bool gamma_ready = false;

  void calibrate() {
    if (A > 0) return;
    cal = calibrate_A(10000, 1, threads());
    A = cal.A_hyp;
  }

  void measure_gamma() {
    if (gamma_ready) return;
    calibrate();
    for (const auto& g : {M(2, 1, 1, 1), M(5, 3, 3, 2)}) {
      const auto q = make_query(PseudoAnosov(g), kI, kIr, gamma_radii.back(), Units::Hyperbolic, A);
      gamma.push_back(conjugacy_counts(q, gamma_radii, threads()));
    }
    gamma_ready = true;
  }
};

Outcome orbit_exponent(Shared&) {
  const auto radii = grid(8.0, 14.0, 0.25);
  const auto recs = census(kIr, radii, Units::Hyperbolic, threads());
  GrowthSeries s;
  for (const auto& r : recs) s.points.push_back({r.radius, static_cast<std::int64_t>(r.omega_count)});
  const auto fit = fit_exponent(s, {8.0, 14.0});
  std::ostringstream os;
  os << "slope " << fit.slope << " over r in [8, 14] (|Omega_14| = " << recs.back().omega_count << ")";
  return {fit.slope >= 0.95 && fit.slope <= 1.05, os.str()};
}

Outcome conjugacy_exponent(Shared& sh) {
  sh.measure_gamma();
  bool pass = true;
  std::ostringstream os;
  const char* names[] = {"phi", "phi^2"};
  for (std::size_t k = 0; k < sh.gamma.size(); ++k) {
    const auto& s = sh.gamma[k].gamma;
    const double slope = fit_exponent(s, {12.0, 20.0}).slope;
    const auto run = running_exponent(s);
    const double at20 = run.values.back().second;
    pass = pass && slope >= 0.40 && slope <= 0.60 && run.values.back().first == 20.0 && at20 >= 0.40 &&
           at20 <= 0.60;
    os << names[k] << ": slope " << slope << ", ln(Gamma_20)/20 = " << at20 << "; ";
  }
  return {pass, os.str()};
}

Outcome exact_sandwich(Shared& sh) {
  sh.measure_gamma();
  const double N = static_cast<double>(max_stabilizer_order());
  std::size_t rows = 0, violations = 0;
  for (const auto& c : sh.gamma) {
    for (std::size_t k = 0; k < c.gamma.points.size(); ++k) {
      const auto gamma = c.gamma.points[k].count, elems = c.elements.points[k].count;
      ++rows;
      if (static_cast<double>(elems) / N > static_cast<double>(gamma) || gamma > elems) ++violations;
    }
  }
  std::ostringstream os;
  os << rows << " radii, " << violations << " violations, N = " << N;
  return {violations == 0 && rows > 0, os.str()};
}

Outcome inclusions(Shared& sh) {
  sh.calibrate();
  std::size_t cases = 0, bad = 0;
  for (const auto& phi : test_phis()) {
    for (double R : {6.0, 8.0, 10.0, 12.0}) {
      const auto r = check_inclusions(phi, on_axis(phi), R, sh.A, threads());
      ++cases;
      bad += r.minus_not_in_ball.size() + r.ball_not_in_plus.size();
    }
  }
  std::ostringstream os;
  os << cases << " cases at A = " << sh.A << ", " << bad << " violations";
  return {bad == 0, os.str()};
}

Outcome injection(Shared& sh) {
  sh.calibrate();
  std::size_t domain = 0, collisions = 0, escapes = 0, far = 0;
  for (const auto& phi : test_phis()) {
    for (double R : grid(1.0, 10.0, 1.0)) {
      const auto r = check_injection(phi, on_axis(phi), R, sh.A, threads());
      domain += r.domain_size;
      collisions += r.collisions;
      escapes += r.image_radius_escapes;
      far += r.projection_bound_violations;
    }
  }
  std::ostringstream os;
  os << domain << " conjugates, " << collisions << " collisions, " << escapes << " escapes, " << far
     << " projection misses";
  return {collisions == 0 && escapes == 0 && far == 0 && domain > 0, os.str()};
}

std::string bucket_summary(const BucketReport& r) {
  std::ostringstream os;
  os << "max |H| " << r.max_bucket << " vs bound " << r.bucket_bound << " (" << r.bucket_bound_violations
     << " over), type (c) share violations " << r.type_c_share_violations << ", sum inequality "
     << (r.sum_inequality_holds ? "holds" : "fails") << ", axes inequality "
     << (r.axes_inequality_holds ? "holds" : "fails");
  return os.str();
}

Outcome buckets(Shared& sh) {
  sh.calibrate();
  const PseudoAnosov phi(M(2, 1, 1, 1));
  const double N = static_cast<double>(max_stabilizer_order());
  const double L = convert(choose_L(phi.lambda(Units::Teichmuller), convert(sh.A, Units::Hyperbolic, Units::Teichmuller),
                                    N, growth_dimension(Units::Teichmuller)),
                           Units::Teichmuller, Units::Hyperbolic);
  std::ostringstream os;
  bool pass = false;
  try {
    const auto r = bucket_census(phi, on_axis(phi), 12.0, sh.A, L, threads());
    pass = r.ok();
    os << "R = 12, L = " << L << ": " << bucket_summary(r);
  } catch (const DomainError& e) {
    os << "R = 12, L = " << L << ": " << e.what();
  }
  // Smallest admissible radius for this L, for context.
  const double R_adm = 2.0 * L + 2.0 * sh.A + phi.lambda_hyp();
  const double R_info = std::ceil(R_adm + 0.5);
  try {
    os << " | R = " << R_info << ": " << bucket_summary(bucket_census(phi, on_axis(phi), R_info, sh.A, L, threads()));
  } catch (const DomainError& e) {
    os << " | R = " << R_info << ": " << e.what();
  }
  // A class not conjugate to its inverse, whose axis has no reversing
  // symmetry, at its smallest admissible integer radius.
  const PseudoAnosov tame(M(3, 1, 2, 1));
  const double L2 = convert(choose_L(tame.lambda(Units::Teichmuller), convert(sh.A, Units::Hyperbolic, Units::Teichmuller),
                                     N, growth_dimension(Units::Teichmuller)),
                            Units::Teichmuller, Units::Hyperbolic);
  const double R2 = std::ceil(2.0 * L2 + 2.0 * sh.A + tame.lambda_hyp() + 0.5);
  os << " | " << tame.element() << " at R = " << R2 << ": "
     << bucket_summary(bucket_census(tame, on_axis(tame), R2, sh.A, L2, threads()));
  return {pass, os.str()};
}

Outcome identities(Shared&) {
  const auto r = check_identities(10000, 2026, 1e-9);
  std::ostringstream os;
  for (const auto& c : r.checks) os << c.name << " " << c.failures << "/" << c.cases << " (max " << c.max_error << ") ";
  return {r.ok(), os.str()};
}

Outcome oracles(Shared& sh) {
  sh.calibrate();
  std::size_t queries = 0, mismatches = 0;
  const std::vector<std::pair<Point, RationalPoint>> bases{
      {kI, kIr},
      {Point(1.0 / 3.0, 1.5), RationalPoint(Rational(-1, 2), Rational(2))},
      {Point(-0.25, 0.4), RationalPoint(Rational(3, 7), Rational(5, 4))},
  };
  std::vector<PseudoAnosov> phis = test_phis();
  phis.emplace_back(M(5, 3, 3, 2));
  for (const auto& phi : phis) {
    for (const auto& [x, y] : bases) {
      for (double R : grid(1.0, 6.0, 0.5)) {
        const auto q = make_query(phi, x, y, R, Units::Hyperbolic, sh.A);
        const auto fast = conjugacy_ball(q, threads());
        const auto naive = conjugacy_ball_naive(q, certified_naive_radius(q));
        std::set<GroupElement> a, b;
        for (const auto& e : fast.entries) a.insert(e.psi);
        for (const auto& e : naive.entries) b.insert(e.psi);
        ++queries;
        if (a != b || !naive.certified) ++mismatches;
      }
    }
  }
  std::size_t ball_mismatches = 0;
  for (std::int64_t m = 0; m <= 100; ++m) {
    if (enumerate_norm_ball(m, threads()) != enumerate_norm_ball_scan(m)) ++ball_mismatches;
  }
  std::ostringstream os;
  os << queries << " conjugacy queries, " << mismatches << " mismatches; norm balls M = 0..100, "
     << ball_mismatches << " mismatches";
  return {mismatches == 0 && ball_mismatches == 0, os.str()};
}

Outcome calibration(Shared& sh) {
  sh.measure_gamma();
  const auto val = validate_A(sh.A, 10000, 2, threads());
  const PseudoAnosov phi(M(2, 1, 1, 1));
  const Units T = Units::Teichmuller;
  const double h = growth_dimension(T);
  const double N = static_cast<double>(max_stabilizer_order());
  const double A_t = sh.cal.A_teich;
  const double L_t = choose_L(phi.lambda(T), A_t, N, h);
  const auto k = evaluate_constants(phi.lambda(T), A_t, L_t, N, h);
  const auto series = sh.gamma.front().gamma.in_units(T);
  const double R_min = series.points.back().radius / 2.0;
  const auto sw = coarse_sandwich_check(series, k.G(), h, 1.5, R_min);
  std::ostringstream os;
  os << "A = " << sh.A << " hyp; validation shadow " << val.shadow_violations << "/" << val.shadow_checked
     << ", lower " << val.lower_violations << "/" << val.lower_checked << ", upper " << val.upper_violations
     << "; sandwich G = " << k.G() << " over " << sw.rows.size() << " radii: " << (sw.pass ? "inside" : "outside");
  if (sw.first_violation) os << " (first violation R = " << *sw.first_violation << ")";
  return {sh.A <= 3.0 && val.ok() && sw.pass && !sw.rows.empty(), os.str()};
}

Outcome genericity(Shared&) {
  const auto recs = census(kIr, {4.0, 10.0}, Units::Hyperbolic, threads());
  std::ostringstream os;
  os << "hyperbolic fraction " << recs[0].frac_hyperbolic << " at r = 4, " << recs[1].frac_hyperbolic << " at r = 10";
  return {recs[1].frac_hyperbolic > 0.95 && recs[1].frac_hyperbolic > recs[0].frac_hyperbolic, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int k = 1; k < argc; ++k) {
    if (std::string(argv[k]) == "--only" && k + 1 < argc) only = std::atoi(argv[++k]);
  }
  const std::vector<std::pair<std::string, std::function<Outcome(Shared&)>>> criteria{
      {"orbit growth exponent", orbit_exponent},
      {"conjugacy growth exponent", conjugacy_exponent},
      {"exact class sandwich", exact_sandwich},
      {"P-/ball/P+ inclusions", inclusions},
      {"injection into Omega((R+A)/2)", injection},
      {"bucket bound and counting inequalities", buckets},
      {"model identities", identities},
      {"fast vs brute-force enumeration", oracles},
      {"contraction calibration and coarse sandwich", calibration},
      {"genericity census", genericity},
  };
  Shared shared;
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    if (only != 0 && static_cast<std::size_t>(only) != k + 1) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second(shared);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "criterion " << k + 1 << " " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[k].first << ": "
              << o.detail << " [" << secs << " s]" << std::endl;
    if (!o.pass) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
