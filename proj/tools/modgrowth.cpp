// Batch front end: ball, census, conj, verify, fit, constants, calibrate, normball.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "modgrowth/conjugacy.hpp"
#include "modgrowth/error.hpp"
#include "modgrowth/growth.hpp"
#include "modgrowth/identities.hpp"
#include "modgrowth/io.hpp"
#include "modgrowth/orbit.hpp"

namespace io = modgrowth::io;
using json = nlohmann::ordered_json;
using namespace modgrowth;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;
constexpr int kExitOverflow = 3;

constexpr std::size_t kDefaultCalibrationSamples = 1000;
constexpr std::uint64_t kDefaultSeed = 1;

struct Globals {
  std::optional<std::string> config_path;
  std::optional<unsigned> threads;
  std::optional<std::string> units;
  std::vector<std::string> argv;
};

struct Context {
  io::Config cfg;
  Units units;
  unsigned threads;
  std::vector<std::string> argv;
  bool units_given = false;  // --units on the command line
};

Context resolve(const Globals& g) {
  Context ctx{io::resolve_config(g.config_path), Units::Hyperbolic, 1, g.argv};
  ctx.units = ctx.cfg.units;
  ctx.threads = ctx.cfg.threads;
  if (g.units) {
    try {
      ctx.units = parse_units(*g.units);
      ctx.units_given = true;
    } catch (const std::exception& e) {
      throw io::UsageError(e.what());
    }
  }
  if (g.threads) ctx.threads = *g.threads;
  return ctx;
}

// Calibrated A in hyperbolic units when the user gave none.
double resolve_A(const std::optional<double>& A, Units units, std::uint64_t seed) {
  if (A) {
    if (!(*A > 0)) throw io::UsageError("A must be positive");
    return convert(*A, units, Units::Hyperbolic);
  }
  return calibrate_A(kDefaultCalibrationSamples, seed).A_hyp;
}

// Writes `content` to --out (plus a manifest) or to stdout.
void emit(const std::optional<std::string>& out, const std::string& content, io::RunManifest manifest) {
  if (!out) {
    std::cout << content;
    return;
  }
  io::write_if_changed(*out, content);
  manifest.finished = io::utc_now();
  manifest.outputs.push_back(io::digest_output(*out));
  // Timestamps differ between runs, so only the output file is compared
  // bit-exactly; the manifest is always refreshed.
  io::write_if_changed(*out + ".manifest.json", manifest.to_json());
}

io::RunManifest base_manifest(const Context& ctx) {
  io::RunManifest m;
  m.command = ctx.argv;
  m.units = to_string(ctx.units);
  m.threads = ctx.threads;
  m.started = io::utc_now();
  return m;
}

std::string point_str(const RationalPoint& p) { return p.str(); }

// ---------------------------------------------------------------- ball

struct BallArgs {
  std::string center;
  double radius = 0;
  std::optional<std::string> out;
};

int cmd_ball(const Context& ctx, const BallArgs& a) {
  const RationalPoint c = io::parse_point(a.center);
  if (!(a.radius >= 0)) throw io::UsageError("radius must be nonnegative");
  const auto rows = census(c, {a.radius}, ctx.units, ctx.threads);
  const auto& r = rows.front();
  const std::string csv = io::format_csv({{a.radius, ctx.units, static_cast<std::int64_t>(r.omega_count), "omega"},
                                          {a.radius, ctx.units, static_cast<std::int64_t>(r.orbit_count), "orbit"}});
  auto m = base_manifest(ctx);
  m.X = point_str(c);
  m.radii = {a.radius};
  m.boundary_hits = r.boundary_hits;
  emit(a.out, csv, m);
  return kExitOk;
}

// -------------------------------------------------------------- census

struct CensusArgs {
  std::string center = "i";
  std::string radii;
  std::optional<std::string> out;
};

int cmd_census(const Context& ctx, const CensusArgs& a) {
  const RationalPoint c = io::parse_point(a.center);
  const auto radii = io::parse_radii(a.radii);
  const auto recs = census(c, radii, ctx.units, ctx.threads);
  std::vector<io::CsvRow> rows;
  std::size_t hits = 0;
  for (const auto& r : recs) {
    const auto n = static_cast<double>(r.omega_count);
    rows.push_back({r.radius, ctx.units, static_cast<std::int64_t>(r.omega_count), "omega"});
    rows.push_back({r.radius, ctx.units, static_cast<std::int64_t>(r.orbit_count), "orbit"});
    rows.push_back({r.radius, ctx.units, std::llround(r.frac_hyperbolic * n), "hyperbolic"});
    rows.push_back({r.radius, ctx.units, std::llround(r.frac_parabolic * n), "parabolic"});
    rows.push_back({r.radius, ctx.units, std::llround(r.frac_elliptic * n), "elliptic"});
    hits = std::max(hits, r.boundary_hits);
  }
  auto m = base_manifest(ctx);
  m.X = point_str(c);
  m.radii = radii;
  m.boundary_hits = hits;
  emit(a.out, io::format_csv(rows), m);
  return kExitOk;
}

// ---------------------------------------------------------------- conj

struct ConjArgs {
  std::string phi;
  std::string X = "i";
  std::string Y = "i";
  std::string radii;
  std::optional<double> A;
  bool p_sets = false;
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::string> out;
};

PseudoAnosov parse_phi(const std::string& s) {
  const GroupElement g = io::parse_element(s);
  if (g.classify() != ElementClass::Hyperbolic) {
    throw io::UsageError("phi = " + g.str() + " is not hyperbolic (|trace| must exceed 2)");
  }
  return PseudoAnosov(g);
}

int cmd_conj(const Context& ctx, const ConjArgs& a) {
  const PseudoAnosov phi = parse_phi(a.phi);
  const RationalPoint X = io::parse_point(a.X);
  const RationalPoint Y = io::parse_point(a.Y);
  const auto radii = io::parse_radii(a.radii);
  const double A = resolve_A(a.A, ctx.units, a.seed);
  const auto q = make_query(phi, X.to_point(), Y, radii.back(), ctx.units, convert(A, Units::Hyperbolic, ctx.units));
  if (phi.lambda_hyp() < A) {
    std::cerr << "note: lambda = " << phi.lambda_hyp() << " < A = " << A
              << " (hyperbolic units); the growth constants assume lambda >= A\n";
  }
  const auto counts = conjugacy_counts(q, radii, ctx.threads);

  std::vector<io::CsvRow> rows;
  for (const auto& p : counts.gamma.points) rows.push_back({p.radius, ctx.units, p.count, "gamma"});
  if (a.p_sets) {
    for (double R : radii) {
      const auto p = p_sets(phi, X.to_point(), convert(R, ctx.units, Units::Hyperbolic), A, ctx.threads);
      rows.push_back({R, ctx.units, static_cast<std::int64_t>(p.plus.size()), "p_plus"});
      rows.push_back({R, ctx.units, static_cast<std::int64_t>(p.minus.size()), "p_minus"});
    }
  }
  auto m = base_manifest(ctx);
  m.phi = phi.element().str();
  m.X = point_str(X);
  m.Y = point_str(Y);
  m.radii = radii;
  m.A = convert(A, Units::Hyperbolic, ctx.units);
  m.seed = a.seed;
  m.boundary_hits = counts.boundary_hits;
  emit(a.out, io::format_csv(rows), m);
  return kExitOk;
}

// -------------------------------------------------------------- verify

struct VerifyArgs {
  std::string suite;
  std::optional<std::string> phi;
  std::optional<double> A;
  std::optional<double> L;
  std::optional<std::string> radii;
  std::size_t cases = 10'000;
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::string> out;
};

const std::vector<std::string> kTestPhis = {"2,1,1,1", "5,2,2,1", "5,3,3,2"};

std::vector<std::string> suite_phis(const VerifyArgs& a) {
  if (a.phi) return {*a.phi};
  return kTestPhis;
}

// Nearest point of the axis to i.
Point axis_basepoint(const PseudoAnosov& phi) { return project_to_geodesic(Point(0.0, 1.0), phi.axis()); }

json elements_json(const std::vector<GroupElement>& v) {
  json out = json::array();
  for (const auto& g : v) out.push_back(g.str());
  return out;
}

bool verify_inclusions(const Context& ctx, const VerifyArgs& a, json& rep) {
  const double A = resolve_A(a.A, ctx.units, a.seed);
  const auto radii = io::parse_radii(a.radii.value_or("6,8,10,12"));
  bool ok = true;
  json cases = json::array();
  for (const auto& s : suite_phis(a)) {
    const PseudoAnosov phi = parse_phi(s);
    const Point x = axis_basepoint(phi);
    for (double R : radii) {
      const auto r = check_inclusions(phi, x, convert(R, ctx.units, Units::Hyperbolic), A, ctx.threads);
      ok = ok && r.ok();
      cases.push_back({{"phi", phi.element().str()},
                       {"R", R},
                       {"p_minus", r.minus_size},
                       {"ball", r.ball_size},
                       {"p_plus", r.plus_size},
                       {"pass", r.ok()},
                       {"minus_not_in_ball", elements_json(r.minus_not_in_ball)},
                       {"ball_not_in_plus", elements_json(r.ball_not_in_plus)}});
    }
  }
  rep["A_hyp"] = A;
  rep["cases"] = cases;
  return ok;
}

bool verify_injection(const Context& ctx, const VerifyArgs& a, json& rep) {
  const double A = resolve_A(a.A, ctx.units, a.seed);
  const auto radii = io::parse_radii(a.radii.value_or("6,8,10"));
  bool ok = true;
  json cases = json::array();
  for (const auto& s : suite_phis(a)) {
    const PseudoAnosov phi = parse_phi(s);
    const Point x = axis_basepoint(phi);
    for (double R : radii) {
      const auto r = check_injection(phi, x, convert(R, ctx.units, Units::Hyperbolic), A, ctx.threads);
      ok = ok && r.ok();
      json wit = json::array();
      for (const auto& w : r.witnesses) {
        wit.push_back({{"psi", w.psi.str()}, {"f", w.f.str()}, {"k", w.k}, {"g", w.g.str()},
                       {"dist_to_projection", w.dist_to_projection}});
      }
      cases.push_back({{"phi", phi.element().str()},
                       {"R", R},
                       {"domain", r.domain_size},
                       {"escapes", r.image_radius_escapes},
                       {"projection_violations", r.projection_bound_violations},
                       {"collisions", r.collisions},
                       {"pass", r.ok()},
                       {"witnesses", wit}});
    }
  }
  rep["A_hyp"] = A;
  rep["cases"] = cases;
  return ok;
}

json bucket_json(const BucketReport& r) {
  json buckets = json::array();
  for (const auto& b : r.buckets) {
    if (!b.in_A_R_L) continue;
    buckets.push_back({{"axis", {b.axis.a, b.axis.b, b.axis.c}},
                       {"size", b.size},
                       {"axis_dist", b.axis_dist},
                       {"type_a", b.type_a},
                       {"type_b", b.type_b},
                       {"type_c", b.type_c},
                       {"within_bound", static_cast<double>(b.size) <= r.bucket_bound + kTolerance}});
  }
  return {{"R", r.R},
          {"A", r.A},
          {"L", r.L},
          {"lambda", r.lambda},
          {"outer_radius", r.outer_radius},
          {"type_radius", r.type_radius},
          {"inner_radius", r.inner_radius},
          {"axes_in_A_R", r.axes_in_A_R},
          {"axes_in_A_R_L", r.axes_in_A_R_L},
          {"type_counts", {{"a", r.type_a}, {"b", r.type_b}, {"c", r.type_c}}},
          {"partition_failures", r.partition_failures},
          {"uncovered_axes", r.uncovered_axes},
          {"type_a_outside_A_R_L", r.type_a_outside_A_R_L},
          {"bucket_bound", r.bucket_bound},
          {"max_bucket", r.max_bucket},
          {"bucket_bound_violations", r.bucket_bound_violations},
          {"type_c_share_bound", r.type_c_share_bound},
          {"type_c_share_violations", r.type_c_share_violations},
          {"sum_H", r.sum_H},
          {"sum_H_lower", r.sum_H_lower},
          {"sum_inequality_holds", r.sum_inequality_holds},
          {"axes_lower", r.axes_lower},
          {"axes_inequality_holds", r.axes_inequality_holds},
          {"pass", r.ok()},
          {"buckets", buckets}};
}

bool verify_buckets(const Context& ctx, const VerifyArgs& a, json& rep) {
  const PseudoAnosov phi = parse_phi(a.phi.value_or("2,1,1,1"));
  const double A = resolve_A(a.A, ctx.units, a.seed);
  const double lambda_t = phi.lambda(Units::Teichmuller);
  const double N = static_cast<double>(max_stabilizer_order());
  const double L = a.L ? convert(*a.L, ctx.units, Units::Hyperbolic)
                       : convert(choose_L(lambda_t, convert(A, Units::Hyperbolic, Units::Teichmuller), N, 2.0),
                                 Units::Teichmuller, Units::Hyperbolic);
  const auto radii = io::parse_radii(a.radii.value_or(ctx.units == Units::Hyperbolic ? "12" : "6"));
  const Point x = axis_basepoint(phi);
  bool ok = true;
  json cases = json::array();
  for (double R : radii) {
    const double R_hyp = convert(R, ctx.units, Units::Hyperbolic);
    try {
      const auto r = bucket_census(phi, x, R_hyp, A, L, ctx.threads);
      ok = ok && r.ok();
      cases.push_back(bucket_json(r));
    } catch (const DomainError& e) {
      ok = false;
      cases.push_back({{"R", R_hyp}, {"A", A}, {"L", L}, {"lambda", phi.lambda_hyp()}, {"pass", false},
                       {"precondition", e.what()}});
    }
  }
  rep["phi"] = phi.element().str();
  rep["N"] = N;
  rep["cases"] = cases;
  return ok;
}

bool verify_identities(const Context&, const VerifyArgs& a, json& rep) {
  const auto r = check_identities(a.cases, a.seed);
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name}, {"cases", c.cases}, {"failures", c.failures}, {"max_error", c.max_error},
                      {"tolerance", c.tolerance}});
  }
  rep["checks"] = checks;
  return r.ok();
}

bool verify_sandwich(const Context& ctx, const VerifyArgs& a, json& rep) {
  const double A = resolve_A(a.A, ctx.units, a.seed);
  const auto radii = io::parse_radii(a.radii.value_or(ctx.units == Units::Hyperbolic ? "4:14:1" : "2:7:0.5"));
  const double N = static_cast<double>(max_stabilizer_order());
  const RationalPoint i(Rational(0), Rational(1));
  bool ok = true;
  json cases = json::array();
  for (const auto& s : suite_phis(a)) {
    const PseudoAnosov phi = parse_phi(s);
    const auto q = make_query(phi, i.to_point(), i, radii.back(), ctx.units, convert(A, Units::Hyperbolic, ctx.units));
    const auto counts = conjugacy_counts(q, radii, ctx.threads);
    json rows = json::array();
    std::size_t violations = 0;
    for (std::size_t k = 0; k < radii.size(); ++k) {
      const auto gamma = counts.gamma.points[k].count;
      const auto elems = counts.elements.points[k].count;
      const bool inside = static_cast<double>(elems) <= N * static_cast<double>(gamma) && gamma <= elems;
      if (!inside) ++violations;
      rows.push_back({{"R", radii[k]}, {"gamma", gamma}, {"class_in_ball", elems}, {"inside", inside}});
    }
    ok = ok && violations == 0;
    cases.push_back({{"phi", phi.element().str()}, {"violations", violations}, {"rows", rows}});
  }
  rep["N"] = N;
  rep["A_hyp"] = A;
  rep["cases"] = cases;
  return ok;
}

int cmd_verify(const Context& ctx, const VerifyArgs& a) {
  json rep;
  rep["suite"] = a.suite;
  rep["units"] = to_string(ctx.units);
  bool ok = false;
  if (a.suite == "inclusions") ok = verify_inclusions(ctx, a, rep);
  else if (a.suite == "injection") ok = verify_injection(ctx, a, rep);
  else if (a.suite == "buckets") ok = verify_buckets(ctx, a, rep);
  else if (a.suite == "identities") ok = verify_identities(ctx, a, rep);
  else if (a.suite == "sandwich") ok = verify_sandwich(ctx, a, rep);
  else throw io::UsageError("unknown suite '" + a.suite + "'");
  rep["pass"] = ok;
  auto m = base_manifest(ctx);
  m.seed = a.seed;
  emit(a.out, rep.dump(2) + "\n", m);
  return ok ? kExitOk : kExitVerify;
}

// ----------------------------------------------------------------- fit

struct FitArgs {
  std::string in;
  std::string variant = "omega";
  std::optional<double> lo, hi;
  std::optional<std::string> out;
};

int cmd_fit(const Context& ctx, const FitArgs& a) {
  const auto series = io::series_from_rows(io::read_csv(a.in), a.variant);
  series.validate();
  const FitWindow w{a.lo.value_or(series.points.front().radius), a.hi.value_or(series.points.back().radius)};
  const auto fit = fit_exponent(series, w);
  const auto running = running_exponent(series);
  json run = json::array();
  for (auto [R, v] : running.values) run.push_back({{"R", R}, {"value", v}});
  json rep{{"variant", a.variant},
           {"units", to_string(series.units)},
           {"slope", fit.slope},
           {"intercept", fit.intercept},
           {"window", {w.lo, w.hi}},
           {"residual_rms", fit.residual_rms},
           {"n_points", fit.n_points},
           {"slope_hyp", convert(1.0, Units::Hyperbolic, series.units) * fit.slope},
           {"running_exponent", run},
           {"running_skipped", running.skipped}};
  auto m = base_manifest(ctx);
  m.units = to_string(series.units);
  emit(a.out, rep.dump(2) + "\n", m);
  return kExitOk;
}

// ----------------------------------------------------------- constants

struct ConstantsArgs {
  std::string phi = "2,1,1,1";
  std::optional<double> lambda;
  double A = 1.0;
  std::optional<double> L;
  double N = 3.0;
  std::optional<double> h;
  std::optional<std::string> out;
};

int cmd_constants(Context ctx, const ConstantsArgs& a) {
  // Constants are conventionally quoted in Teichmuller units (h = 2).
  if (!ctx.units_given) ctx.units = Units::Teichmuller;
  const double h = a.h.value_or(growth_dimension(ctx.units));
  const double lambda = a.lambda.value_or(parse_phi(a.phi).lambda(ctx.units));
  const double L = a.L.value_or(choose_L(lambda, a.A, a.N, h));
  const auto k = evaluate_constants(lambda, a.A, L, a.N, h);
  json rep{{"units", to_string(ctx.units)},
           {"h", k.h},
           {"N", k.N},
           {"A", k.A},
           {"lambda", k.lambda},
           {"L", k.L},
           {"L_admissible", bucket_width_admissible(k.L, k.lambda, k.A, k.N, k.h)},
           {"lambda_at_least_A", k.lambda >= k.A},
           {"G_L", k.G_L},
           {"G_U", k.G_U},
           {"G", k.G()}};
  auto m = base_manifest(ctx);
  m.A = a.A;
  m.L = L;
  m.N = a.N;
  m.h = h;
  emit(a.out, rep.dump(2) + "\n", m);
  return kExitOk;
}

// ----------------------------------------------------------- calibrate

struct CalibrateArgs {
  std::size_t samples = 10'000;
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::string> out;
};

int cmd_calibrate(const Context& ctx, const CalibrateArgs& a) {
  if (a.samples < 1000) throw io::UsageError("calibrate needs at least 1000 samples");
  const auto cal = calibrate_A(a.samples, a.seed, ctx.threads);
  const auto val = validate_A(cal.A_hyp, a.samples, a.seed + 1, ctx.threads);
  json rep{{"A_hyp", cal.A_hyp},
           {"A_teich", cal.A_teich},
           {"samples", cal.samples},
           {"seed", cal.seed},
           {"max_shadow_ratio", cal.max_shadow_ratio},
           {"max_lower_deficit", cal.max_lower_deficit},
           {"max_upper_excess", cal.max_upper_excess},
           {"min_lambda", cal.min_lambda},
           {"validation",
            {{"seed", a.seed + 1},
             {"shadow_checked", val.shadow_checked},
             {"shadow_violations", val.shadow_violations},
             {"lower_checked", val.lower_checked},
             {"lower_violations", val.lower_violations},
             {"upper_violations", val.upper_violations},
             {"max_shadow", val.max_shadow},
             {"pass", val.ok()}}}};
  auto m = base_manifest(ctx);
  m.A = cal.A_hyp;
  m.seed = a.seed;
  m.units = to_string(Units::Hyperbolic);
  emit(a.out, rep.dump(2) + "\n", m);
  return val.ok() ? kExitOk : kExitVerify;
}

// ------------------------------------------------------------ normball

struct NormBallArgs {
  std::int64_t max_norm = 100;
};

int cmd_normball(const Context& ctx, const NormBallArgs& a) {
  if (a.max_norm < 0) throw io::UsageError("max norm must be nonnegative");
  const auto ball = io::cached_norm_ball(a.max_norm, ctx.cfg.cache_dir, ctx.threads);
  json rep{{"max_norm_sq", a.max_norm}, {"size", ball.size()}, {"cache_dir", ctx.cfg.cache_dir.string()}};
  std::cout << rep.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counting orbit and conjugacy-class points of the modular group"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  Globals g;
  for (int k = 0; k < argc; ++k) g.argv.emplace_back(argv[k]);
  app.add_option("--config", g.config_path, "Config file (default: $MODGROWTH_CONFIG)");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1, 1024));
  app.add_option("--units", g.units, "hyp or teich");

  BallArgs ball;
  auto* sc_ball = app.add_subcommand("ball", "|Omega_r(x)| and orbit points in B_r(x)");
  sc_ball->add_option("--center", ball.center, "Point, e.g. i or 1/2+3/2*i")->required();
  sc_ball->add_option("--radius", ball.radius)->required();
  sc_ball->add_option("--out", ball.out, "CSV path (manifest written alongside)");

  CensusArgs cen;
  auto* sc_census = app.add_subcommand("census", "Orbit counts and element-class shares over radii");
  sc_census->add_option("--center", cen.center);
  sc_census->add_option("--radii", cen.radii, "List a,b,c or range start:stop:step")->required();
  sc_census->add_option("--out", cen.out);

  ConjArgs conj;
  auto* sc_conj = app.add_subcommand("conj", "Gamma_R(X, Y, phi) over radii");
  sc_conj->add_option("--phi", conj.phi, "a,b,c,d")->required();
  sc_conj->add_option("--X", conj.X);
  sc_conj->add_option("--Y", conj.Y);
  sc_conj->add_option("--radii", conj.radii)->required();
  sc_conj->add_option("--A", conj.A, "Contraction constant (default: calibrated)");
  sc_conj->add_flag("--p-sets", conj.p_sets, "Also report |P+_R| and |P-_R| (X on the axis)");
  sc_conj->add_option("--seed", conj.seed);
  sc_conj->add_option("--out", conj.out);

  VerifyArgs ver;
  auto* sc_verify = app.add_subcommand("verify", "Run an invariant suite");
  sc_verify->add_option("--suite", ver.suite, "inclusions, injection, buckets, identities or sandwich")->required();
  sc_verify->add_option("--phi", ver.phi);
  sc_verify->add_option("--A", ver.A);
  sc_verify->add_option("--L", ver.L);
  sc_verify->add_option("--radii", ver.radii);
  sc_verify->add_option("--cases", ver.cases);
  sc_verify->add_option("--seed", ver.seed);
  sc_verify->add_option("--out", ver.out);

  FitArgs fit;
  auto* sc_fit = app.add_subcommand("fit", "Fit the growth exponent of a CSV series");
  sc_fit->add_option("--in", fit.in)->required();
  sc_fit->add_option("--variant", fit.variant);
  sc_fit->add_option("--lo", fit.lo);
  sc_fit->add_option("--hi", fit.hi);
  sc_fit->add_option("--out", fit.out);

  ConstantsArgs con;
  auto* sc_const = app.add_subcommand("constants", "Bucket width and growth constants");
  sc_const->set_help_flag("--help", "Print this help message and exit");
  sc_const->add_option("--phi", con.phi);
  sc_const->add_option("--lambda", con.lambda);
  sc_const->add_option("--A", con.A);
  sc_const->add_option("--L", con.L);
  sc_const->add_option("--N", con.N);
  sc_const->add_option("--h", con.h);
  sc_const->add_option("--out", con.out);

  CalibrateArgs cal;
  auto* sc_cal = app.add_subcommand("calibrate", "Fit the contraction constant A");
  sc_cal->add_option("--samples", cal.samples);
  sc_cal->add_option("--seed", cal.seed);
  sc_cal->add_option("--out", cal.out);

  NormBallArgs nb;
  auto* sc_nb = app.add_subcommand("normball", "Size of {g : |g|^2 <= M}, cached in cache_dir");
  sc_nb->add_option("--max-norm", nb.max_norm)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const Context ctx = resolve(g);
    if (*sc_ball) return cmd_ball(ctx, ball);
    if (*sc_census) return cmd_census(ctx, cen);
    if (*sc_conj) return cmd_conj(ctx, conj);
    if (*sc_verify) return cmd_verify(ctx, ver);
    if (*sc_fit) return cmd_fit(ctx, fit);
    if (*sc_const) return cmd_constants(ctx, con);
    if (*sc_cal) return cmd_calibrate(ctx, cal);
    if (*sc_nb) return cmd_normball(ctx, nb);
  } catch (const OverflowError& e) {
    std::cerr << "overflow: " << e.what() << "\n";
    return kExitOverflow;
  } catch (const io::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
