#include "modgrowth/conjugacy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "modgrowth/checked.hpp"
#include "modgrowth/error.hpp"
#include "modgrowth/orbit.hpp"

namespace modgrowth {

namespace ck = checked;

std::int64_t AxisKey::discriminant() const {
  return ck::narrow(static_cast<ck::i128>(b) * b - static_cast<ck::i128>(4) * a * c);
}

Geodesic AxisKey::geodesic() const {
  const double disc = static_cast<double>(discriminant());
  const double ad = static_cast<double>(a);
  return Geodesic::semicircle(-static_cast<double>(b) / (2.0 * ad), std::sqrt(disc) / (2.0 * ad));
}

std::string AxisKey::str() const {
  std::ostringstream os;
  os << "(" << a << "," << b << "," << c << ")";
  return os.str();
}

AxisKey axis_key(const GroupElement& psi) {
  if (psi.classify() != ElementClass::Hyperbolic) throw DomainError("axis_key needs a hyperbolic element");
  // Hyperbolic normalized elements have c > 0.
  std::int64_t a = psi.c();
  std::int64_t b = ck::sub(psi.d(), psi.a());
  std::int64_t c = ck::neg(psi.b());
  const std::int64_t g = ck::gcd(ck::gcd(a, b), c);
  return {a / g, b / g, c / g};
}

GroupElement primitive_root(const GroupElement& phi) {
  if (phi.classify() != ElementClass::Hyperbolic) {
    throw DomainError("primitive_root needs a hyperbolic element");
  }
  const std::int64_t diff = ck::sub(phi.a(), phi.d());
  const std::int64_t g0 = ck::gcd(ck::gcd(phi.c(), diff), phi.b());
  const std::int64_t c1 = phi.c() / g0;
  const std::int64_t m = diff / g0;
  const std::int64_t b1 = phi.b() / g0;
  const ck::i128 disc = static_cast<ck::i128>(m) * m + static_cast<ck::i128>(4) * b1 * c1;

  for (std::int64_t u = 1; u <= g0; ++u) {
    const ck::i128 s2 = 4 + disc * u * u;
    const std::int64_t s = ck::isqrt(s2);
    if (static_cast<ck::i128>(s) * s != s2) continue;
    const ck::i128 top = static_cast<ck::i128>(s) + static_cast<ck::i128>(u) * m;
    if (top % 2 != 0) continue;
    const ck::i128 bottom = static_cast<ck::i128>(s) - static_cast<ck::i128>(u) * m;
    const auto rho = GroupElement::normalize(ck::narrow(top / 2), ck::mul(u, b1), ck::mul(u, c1),
                                             ck::narrow(bottom / 2));
    const auto k = static_cast<std::int64_t>(std::llround(translation_length(phi) / translation_length(rho)));
    if (rho.pow(k) == phi) return rho;
    if (rho.inverse().pow(k) == phi) return rho.inverse();
    throw std::logic_error("primitive_root: centralizer generator does not divide " + phi.str());
  }
  // u = g0 always yields phi itself.
  throw std::logic_error("primitive_root: no centralizer generator found for " + phi.str());
}

PseudoAnosov::PseudoAnosov(const GroupElement& element)
    : element_(element),
      axis_(axis_of(element)),
      lambda_hyp_(translation_length(element)),
      primitive_(primitive_root(element)),
      power_(std::llround(lambda_hyp_ / translation_length(primitive_))) {}

namespace {

ConjugacyQuery build_query(const PseudoAnosov& phi, const Point& x, const Point& y,
                           std::optional<RationalPoint> y_exact, double R, Units units, double A, double L) {
  const auto hyp = [units](double v) { return convert(v, units, Units::Hyperbolic); };
  if (!(R >= 0)) throw DomainError("radius must be nonnegative");
  if (!(A > 0)) throw DomainError("contraction constant must be positive");
  ConjugacyQuery q{phi, x, y, std::move(y_exact), hyp(R), units, hyp(A), hyp(L), 0.0};
  const Point foot = q.axis_foot();
  q.D = std::max(distance(x, foot), distance(foot, y));
  return q;
}

ConjugacyBall finish_ball(std::vector<ConjugateEntry> hits, double R, double search_radius, bool certified) {
  std::sort(hits.begin(), hits.end(), [](const ConjugateEntry& l, const ConjugateEntry& r) {
    return l.psi < r.psi || (l.psi == r.psi && l.witness < r.witness);
  });
  hits.erase(std::unique(hits.begin(), hits.end(),
                         [](const ConjugateEntry& l, const ConjugateEntry& r) { return l.psi == r.psi; }),
             hits.end());
  ConjugacyBall ball{std::move(hits), 0, search_radius, certified};
  for (const auto& e : ball.entries) {
    if (std::abs(e.dist - R) <= kTolerance) ++ball.boundary_hits;
  }
  return ball;
}

// Distinct points psi.Y over entries within R, exact when Y is rational.
std::size_t distinct_images(const ConjugacyQuery& q, const std::vector<ConjugateEntry>& entries, double R) {
  if (q.y_exact) {
    std::set<RationalPoint> pts;
    for (const auto& e : entries) {
      if (e.dist <= R + kTolerance) pts.insert(q.y_exact->apply(e.psi));
    }
    return pts.size();
  }
  std::vector<Point> pts;
  for (const auto& e : entries) {
    if (e.dist <= R + kTolerance) pts.push_back(mobius_apply(e.psi, q.y));
  }
  return count_distinct_points(std::move(pts), kTolerance);
}

double on_axis_residual(const Point& x, const Geodesic& axis) { return dist_to_geodesic(x, axis); }

void require_on_axis(const PseudoAnosov& phi, const Point& x) {
  if (on_axis_residual(x, phi.axis()) > 1e-7) {
    throw DomainError("basepoint must lie on the axis of " + phi.element().str());
  }
}

}  // namespace

ConjugacyQuery make_query(const PseudoAnosov& phi, const Point& x, const Point& y, double R,
                          Units units, double A, double L) {
  return build_query(phi, x, y, std::nullopt, R, units, A, L);
}

ConjugacyQuery make_query(const PseudoAnosov& phi, const Point& x, const RationalPoint& y, double R,
                          Units units, double A, double L) {
  return build_query(phi, x, y.to_point(), y, R, units, A, L);
}

double certified_search_radius(const ConjugacyQuery& q) {
  return (q.radius + 2.0 * q.D + q.A) / 2.0 + q.phi.lambda_hyp();
}

double certified_naive_radius(const ConjugacyQuery& q) { return certified_search_radius(q) + 2.0 * q.D; }

ConjugacyBall conjugacy_ball(const ConjugacyQuery& q, unsigned threads) {
  const Point foot = q.axis_foot();
  const double rho = certified_search_radius(q);
  const GroupElement& phi = q.phi.element();
  std::vector<std::vector<ConjugateEntry>> parts(std::max(1u, threads));
  visit_displacement_ball(foot, foot, rho, threads, [&](unsigned w, const GroupElement& f, double) {
    const GroupElement psi = conjugate(f, phi);
    const double dist = distance(q.x, mobius_apply(psi, q.y));
    if (dist <= q.radius + kTolerance) parts[w].push_back({psi, f, dist});
  });
  std::vector<ConjugateEntry> hits;
  for (auto& p : parts) hits.insert(hits.end(), p.begin(), p.end());
  return finish_ball(std::move(hits), q.radius, rho, true);
}

ConjugacyBall conjugacy_ball_naive(const ConjugacyQuery& q, double search_radius) {
  const auto ball = omega_ball_bruteforce(q.x, search_radius);
  std::vector<ConjugateEntry> hits;
  for (const auto& f : ball.elements) {
    const GroupElement psi = conjugate(f, q.phi.element());
    const double dist = distance(q.x, mobius_apply(psi, q.y));
    if (dist <= q.radius + kTolerance) hits.push_back({psi, f, dist});
  }
  return finish_ball(std::move(hits), q.radius, search_radius,
                     search_radius >= certified_naive_radius(q) - 1e-12);
}

std::size_t gamma_count(const ConjugacyQuery& q, const ConjugacyBall& ball, double R_hyp) {
  return distinct_images(q, ball.entries, R_hyp);
}

ConjugacyCounts conjugacy_counts(const ConjugacyQuery& q, const std::vector<double>& radii, unsigned threads) {
  ConjugacyCounts out;
  out.gamma.units = q.units;
  out.elements.units = q.units;
  if (radii.empty()) return out;
  if (!std::is_sorted(radii.begin(), radii.end())) throw DomainError("radii must be ascending");
  ConjugacyQuery top = q;
  top.radius = convert(radii.back(), q.units, Units::Hyperbolic);
  const auto ball = conjugacy_ball(top, threads);
  out.boundary_hits = ball.boundary_hits;
  for (double radius : radii) {
    const double r = convert(radius, q.units, Units::Hyperbolic);
    const auto n_elem = std::count_if(ball.entries.begin(), ball.entries.end(),
                                      [r](const ConjugateEntry& e) { return e.dist <= r + kTolerance; });
    out.elements.points.push_back({radius, static_cast<std::int64_t>(n_elem)});
    out.gamma.points.push_back({radius, static_cast<std::int64_t>(distinct_images(q, ball.entries, r))});
  }
  return out;
}

GrowthSeries gamma_series(const ConjugacyQuery& q, const std::vector<double>& radii, unsigned threads) {
  return conjugacy_counts(q, radii, threads).gamma;
}

bool DShiftReport::ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const DShiftRow& r) { return r.holds(); });
}

DShiftReport d_shift_check(const PseudoAnosov& phi, const Point& x, const RationalPoint& y,
                           const std::vector<double>& radii, double A, unsigned threads) {
  DShiftReport rep{0.0, {}};
  if (radii.empty()) return rep;
  const double R_max = *std::max_element(radii.begin(), radii.end());
  const auto q = make_query(phi, x, y, R_max, Units::Hyperbolic, A);
  const double D = q.D;
  rep.D = D;
  const Point p = q.axis_foot();
  const auto main = conjugacy_ball(q, threads);
  const auto q_near = make_query(phi, x, p, R_max + D, Units::Hyperbolic, A);
  const auto near = conjugacy_ball(q_near, threads);
  const auto q_far = make_query(phi, p, p, R_max + 2.0 * D, Units::Hyperbolic, A);
  const auto far = conjugacy_ball(q_far, threads);
  for (double R : radii) {
    DShiftRow row{R};
    row.gamma = gamma_count(q, main, R);
    row.lower_near = R - D >= 0 ? gamma_count(q_near, near, R - D) : 0;
    row.upper_near = gamma_count(q_near, near, R + D);
    row.lower_far = R - 2.0 * D >= 0 ? gamma_count(q_far, far, R - 2.0 * D) : 0;
    row.upper_far = gamma_count(q_far, far, R + 2.0 * D);
    rep.rows.push_back(row);
  }
  return rep;
}

PSets p_sets(const PseudoAnosov& phi, const Point& x, double R, double A, unsigned threads) {
  require_on_axis(phi, x);
  const double lambda = phi.lambda_hyp();
  PSets out{{}, {}, (R + A - lambda) / 2.0, (R - 2.0 * A - lambda) / 2.0};
  if (out.plus_threshold < 0) return out;
  // d(X, psi X) = 2 asinh(cosh(delta) sinh(lambda/2)) with delta = d(X, axis psi).
  const double r_enum =
      2.0 * std::asinh(std::cosh(out.plus_threshold) * std::sinh(lambda / 2.0)) + 1e-7;
  const auto q = make_query(phi, x, x, r_enum, Units::Hyperbolic, A);
  const auto ball = conjugacy_ball(q, threads);
  for (const auto& e : ball.entries) {
    const double delta = dist_to_geodesic(x, axis_key(e.psi).geodesic());
    if (delta <= out.plus_threshold + kTolerance) out.plus.push_back(e);
    if (out.minus_threshold >= 0 && delta <= out.minus_threshold + kTolerance) out.minus.push_back(e);
  }
  return out;
}

InjectionResult injection_witness(const GroupElement& psi, const GroupElement& f, const PseudoAnosov& phi,
                                  const Point& x) {
  if (conjugate(f, phi.element()) != psi) throw DomainError("f does not conjugate phi to psi");
  require_on_axis(phi, x);
  const Geodesic axis = axis_of(psi);
  const Point target = project_to_geodesic(x, axis);
  const double s_target = axis_coordinate(target, axis);
  const Point fx = mobius_apply(f, x);
  const double s_f = axis_coordinate(fx, axis);
  const double shift = axis_coordinate(mobius_apply(psi, fx), axis) - s_f;
  const auto k0 = static_cast<std::int64_t>(std::llround((s_target - s_f) / shift));

  InjectionResult best{psi, f, 0, f, 0.0};
  bool have = false;
  for (std::int64_t k = k0 - 1; k <= k0 + 1; ++k) {
    const GroupElement g = psi.pow(k) * f;
    const double d = distance(mobius_apply(g, x), target);
    bool better = !have || d < best.dist_to_projection - kTolerance;
    if (have && std::abs(d - best.dist_to_projection) <= kTolerance) {
      better = std::abs(k) < std::abs(best.k) || (std::abs(k) == std::abs(best.k) && k < best.k);
    }
    if (better) {
      best = {psi, f, k, g, d};
      have = true;
    }
  }
  return best;
}

InclusionReport check_inclusions(const PseudoAnosov& phi, const Point& x, double R, double A, unsigned threads) {
  const auto p = p_sets(phi, x, R, A, threads);
  const auto ball = conjugacy_ball(make_query(phi, x, x, R, Units::Hyperbolic, A), threads);
  InclusionReport rep{R, p.minus.size(), ball.entries.size(), p.plus.size(), {}, {}};
  std::set<GroupElement> in_ball, in_plus;
  for (const auto& e : ball.entries) in_ball.insert(e.psi);
  for (const auto& e : p.plus) in_plus.insert(e.psi);
  for (const auto& e : p.minus) {
    if (!in_ball.contains(e.psi)) rep.minus_not_in_ball.push_back(e.psi);
  }
  for (const auto& e : ball.entries) {
    if (!in_plus.contains(e.psi)) rep.ball_not_in_plus.push_back(e.psi);
  }
  return rep;
}

InjectionReport check_injection(const PseudoAnosov& phi, const Point& x, double R, double A, unsigned threads) {
  const auto p = p_sets(phi, x, R, A, threads);
  InjectionReport rep;
  rep.R = R;
  rep.domain_size = p.plus.size();
  const double image_radius = (R + A) / 2.0;
  const double projection_bound = phi.lambda_hyp() / 2.0;
  std::map<GroupElement, GroupElement> image_of;
  for (const auto& e : p.plus) {
    const auto inj = injection_witness(e.psi, e.witness, phi, x);
    bool bad = false;
    if (distance(x, mobius_apply(inj.g, x)) > image_radius + kTolerance) {
      ++rep.image_radius_escapes;
      bad = true;
    }
    if (inj.dist_to_projection > projection_bound + kTolerance) {
      ++rep.projection_bound_violations;
      bad = true;
    }
    auto [it, inserted] = image_of.emplace(inj.g, e.psi);
    if (!inserted) {
      ++rep.collisions;
      bad = true;
    }
    if (bad) rep.witnesses.push_back(inj);
  }
  return rep;
}

BucketReport bucket_census(const PseudoAnosov& phi, const Point& x, double R, double A, double L,
                           unsigned threads) {
  require_on_axis(phi, x);
  const double lambda = phi.lambda_hyp();
  BucketReport rep{};
  rep.R = R;
  rep.A = A;
  rep.L = L;
  rep.lambda = lambda;
  rep.outer_radius = (R - 2.0 * A) / 2.0;
  rep.type_radius = (R - 2.0 * A - lambda) / 2.0;
  rep.inner_radius = rep.type_radius - L;
  if (!(L > 0 && rep.inner_radius > 0)) {
    throw DomainError("bucket width L must lie in (0, (R - 2A - lambda)/2)");
  }
  rep.bucket_bound = 2.0 * (L + A) / lambda + 2.0;
  rep.type_c_share_bound = 2.0 * (L + A) / lambda;

  // Axes of P-_R.
  std::set<AxisKey> a_r;
  for (const auto& e : p_sets(phi, x, R, A, threads).minus) a_r.insert(axis_key(e.psi));
  rep.axes_in_A_R = a_r.size();

  std::map<AxisKey, Bucket> buckets;
  const auto found = enumerate_displacement_ball(x, x, rep.outer_radius, threads);
  const double shrunk = rep.outer_radius - L;
  for (const auto& e : found) {
    const AxisKey key = axis_key(conjugate(e.g, phi.element()));
    auto [it, inserted] = buckets.try_emplace(key);
    Bucket& b = it->second;
    if (inserted) {
      b.axis = key;
      b.axis_dist = dist_to_geodesic(x, key.geodesic());
      b.in_A_R_L = a_r.contains(key) && b.axis_dist > rep.inner_radius;
    }
    ++b.size;
    if (shrunk >= 0 && e.dist <= shrunk + kTolerance) ++rep.omega_inner_outer;
    if (e.dist > rep.type_radius + kTolerance) continue;
    ++rep.omega_type;
    // The axis of f phi f^-1 passes through f.X, so it enters the closed
    // inner ball iff its distance to X is at most the inner radius.
    const bool never_enters = b.axis_dist > rep.inner_radius;
    const bool is_a = never_enters;
    const bool is_b = !never_enters && e.dist <= rep.inner_radius + kTolerance;
    const bool is_c = !never_enters && e.dist > rep.inner_radius + kTolerance;
    if (int{is_a} + int{is_b} + int{is_c} != 1) ++rep.partition_failures;
    if (is_a) {
      ++b.type_a;
      ++rep.type_a;
      if (!b.in_A_R_L) ++rep.type_a_outside_A_R_L;
    }
    if (is_b) ++b.type_b, ++rep.type_b;
    if (is_c) ++b.type_c, ++rep.type_c;
  }

  for (const auto& key : a_r) {
    if (!buckets.contains(key)) ++rep.uncovered_axes;
  }
  rep.sum_H = 0;
  for (auto& [key, b] : buckets) {
    if (b.in_A_R_L) {
      ++rep.axes_in_A_R_L;
      rep.sum_H += static_cast<double>(b.size);
      rep.max_bucket = std::max(rep.max_bucket, b.size);
      if (static_cast<double>(b.size) > rep.bucket_bound + kTolerance) ++rep.bucket_bound_violations;
    }
    if (static_cast<double>(b.type_c) > rep.type_c_share_bound + kTolerance) ++rep.type_c_share_violations;
    rep.buckets.push_back(b);
  }
  rep.sum_H_lower = static_cast<double>(rep.omega_type) -
                    (1.0 + 2.0 * (L + A) / lambda) * static_cast<double>(rep.omega_inner_outer);
  rep.sum_inequality_holds = rep.sum_H >= rep.sum_H_lower;
  rep.axes_lower = lambda / (2.0 * (L + A + lambda)) * rep.sum_H;
  rep.axes_inequality_holds = static_cast<double>(rep.axes_in_A_R_L) >= rep.axes_lower;
  return rep;
}

ThicknessReport thickness_diagnostic(const GroupElement& phi) {
  if (phi.classify() != ElementClass::Hyperbolic) {
    throw DomainError("thickness_diagnostic needs a hyperbolic element");
  }
  // Attracting fixed point (P + sqrt(D)) / Q.
  const std::int64_t t = phi.trace();
  std::int64_t D = ck::sub(ck::mul(t, t), 4);
  std::int64_t P = ck::sub(phi.a(), phi.d());
  std::int64_t Q = ck::mul(2, phi.c());
  if (t < 0) {
    P = ck::neg(P);
    Q = ck::neg(Q);
  }
  if (ck::sub(D, ck::mul(P, P)) % Q != 0) {
    const std::int64_t aq = Q < 0 ? -Q : Q;
    P = ck::mul(P, aq);
    D = ck::mul(D, ck::mul(Q, Q));
    Q = ck::mul(Q, aq);
  }
  const std::int64_t s = ck::isqrt(D);

  ThicknessReport rep{{}, {}, 0};
  std::vector<std::int64_t> terms;
  std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> seen;
  while (true) {
    auto [it, inserted] = seen.emplace(std::make_pair(P, Q), terms.size());
    if (!inserted) {
      rep.preperiod.assign(terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(it->second));
      rep.period.assign(terms.begin() + static_cast<std::ptrdiff_t>(it->second), terms.end());
      break;
    }
    const std::int64_t q_abs = Q < 0 ? -Q : Q;
    const std::int64_t fl = ck::floor_div(ck::add(P, s), q_abs);
    const std::int64_t an = Q > 0 ? fl : -(fl + 1);
    terms.push_back(an);
    P = ck::sub(ck::mul(an, Q), P);
    Q = ck::sub(D, ck::mul(P, P)) / Q;
  }
  for (auto a : rep.period) rep.max_quotient = std::max(rep.max_quotient, a);
  return rep;
}

}  // namespace modgrowth
