#include "modgrowth/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "modgrowth/checked.hpp"
#include "modgrowth/error.hpp"
#include "modgrowth/parallel.hpp"

namespace modgrowth {

namespace ck = checked;

namespace {

// Bound on |h_x^-1 g h_y|^2 that safely covers d(x, g.y) <= r + kTolerance.
double form_bound(double r) {
  const double m = 2.0 * std::cosh(r + kTolerance);
  if (!std::isfinite(m) || m > static_cast<double>(kMaxNormBound)) {
    throw OverflowError("radius " + std::to_string(r) + " exceeds the enumerable range");
  }
  return m * (1.0 + 1e-12) + 1e-9;
}

struct FormGeometry {
  double xx, yx, xy, yy;
};

void scan_bottom_row(const FormGeometry& geo, double bound, std::int64_t c, std::int64_t d,
                     const Point& x, const Point& y, double r, unsigned worker,
                     const DisplacementVisitor& visit) {
  const auto bez = ck::extended_gcd(d, c);  // x*d + y*c = 1
  const double a0 = static_cast<double>(bez.x);
  const double b0 = static_cast<double>(-bez.y);
  const double cd = static_cast<double>(c);
  const double dd = static_cast<double>(d);

  const double p = geo.yy / geo.yx;          // weight of (a - x_x c)^2
  const double q = 1.0 / (geo.yx * geo.yy);  // weight of the off-diagonal term
  const double w = cd * geo.xy + dd;
  const double bottom = cd * cd * geo.yx * geo.yy + w * w * geo.yx / geo.yy;
  const double u0 = a0 - geo.xx * cd;
  const double v0 = a0 * geo.xy + b0 - geo.xx * w;

  const double alpha = cd * cd * p + w * w * q;
  const double beta = u0 * cd * p + v0 * w * q;
  const double gamma = u0 * u0 * p + v0 * v0 * q + bottom;
  const double disc = beta * beta - alpha * (gamma - bound);
  const double centre = -beta / alpha;
  const double half = disc > 0 ? std::sqrt(disc) / alpha : 0.0;
  const auto k_lo = static_cast<std::int64_t>(std::floor(centre - half)) - 1;
  const auto k_hi = static_cast<std::int64_t>(std::ceil(centre + half)) + 1;

  for (std::int64_t k = k_lo; k <= k_hi; ++k) {
    const std::int64_t a = ck::add(bez.x, ck::mul(k, c));
    const std::int64_t b = ck::add(-bez.y, ck::mul(k, d));
    const auto g = GroupElement::normalize(a, b, c, d);
    const double dist = distance(x, mobius_apply(g, y));
    if (dist <= r + kTolerance) visit(worker, g, dist);
  }
}

std::size_t count_boundary(const std::vector<DisplacedElement>& v, double r) {
  return static_cast<std::size_t>(std::count_if(
      v.begin(), v.end(), [r](const DisplacedElement& e) { return std::abs(e.dist - r) <= kTolerance; }));
}

}  // namespace

void visit_displacement_ball(const Point& x, const Point& y, double r, unsigned threads,
                             const DisplacementVisitor& visit) {
  if (!(r >= 0)) throw DomainError("ball radius must be nonnegative");
  const double bound = form_bound(r);
  const FormGeometry geo{x.x(), x.y(), y.x(), y.y()};

  // c^2 y_x y_y <= bound on the bottom row.
  const auto c_max = static_cast<std::int64_t>(std::floor(std::sqrt(bound / (geo.yx * geo.yy)))) + 1;
  const auto n_rows = static_cast<std::size_t>(c_max + 1);

  detail::parallel_chunks(n_rows, threads, [&](unsigned worker, std::size_t begin, std::size_t end) {
    for (std::size_t ci = begin; ci < end; ++ci) {
      const auto c = static_cast<std::int64_t>(ci);
      if (c == 0) {
        scan_bottom_row(geo, bound, 0, 1, x, y, r, worker, visit);
        continue;
      }
      const double cd = static_cast<double>(c);
      const double rem = bound - cd * cd * geo.yx * geo.yy;
      if (rem < 0) continue;
      // (c x_y + d)^2 y_x / y_y <= rem.
      const double half = std::sqrt(rem * geo.yy / geo.yx);
      const auto d_lo = static_cast<std::int64_t>(std::floor(-cd * geo.xy - half)) - 1;
      const auto d_hi = static_cast<std::int64_t>(std::ceil(-cd * geo.xy + half)) + 1;
      for (std::int64_t d = d_lo; d <= d_hi; ++d) {
        if (ck::gcd(c, d) != 1) continue;
        scan_bottom_row(geo, bound, c, d, x, y, r, worker, visit);
      }
    }
  });
}

std::vector<DisplacedElement> enumerate_displacement_ball(const Point& x, const Point& y,
                                                          double r, unsigned threads) {
  std::vector<std::vector<DisplacedElement>> parts(std::max(1u, threads));
  visit_displacement_ball(x, y, r, threads, [&](unsigned worker, const GroupElement& g, double dist) {
    parts[worker].push_back({g, dist});
  });
  std::vector<DisplacedElement> all;
  for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  std::sort(all.begin(), all.end(),
            [](const DisplacedElement& l, const DisplacedElement& rr) { return l.g < rr.g; });
  return all;
}

BallResult omega_ball(const Point& x, double r, unsigned threads) {
  auto found = enumerate_displacement_ball(x, x, r, threads);
  BallResult out;
  out.boundary_hits = count_boundary(found, r);
  out.elements.reserve(found.size());
  for (const auto& e : found) out.elements.push_back(e.g);
  return out;
}

BallResult omega_ball_bruteforce(const Point& x, double r) {
  if (!(r >= 0)) throw DomainError("ball radius must be nonnegative");
  const Point i(0.0, 1.0);
  // d(i, g i) <= d(i, x) + d(x, g x) + d(g x, g i).
  const double m = form_bound(r + 2.0 * distance(i, x));
  const auto candidates = enumerate_norm_ball(static_cast<std::int64_t>(std::floor(m)) + 1);
  BallResult out;
  for (const auto& g : candidates) {
    const double dist = distance(x, mobius_apply(g, x));
    if (dist <= r + kTolerance) {
      out.elements.push_back(g);
      if (std::abs(dist - r) <= kTolerance) ++out.boundary_hits;
    }
  }
  return out;
}

OrbitCount orbit_point_count(const Point& x, const RationalPoint& y, double r, unsigned threads) {
  const auto found = enumerate_displacement_ball(x, y.to_point(), r, threads);
  std::set<RationalPoint> images;
  for (const auto& e : found) images.insert(y.apply(e.g));
  return {images.size(), count_boundary(found, r)};
}

std::size_t count_distinct_points(std::vector<Point> points, double tolerance) {
  std::sort(points.begin(), points.end(),
            [](const Point& p, const Point& q) { return p.x() < q.x() || (p.x() == q.x() && p.y() < q.y()); });
  std::multimap<double, Point> kept;
  for (const auto& p : points) {
    // d(p, q) <= tol forces |p.x - q.x| <= 2 sinh(tol/2) sqrt(p.y q.y) and
    // q.y <= e^tol p.y.
    const double window = 2.0 * std::sinh(tolerance / 2.0) * p.y() * std::exp(tolerance / 2.0) + 1e-300;
    bool duplicate = false;
    for (auto it = kept.lower_bound(p.x() - window); it != kept.end() && it->first <= p.x() + window;
         ++it) {
      if (distance(p, it->second) <= tolerance) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) kept.emplace(p.x(), p);
  }
  return kept.size();
}

OrbitCount orbit_point_count(const Point& x, const Point& y, double r, double dedup_tolerance,
                             unsigned threads) {
  if (!(dedup_tolerance > 0)) throw DomainError("dedup tolerance must be positive");
  const auto found = enumerate_displacement_ball(x, y, r, threads);
  std::vector<Point> images;
  images.reserve(found.size());
  for (const auto& e : found) images.push_back(mobius_apply(e.g, y));
  return {count_distinct_points(std::move(images), dedup_tolerance), count_boundary(found, r)};
}

std::vector<GroupElement> stabilizer_of(const Point& x) { return omega_ball(x, 0.0).elements; }

std::vector<Point> orbifold_points() {
  return {Point(0.0, 1.0), Point(0.5, std::numbers::sqrt3 / 2.0)};
}

std::size_t max_stabilizer_order() {
  std::size_t best = 1;
  for (const auto& p : orbifold_points()) best = std::max(best, stabilizer_of(p).size());
  return best;
}

std::vector<CountRecord> census(const RationalPoint& x, const std::vector<double>& radii,
                                Units units, unsigned threads) {
  if (radii.empty()) return {};
  if (!std::is_sorted(radii.begin(), radii.end())) throw DomainError("census radii must be ascending");
  const Point xp = x.to_point();
  const double r_max = convert(radii.back(), units, Units::Hyperbolic);
  const auto found = enumerate_displacement_ball(xp, xp, r_max, threads);

  // Distance of every distinct image point (the same for all elements
  // mapping x there, up to rounding).
  std::map<RationalPoint, double> images;
  for (const auto& e : found) {
    auto [it, inserted] = images.emplace(x.apply(e.g), e.dist);
    if (!inserted) it->second = std::min(it->second, e.dist);
  }

  std::vector<CountRecord> out;
  out.reserve(radii.size());
  for (double radius : radii) {
    const double r = convert(radius, units, Units::Hyperbolic);
    CountRecord rec{radius, units, 0, 0, 0.0, 0.0, 0.0, 0};
    std::size_t hyp = 0, par = 0, ell = 0;
    for (const auto& e : found) {
      if (e.dist > r + kTolerance) continue;
      ++rec.omega_count;
      if (std::abs(e.dist - r) <= kTolerance) ++rec.boundary_hits;
      switch (e.g.classify()) {
        case ElementClass::Hyperbolic: ++hyp; break;
        case ElementClass::Parabolic: ++par; break;
        case ElementClass::Elliptic: ++ell; break;
      }
    }
    for (const auto& [pt, dist] : images) {
      if (dist <= r + kTolerance) ++rec.orbit_count;
    }
    if (rec.omega_count > 0) {
      const auto n = static_cast<double>(rec.omega_count);
      rec.frac_hyperbolic = static_cast<double>(hyp) / n;
      rec.frac_parabolic = static_cast<double>(par) / n;
      rec.frac_elliptic = static_cast<double>(ell) / n;
    }
    out.push_back(rec);
  }
  return out;
}

}  // namespace modgrowth
