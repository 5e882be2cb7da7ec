#include "modgrowth/growth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "modgrowth/error.hpp"
#include "modgrowth/group.hpp"
#include "modgrowth/parallel.hpp"
#include "modgrowth/random.hpp"

namespace modgrowth {

void GrowthSeries::validate() const {
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (points[j].count < 0) throw DomainError("growth series has a negative count");
    if (j > 0) {
      if (!(points[j].radius > points[j - 1].radius)) throw DomainError("growth series radii must ascend");
      if (points[j].count < points[j - 1].count) throw DomainError("growth series counts must not decrease");
    }
  }
}

GrowthSeries GrowthSeries::in_units(Units target) const {
  GrowthSeries out{points, target};
  for (auto& p : out.points) p.radius = convert(p.radius, units, target);
  return out;
}

FitResult fit_exponent(const GrowthSeries& s, FitWindow window) {
  std::vector<std::pair<double, double>> xy;
  for (const auto& p : s.points) {
    if (p.count > 0 && p.radius >= window.lo && p.radius <= window.hi) {
      xy.emplace_back(p.radius, std::log(static_cast<double>(p.count)));
    }
  }
  if (xy.size() < 3) throw DomainError("fit_exponent needs at least three positive counts in the window");
  const auto n = static_cast<double>(xy.size());
  double mx = 0, my = 0;
  for (auto [x, y] : xy) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (auto [x, y] : xy) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0) throw DomainError("fit_exponent needs at least two distinct radii");
  FitResult fit{sxy / sxx, 0.0, window, 0.0, xy.size()};
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (auto [x, y] : xy) {
    const double e = y - (fit.intercept + fit.slope * x);
    ss += e * e;
  }
  fit.residual_rms = std::sqrt(ss / n);
  return fit;
}

RunningExponent running_exponent(const GrowthSeries& s) {
  RunningExponent out;
  for (const auto& p : s.points) {
    if (p.count <= 0 || p.radius == 0) {
      ++out.skipped;
      continue;
    }
    out.values.emplace_back(p.radius, std::log(static_cast<double>(p.count)) / p.radius);
  }
  return out;
}

bool bucket_width_admissible(double L, double lambda, double A, double N, double h) {
  return std::exp(h * L) > 2.0 * std::exp(h * lambda / 2.0) * N * (1.0 + 2.0 * (L + A) / lambda);
}

double choose_L(double lambda, double A, double N, double h) {
  if (!(lambda > 0 && A > 0 && N > 0 && h > 0)) throw DomainError("choose_L inputs must be positive");
  // The left side grows exponentially in L, the right side linearly.
  for (int k = 1; k < 100'000'000; ++k) {
    const double L = k / 100.0;
    if (bucket_width_admissible(L, lambda, A, N, h)) return L;
  }
  throw std::runtime_error("choose_L: no admissible L found");
}

double GrowthConstants::G() const { return std::max(1.0 / G_L, G_U); }

GrowthConstants evaluate_constants(double lambda, double A, double L, double N, double h) {
  if (!(lambda > 0 && A > 0 && L > 0 && N > 0 && h > 0)) {
    throw DomainError("growth constants need positive inputs");
  }
  GrowthConstants k{h, N, A, lambda, L, 0.0, 0.0};
  k.G_L = lambda / (2.0 * N * (L + A + lambda) * std::exp(h * A)) /
          (2.0 * std::exp(h * (lambda / 2.0 + A)));
  k.G_U = N * std::exp(h * A / 2.0);
  return k;
}

SandwichReport coarse_sandwich_check(const GrowthSeries& s, double G, double h, double delta,
                                     double R_min) {
  if (!(delta > 1)) throw DomainError("coarse sandwich needs delta > 1");
  SandwichReport rep{true, std::nullopt, std::nullopt, G, h, delta, R_min, {}};
  std::vector<bool> inside_all;
  for (const auto& p : s.points) {
    const double scale = std::exp(h / 2.0 * p.radius);
    const double lower = scale / (delta * G);
    const double upper = delta * G * scale;
    const auto c = static_cast<double>(p.count);
    const bool inside = lower <= c && c <= upper;
    inside_all.push_back(inside);
    if (p.radius < R_min) continue;
    rep.rows.push_back({p.radius, p.count, lower, upper, inside});
    if (!inside && rep.pass) {
      rep.pass = false;
      rep.first_violation = p.radius;
    }
  }
  for (std::size_t j = inside_all.size(); j-- > 0;) {
    if (!inside_all[j]) break;
    rep.empirical_threshold = s.points[j].radius;
  }
  return rep;
}

namespace {

using detail::unit_uniform;

struct ContractionSample {
  GroupElement psi;
  Geodesic axis;
  Point x;
  double lambda;
  double axis_dist;
  double displacement;
};

constexpr std::int64_t kSampleNormBound = 10'000;
constexpr double kMaxAxisDistance = 10.0;

const std::vector<GroupElement>& hyperbolic_pool() {
  static const std::vector<GroupElement> pool = [] {
    std::vector<GroupElement> out;
    for (const auto& g : enumerate_norm_ball(kSampleNormBound)) {
      if (g.classify() == ElementClass::Hyperbolic) out.push_back(g);
    }
    return out;
  }();
  return pool;
}

std::vector<ContractionSample> draw_samples(std::size_t samples, std::uint64_t seed, unsigned threads) {
  const auto& pool = hyperbolic_pool();
  std::vector<std::vector<ContractionSample>> parts(std::max(1u, threads));
  detail::parallel_chunks(samples, threads, [&](unsigned w, std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      auto rng = detail::sample_rng(seed, j);
      const auto& psi = pool[static_cast<std::size_t>(unit_uniform(rng) * static_cast<double>(pool.size()))];
      const Geodesic axis = axis_of(psi);
      const double t = -3.0 + 6.0 * unit_uniform(rng);
      double offset = kMaxAxisDistance * unit_uniform(rng);
      if (unit_uniform(rng) < 0.5) offset = -offset;
      const Point x = point_off_geodesic(axis, t, offset);
      parts[w].push_back({psi, axis, x, translation_length(psi), dist_to_geodesic(x, axis),
                          distance(x, mobius_apply(psi, x))});
    }
  });
  std::vector<ContractionSample> all;
  all.reserve(samples);
  for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  return all;
}

// Projection of the boundary circle of B_radius(x) onto L, measured by
// maximizing and minimizing the arc-length coordinate over the circle.
double measured_shadow(const Point& x, double radius, const Geodesic& L) {
  const double cy = x.y() * std::cosh(radius);
  const double rr = x.y() * std::sinh(radius);
  auto coord = [&](double theta) {
    return axis_coordinate(Point(x.x() + rr * std::cos(theta), cy + rr * std::sin(theta)), L);
  };
  constexpr int kGrid = 256;
  const double step = 2.0 * std::numbers::pi / kGrid;
  int best_hi = 0, best_lo = 0;
  double hi = coord(0.0), lo = hi;
  for (int j = 1; j < kGrid; ++j) {
    const double v = coord(j * step);
    if (v > hi) hi = v, best_hi = j;
    if (v < lo) lo = v, best_lo = j;
  }
  auto refine = [&](int j, double sign) {
    double a = (j - 1) * step, b = (j + 1) * step;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 80; ++it) {
      const double m1 = b - inv_phi * (b - a);
      const double m2 = a + inv_phi * (b - a);
      if (sign * coord(m1) > sign * coord(m2)) b = m2;
      else a = m1;
    }
    return coord((a + b) / 2.0);
  };
  hi = std::max(hi, refine(best_hi, 1.0));
  lo = std::min(lo, refine(best_lo, -1.0));
  return hi - lo;
}

}  // namespace

CalibrationResult calibrate_A(std::size_t samples, std::uint64_t seed, unsigned threads) {
  if (samples < 1000) throw DomainError("calibrate_A needs at least 1000 samples");
  const auto drawn = draw_samples(samples, seed, threads);

  for (int k = 1; k <= 400; ++k) {
    const double A = k / 20.0;
    bool ok = true;
    CalibrationResult res{A, convert(A, Units::Hyperbolic, Units::Teichmuller), samples, seed, 0.0, 0.0, 0.0,
                          1e300};
    for (const auto& s : drawn) {
      res.min_lambda = std::min(res.min_lambda, s.lambda);
      if (s.axis_dist > A) {
        const double shadow = ball_shadow_length(s.axis_dist, s.axis_dist - A);
        res.max_shadow_ratio = std::max(res.max_shadow_ratio, shadow / A);
        if (shadow > A + kTolerance) ok = false;
      }
      if (s.lambda > A) {
        const double deficit = 2.0 * s.axis_dist + s.lambda - s.displacement;
        const double excess = (s.displacement - 2.0 * s.axis_dist - s.lambda) / 2.0;
        res.max_lower_deficit = std::max(res.max_lower_deficit, deficit);
        res.max_upper_excess = std::max(res.max_upper_excess, excess);
        if (deficit > A + kTolerance || excess > A + kTolerance) ok = false;
      }
      if (!ok) break;
    }
    if (ok) return res;
  }
  throw std::runtime_error("calibrate_A: no A <= 20 satisfies the contraction statements");
}

ContractionValidation validate_A(double A_hyp, std::size_t samples, std::uint64_t seed, unsigned threads) {
  const auto drawn = draw_samples(samples, seed, threads);
  ContractionValidation v{A_hyp, samples};
  for (const auto& s : drawn) {
    if (s.axis_dist > A_hyp) {
      ++v.shadow_checked;
      const double shadow = measured_shadow(s.x, s.axis_dist - A_hyp, s.axis);
      v.max_shadow = std::max(v.max_shadow, shadow);
      if (shadow > A_hyp + kTolerance) ++v.shadow_violations;
    }
    if (s.lambda > A_hyp) {
      ++v.lower_checked;
      if (2.0 * s.axis_dist + s.lambda - A_hyp > s.displacement + kTolerance) ++v.lower_violations;
      if (s.displacement > 2.0 * s.axis_dist + s.lambda + 2.0 * A_hyp + kTolerance) ++v.upper_violations;
    }
  }
  return v;
}

}  // namespace modgrowth
