#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "modgrowth/group.hpp"
#include "modgrowth/hyperbolic.hpp"

namespace modgrowth {

/// Closed ball B_r(center).
struct BallSpec {
  Point center;
  double radius;
  Units units = Units::Hyperbolic;

  double radius_hyp() const { return convert(radius, units, Units::Hyperbolic); }
};

/// A group element together with the distance d(X, g.Y) it realizes.
struct DisplacedElement {
  GroupElement g;
  double dist;
};

/// Elements of a ball, in canonical (a,b,c,d) order. `boundary_hits`
/// counts members whose distance is within kTolerance of the radius.
struct BallResult {
  std::vector<GroupElement> elements;
  std::size_t boundary_hits = 0;
};

/// All g with d(x, g.y) <= r (+ kTolerance), sorted by g.
///
/// Uses 2 cosh d(x, g.y) = |h_x^-1 g h_y|^2 with h_z the affine map sending
/// i to z: the bottom row (c, d) ranges over an ellipse, and for each
/// coprime bottom row the top rows form a one-parameter family whose
/// admissible range is the solution interval of a quadratic.
std::vector<DisplacedElement> enumerate_displacement_ball(const Point& x, const Point& y,
                                                          double r, unsigned threads = 1);

/// Called once per g with d(x, g.y) <= r (+ kTolerance); `worker` is the
/// index of the calling thread.
using DisplacementVisitor = std::function<void(unsigned worker, const GroupElement& g, double dist)>;

/// Streaming form of enumerate_displacement_ball. Visit order is
/// unspecified and the visitor runs concurrently when threads > 1.
void visit_displacement_ball(const Point& x, const Point& y, double r, unsigned threads,
                             const DisplacementVisitor& visit);

/// Omega_r(x) = {g : d(x, g.x) <= r}, r in hyperbolic units.
BallResult omega_ball(const Point& x, double r, unsigned threads = 1);

/// Same set as omega_ball, computed by filtering the integer norm ball of
/// radius 2 cosh(r + 2 d(i, x)). Independent reference path.
BallResult omega_ball_bruteforce(const Point& x, double r);

struct OrbitCount {
  std::size_t count = 0;
  std::size_t boundary_hits = 0;
};

/// Number of distinct points g.y with d(x, g.y) <= r. Images are computed
/// as exact rationals, so deduplication is exact.
OrbitCount orbit_point_count(const Point& x, const RationalPoint& y, double r,
                             unsigned threads = 1);

/// Variant for irrational y: images closer than `dedup_tolerance`
/// (hyperbolic distance) are merged. Opt-in only.
OrbitCount orbit_point_count(const Point& x, const Point& y, double r, double dedup_tolerance,
                             unsigned threads = 1);

/// Number of distinct points among `points`, merging points within
/// hyperbolic distance `tolerance` of an already kept point.
std::size_t count_distinct_points(std::vector<Point> points, double tolerance);

/// {g : d(x, g.x) <= kTolerance}, sorted.
std::vector<GroupElement> stabilizer_of(const Point& x);

/// The two cone points of the modular surface, i and e^{i pi/3}.
std::vector<Point> orbifold_points();

/// Largest point-stabilizer order, found by scanning the orbifold points.
std::size_t max_stabilizer_order();

/// One row of an orbit census.
struct CountRecord {
  double radius;  // in `units`
  Units units;
  std::size_t omega_count;
  std::size_t orbit_count;
  double frac_hyperbolic;
  double frac_parabolic;
  double frac_elliptic;
  std::size_t boundary_hits;
};

/// Per-radius |Omega_r(x)|, |Mod.x cap B_r(x)| and the class shares of
/// Omega_r(x). Radii must be ascending and are read in `units`.
std::vector<CountRecord> census(const RationalPoint& x, const std::vector<double>& radii,
                                Units units = Units::Hyperbolic, unsigned threads = 1);

}  // namespace modgrowth
