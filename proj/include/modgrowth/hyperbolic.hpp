#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "modgrowth/group.hpp"
#include "modgrowth/rational.hpp"

namespace modgrowth {

/// Absolute tolerance applied to every floating threshold comparison.
inline constexpr double kTolerance = 1e-9;

/// Distance conventions. Everything internal is in curvature -1
/// (Hyperbolic) units; Teichmuller distances on the punctured torus are
/// exactly half of those.
enum class Units { Hyperbolic, Teichmuller };

std::string to_string(Units u);
/// Accepts "hyp"/"hyperbolic" and "teich"/"teichmuller".
Units parse_units(std::string_view s);
double convert(double value, Units from, Units to);

/// Dimension of Teichmuller space of the punctured torus, expressed as the
/// orbit growth exponent in the given units (2 in Teichmuller, 1 in hyp).
double growth_dimension(Units u);

/// A point of the upper half-plane.
class Point {
 public:
  /// Throws DomainError unless y > 0 and both coordinates are finite.
  Point(double x, double y);

  double x() const { return x_; }
  double y() const { return y_; }

 private:
  double x_;
  double y_;
};

std::ostream& operator<<(std::ostream& os, const Point& p);

/// A point with exact rational coordinates, used wherever orbit points have
/// to be deduplicated exactly.
class RationalPoint {
 public:
  RationalPoint(Rational x, Rational y);

  const Rational& x() const { return x_; }
  const Rational& y() const { return y_; }
  Point to_point() const { return {x_.to_double(), y_.to_double()}; }

  /// Exact image g.z = (az + b)/(cz + d).
  RationalPoint apply(const GroupElement& g) const;

  friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
  friend auto operator<=>(const RationalPoint& p, const RationalPoint& q) {
    if (auto c = p.x_ <=> q.x_; c != 0) return c;
    return p.y_ <=> q.y_;
  }

  std::string str() const;

 private:
  Rational x_;
  Rational y_;
};

std::ostream& operator<<(std::ostream& os, const RationalPoint& p);

/// A complete geodesic of the upper half-plane in canonical form: either the
/// vertical line Re z = x0 or the semicircle |z - center| = radius.
class Geodesic {
 public:
  enum class Kind { Vertical, Semicircle };

  static Geodesic vertical(double x0);
  /// Throws DomainError unless radius > 0.
  static Geodesic semicircle(double center, double radius);
  /// Geodesic with the given boundary endpoints; either may be +-infinity.
  static Geodesic through(double u, double v);

  Kind kind() const { return kind_; }
  double x0() const { return centre_; }
  double center() const { return centre_; }
  double radius() const { return radius_; }
  /// Boundary endpoints, smaller first; +infinity for vertical lines.
  std::array<double, 2> endpoints() const;

  /// Canonical-form residual of z: |Re z - x0| or ||z - center| - radius|.
  double residual(const Point& z) const;

 private:
  Geodesic(Kind k, double centre, double radius) : kind_(k), centre_(centre), radius_(radius) {}

  Kind kind_;
  double centre_;
  double radius_;
};

std::ostream& operator<<(std::ostream& os, const Geodesic& g);

/// Real 2x2 matrix of determinant 1 acting by Mobius transformation.
struct RealMobius {
  double a = 1, b = 0, c = 0, d = 1;

  Point apply(const Point& z) const;
  /// Action on the boundary; +infinity stands for the point at infinity.
  double apply_boundary(double x) const;
  RealMobius inverse() const { return {d, -b, -c, a}; }
};

Point mobius_apply(const GroupElement& g, const Point& z);
Geodesic mobius_apply(const GroupElement& g, const Geodesic& L);

/// Hyperbolic distance, 2 asinh(|z - w| / (2 sqrt(Im z Im w))).
double distance(const Point& z, const Point& w);

/// Axis of a hyperbolic element: the geodesic joining the real roots of
/// c x^2 + (d - a) x - b. Throws DomainError for non-hyperbolic input.
Geodesic axis_of(const GroupElement& g);

/// 2 acosh(|tr|/2), in the requested units. Throws DomainError for
/// non-hyperbolic input.
double translation_length(const GroupElement& g, Units units = Units::Hyperbolic);

/// Arc-length frame of a geodesic: frame(L).apply(i e^t) runs along L with
/// unit speed, from the smaller endpoint towards the larger one.
RealMobius geodesic_frame(const Geodesic& L);

double dist_to_geodesic(const Point& z, const Geodesic& L);
/// Closest point of L to z.
Point project_to_geodesic(const Point& z, const Geodesic& L);
/// Signed arc-length coordinate of the projection of z onto L, in the frame
/// of geodesic_frame(L).
double axis_coordinate(const Point& z, const Geodesic& L);
/// The point at arc-length t along L, moved a distance `offset` off L along
/// the perpendicular (negative offsets go to the other side).
Point point_off_geodesic(const Geodesic& L, double t, double offset);

/// Diameter of the union of the projections of `points` onto L. Throws
/// DomainError for an empty input.
double projection_span(std::span<const Point> points, const Geodesic& L);

/// Length of the projection onto a geodesic of a closed ball of the given
/// radius whose centre lies at distance `centre_distance` > radius from it:
/// 2 asinh(sinh(radius) / cosh(centre_distance)).
double ball_shadow_length(double centre_distance, double radius);

}  // namespace modgrowth
