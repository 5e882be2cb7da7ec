#include "modgrowth/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "modgrowth/error.hpp"

namespace modgrowth {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

RealMobius to_real(const GroupElement& g) {
  return {static_cast<double>(g.a()), static_cast<double>(g.b()), static_cast<double>(g.c()),
          static_cast<double>(g.d())};
}

void require_hyperbolic(const GroupElement& g, const char* what) {
  if (g.classify() != ElementClass::Hyperbolic) {
    throw DomainError(std::string(what) + ": " + g.str() + " is " + to_string(g.classify()) +
                      ", not hyperbolic");
  }
}

}  // namespace

std::string to_string(Units u) { return u == Units::Hyperbolic ? "hyp" : "teich"; }

Units parse_units(std::string_view s) {
  if (s == "hyp" || s == "hyperbolic") return Units::Hyperbolic;
  if (s == "teich" || s == "teichmuller") return Units::Teichmuller;
  throw DomainError("unknown units '" + std::string(s) + "'");
}

double convert(double value, Units from, Units to) {
  if (from == to) return value;
  return from == Units::Hyperbolic ? value / 2.0 : value * 2.0;
}

double growth_dimension(Units u) { return u == Units::Teichmuller ? 2.0 : 1.0; }

Point::Point(double x, double y) : x_(x), y_(y) {
  if (!std::isfinite(x) || !std::isfinite(y) || !(y > 0)) {
    std::ostringstream msg;
    msg << "point (" << x << ", " << y << ") is not in the upper half-plane";
    throw DomainError(msg.str());
  }
}

std::ostream& operator<<(std::ostream& os, const Point& p) {
  return os << p.x() << (p.y() < 0 ? "-" : "+") << p.y() << "i";
}

RationalPoint::RationalPoint(Rational x, Rational y) : x_(x), y_(y) {
  if (y_.num() <= 0) throw DomainError("rational point must have positive imaginary part");
}

RationalPoint RationalPoint::apply(const GroupElement& g) const {
  const Rational a(g.a()), b(g.b()), c(g.c()), d(g.d());
  const Rational y_sq = y_ * y_;
  const Rational cx_d = c * x_ + d;
  const Rational denom = cx_d * cx_d + c * c * y_sq;
  const Rational re = ((a * x_ + b) * cx_d + a * c * y_sq) / denom;
  return {re, y_ / denom};
}

std::string RationalPoint::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const RationalPoint& p) {
  return os << p.x() << "+" << p.y() << "*i";
}

Geodesic Geodesic::vertical(double x0) {
  if (!std::isfinite(x0)) throw DomainError("vertical geodesic needs a finite foot");
  return {Kind::Vertical, x0, 0.0};
}

Geodesic Geodesic::semicircle(double center, double radius) {
  if (!std::isfinite(center) || !std::isfinite(radius) || !(radius > 0)) {
    throw DomainError("semicircle geodesic needs a finite centre and positive radius");
  }
  return {Kind::Semicircle, center, radius};
}

Geodesic Geodesic::through(double u, double v) {
  const bool u_inf = std::isinf(u), v_inf = std::isinf(v);
  if ((u_inf && v_inf) || u == v) throw DomainError("geodesic endpoints must be distinct");
  if (u_inf) return vertical(v);
  if (v_inf) return vertical(u);
  return semicircle((u + v) / 2.0, std::abs(v - u) / 2.0);
}

std::array<double, 2> Geodesic::endpoints() const {
  if (kind_ == Kind::Vertical) return {centre_, kInf};
  return {centre_ - radius_, centre_ + radius_};
}

double Geodesic::residual(const Point& z) const {
  if (kind_ == Kind::Vertical) return std::abs(z.x() - centre_);
  return std::abs(std::hypot(z.x() - centre_, z.y()) - radius_);
}

std::ostream& operator<<(std::ostream& os, const Geodesic& g) {
  if (g.kind() == Geodesic::Kind::Vertical) return os << "Vertical(" << g.x0() << ")";
  return os << "Semicircle(center " << g.center() << ", radius " << g.radius() << ")";
}

Point RealMobius::apply(const Point& z) const {
  const double dr = c * z.x() + d;
  const double di = c * z.y();
  const double den = dr * dr + di * di;
  const double re = ((a * z.x() + b) * dr + a * c * z.y() * z.y()) / den;
  return {re, z.y() / den};
}

double RealMobius::apply_boundary(double x) const {
  if (std::isinf(x)) return c == 0 ? kInf : a / c;
  const double den = c * x + d;
  if (den == 0) return kInf;
  return (a * x + b) / den;
}

Point mobius_apply(const GroupElement& g, const Point& z) { return to_real(g).apply(z); }

Geodesic mobius_apply(const GroupElement& g, const Geodesic& L) {
  auto [u, v] = L.endpoints();
  const RealMobius m = to_real(g);
  return Geodesic::through(m.apply_boundary(u), m.apply_boundary(v));
}

double distance(const Point& z, const Point& w) {
  const double chord = std::hypot(z.x() - w.x(), z.y() - w.y());
  return 2.0 * std::asinh(chord / (2.0 * std::sqrt(z.y() * w.y())));
}

Geodesic axis_of(const GroupElement& g) {
  require_hyperbolic(g, "axis_of");
  const double t = static_cast<double>(g.trace());
  const double c = static_cast<double>(g.c());
  const double centre = static_cast<double>(g.a() - g.d()) / (2.0 * c);
  const double radius = std::sqrt(t * t - 4.0) / (2.0 * std::abs(c));
  return Geodesic::semicircle(centre, radius);
}

double translation_length(const GroupElement& g, Units units) {
  require_hyperbolic(g, "translation_length");
  const double t = std::abs(static_cast<double>(g.trace()));
  const double hyp = 2.0 * std::log((t + std::sqrt(t * t - 4.0)) / 2.0);
  return convert(hyp, Units::Hyperbolic, units);
}

RealMobius geodesic_frame(const Geodesic& L) {
  if (L.kind() == Geodesic::Kind::Vertical) return {1.0, L.x0(), 0.0, 1.0};
  auto [u, v] = L.endpoints();
  const double s = std::sqrt(v - u);
  return {v / s, u / s, 1.0 / s, 1.0 / s};
}

double dist_to_geodesic(const Point& z, const Geodesic& L) {
  const Point w = geodesic_frame(L).inverse().apply(z);
  return std::asinh(std::abs(w.x()) / w.y());
}

Point project_to_geodesic(const Point& z, const Geodesic& L) {
  const RealMobius frame = geodesic_frame(L);
  const Point w = frame.inverse().apply(z);
  return frame.apply(Point(0.0, std::hypot(w.x(), w.y())));
}

double axis_coordinate(const Point& z, const Geodesic& L) {
  const Point w = geodesic_frame(L).inverse().apply(z);
  return std::log(std::hypot(w.x(), w.y()));
}

Point point_off_geodesic(const Geodesic& L, double t, double offset) {
  const double r = std::exp(t);
  return geodesic_frame(L).apply(Point(r * std::tanh(offset), r / std::cosh(offset)));
}

double projection_span(std::span<const Point> points, const Geodesic& L) {
  if (points.empty()) throw DomainError("projection_span of an empty set");
  double lo = kInf, hi = -kInf;
  for (const auto& p : points) {
    const double t = axis_coordinate(p, L);
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  return hi - lo;
}

double ball_shadow_length(double centre_distance, double radius) {
  return 2.0 * std::asinh(std::sinh(radius) / std::cosh(centre_distance));
}

}  // namespace modgrowth
