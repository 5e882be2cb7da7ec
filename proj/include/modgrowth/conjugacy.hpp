#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modgrowth/group.hpp"
#include "modgrowth/growth.hpp"
#include "modgrowth/hyperbolic.hpp"

namespace modgrowth {

/// Exact name of the axis of a hyperbolic element: the fixed-point
/// quadratic c x^2 + (d - a) x - b divided by the gcd of its coefficients,
/// leading coefficient positive. Two elements share an axis iff their keys
/// are equal.
struct AxisKey {
  std::int64_t a;
  std::int64_t b;
  std::int64_t c;

  /// b^2 - 4ac.
  std::int64_t discriminant() const;
  Geodesic geodesic() const;
  std::string str() const;

  friend auto operator<=>(const AxisKey&, const AxisKey&) = default;
  friend bool operator==(const AxisKey&, const AxisKey&) = default;
};

/// Throws DomainError for non-hyperbolic input.
AxisKey axis_key(const GroupElement& psi);

/// Generator rho of the centralizer of a hyperbolic phi, oriented so that
/// phi = rho^k with k >= 1. Throws DomainError for non-hyperbolic input.
///
/// Centralizer elements are ((s + u m)/2, u b'; u c', (s - u m)/2) where
/// (c', m, -b') is phi's reduced fixed-point form and s^2 - disc u^2 = 4;
/// the smallest u > 0 with a square s^2 gives the generator.
GroupElement primitive_root(const GroupElement& phi);

/// A hyperbolic element with its axis, translation length and primitive
/// root cached.
class PseudoAnosov {
 public:
  /// Throws DomainError unless `element` is hyperbolic.
  explicit PseudoAnosov(const GroupElement& element);

  const GroupElement& element() const { return element_; }
  const Geodesic& axis() const { return axis_; }
  double lambda_hyp() const { return lambda_hyp_; }
  double lambda(Units u) const { return convert(lambda_hyp_, Units::Hyperbolic, u); }
  const GroupElement& primitive() const { return primitive_; }
  /// k >= 1 with element = primitive^k.
  std::int64_t power() const { return power_; }

 private:
  GroupElement element_;
  Geodesic axis_;
  double lambda_hyp_;
  GroupElement primitive_;
  std::int64_t power_;
};

/// Everything needed to count Gamma_R(X, Y, phi) = |[phi].Y cap B_R(X)|.
/// Lengths are stored in hyperbolic units; `units` records how the caller
/// expressed them.
struct ConjugacyQuery {
  PseudoAnosov phi;
  Point x;
  Point y;
  std::optional<RationalPoint> y_exact;  // enables exact point deduplication
  double radius;  // R
  Units units;
  double A;  // contraction constant
  double L;  // bucket width
  double D;  // max(d(X, pi_phi(X)), d(pi_phi(X), Y))

  /// pi_phi(X), the closest point of axis(phi) to X.
  Point axis_foot() const { return project_to_geodesic(x, phi.axis()); }
};

/// Builds a query; R, A and L are read in `units`, D is computed.
ConjugacyQuery make_query(const PseudoAnosov& phi, const Point& x, const Point& y, double R,
                          Units units, double A, double L = 1.0);
ConjugacyQuery make_query(const PseudoAnosov& phi, const Point& x, const RationalPoint& y,
                          double R, Units units, double A, double L = 1.0);

/// One conjugate psi = f phi f^-1 together with a conjugator realizing it
/// and dist = d(X, psi.Y).
struct ConjugateEntry {
  GroupElement psi;
  GroupElement witness;
  double dist;
};

/// Distinct conjugates, sorted by psi. The witness is the smallest (in
/// canonical order) conjugator met during the search.
struct ConjugacyBall {
  std::vector<ConjugateEntry> entries;
  std::size_t boundary_hits = 0;
  double search_radius = 0;
  bool certified = false;
};

/// Conjugator radius around pi_phi(X) that provably reaches every psi with
/// d(X, psi.Y) <= R: (R + 2D + A)/2 + lambda.
double certified_search_radius(const ConjugacyQuery& q);
/// The same guarantee for conjugators centred at X: the above plus 2D.
double certified_naive_radius(const ConjugacyQuery& q);

/// {psi in [phi] : d(X, psi.Y) <= R}, found by conjugating phi with every g
/// of Omega at the certified radius around pi_phi(X).
ConjugacyBall conjugacy_ball(const ConjugacyQuery& q, unsigned threads = 1);

/// Reference search: conjugates phi by the brute-force Omega ball of the
/// given radius around X. `certified` is false when the radius is below
/// certified_naive_radius(q), in which case the result may be partial.
ConjugacyBall conjugacy_ball_naive(const ConjugacyQuery& q, double search_radius);

/// Number of distinct points psi.Y over entries with dist <= R (hyp).
std::size_t gamma_count(const ConjugacyQuery& q, const ConjugacyBall& ball, double R_hyp);

struct ConjugacyCounts {
  GrowthSeries gamma;     // Gamma_R(X, Y, phi), distinct points
  GrowthSeries elements;  // |{psi in [phi] : d(X, psi.Y) <= R}|
  std::size_t boundary_hits = 0;
};

/// Both counts at every radius (ascending, in q.units), from a single
/// search at the largest radius.
ConjugacyCounts conjugacy_counts(const ConjugacyQuery& q, const std::vector<double>& radii,
                                 unsigned threads = 1);

GrowthSeries gamma_series(const ConjugacyQuery& q, const std::vector<double>& radii,
                          unsigned threads = 1);

/// Basepoint-shift bounds relating Gamma_R(X, Y) to on-axis counts with
/// P = pi_phi(X):
///   |[phi].P cap B_{R-2D}(P)| <= |[phi].P cap B_{R-D}(X)| <= Gamma_R(X, Y)
///   Gamma_R(X, Y) <= |[phi].P cap B_{R+D}(X)| <= |[phi].P cap B_{R+2D}(P)|
struct DShiftRow {
  double R;  // hyperbolic
  std::size_t lower_far = 0;   // B_{R-2D}(P)
  std::size_t lower_near = 0;  // B_{R-D}(X)
  std::size_t gamma = 0;
  std::size_t upper_near = 0;  // B_{R+D}(X)
  std::size_t upper_far = 0;   // B_{R+2D}(P)
  bool holds() const {
    return lower_far <= lower_near && lower_near <= gamma && gamma <= upper_near && upper_near <= upper_far;
  }
};

struct DShiftReport {
  double D;
  std::vector<DShiftRow> rows;
  bool ok() const;
};

/// Radii in hyperbolic units. Points of the orbit of P are merged within
/// kTolerance, since P is irrational in general.
DShiftReport d_shift_check(const PseudoAnosov& phi, const Point& x, const RationalPoint& y,
                           const std::vector<double>& radii, double A, unsigned threads = 1);

/// P+_R and P-_R for X on axis(phi): conjugates whose axis passes within
/// (R + A - lambda)/2, respectively (R - 2A - lambda)/2, of X.
struct PSets {
  std::vector<ConjugateEntry> plus;
  std::vector<ConjugateEntry> minus;
  double plus_threshold;
  double minus_threshold;
};

/// All lengths hyperbolic. Throws DomainError when X is off the axis.
PSets p_sets(const PseudoAnosov& phi, const Point& x, double R, double A, unsigned threads = 1);

/// The injection psi -> psi^k f.
struct InjectionResult {
  GroupElement psi;
  GroupElement f;
  std::int64_t k;
  GroupElement g;                // psi^k f
  double dist_to_projection;     // d(g.X, pi_psi(X))
};

/// Picks the k minimizing d(psi^k f.X, pi_psi(X)) (ties: smaller |k|, then
/// smaller k). Throws DomainError if f phi f^-1 != psi or X is off
/// axis(phi).
InjectionResult injection_witness(const GroupElement& psi, const GroupElement& f,
                                  const PseudoAnosov& phi, const Point& x);

struct InclusionReport {
  double R;
  std::size_t minus_size = 0;
  std::size_t ball_size = 0;
  std::size_t plus_size = 0;
  std::vector<GroupElement> minus_not_in_ball;
  std::vector<GroupElement> ball_not_in_plus;
  bool ok() const { return minus_not_in_ball.empty() && ball_not_in_plus.empty(); }
};

/// Tests P-_R subset [phi] cap Omega(R) subset P+_R as finite sets.
InclusionReport check_inclusions(const PseudoAnosov& phi, const Point& x, double R, double A,
                                 unsigned threads = 1);

struct InjectionReport {
  double R;
  std::size_t domain_size = 0;   // |P+_R|
  std::size_t image_radius_escapes = 0;
  std::size_t projection_bound_violations = 0;
  std::size_t collisions = 0;
  std::vector<InjectionResult> witnesses;  // offending cases
  bool ok() const { return image_radius_escapes == 0 && projection_bound_violations == 0 && collisions == 0; }
};

/// Runs injection_witness over all of P+_R and checks the image lies in
/// Omega((R + A)/2) and no two conjugates share an image.
InjectionReport check_injection(const PseudoAnosov& phi, const Point& x, double R, double A,
                                unsigned threads = 1);

struct Bucket {
  AxisKey axis;
  std::size_t size = 0;       // |H(Theta)|
  double axis_dist = 0;       // d(X, Theta)
  bool in_A_R_L = false;      // Theta in A_R^L
  std::size_t type_a = 0;     // members of Omega((R-2A-lambda)/2) by type
  std::size_t type_b = 0;
  std::size_t type_c = 0;
};

/// Bucket decomposition behind the lower bound for |P-_R|.
struct BucketReport {
  double R, A, L, lambda;
  double outer_radius;  // (R - 2A)/2
  double type_radius;   // (R - 2A - lambda)/2
  double inner_radius;  // (R - 2A - lambda)/2 - L
  std::vector<Bucket> buckets;  // every axis met by Omega(outer_radius), sorted by key
  std::size_t axes_in_A_R = 0;
  std::size_t axes_in_A_R_L = 0;
  std::size_t omega_type = 0;   // |Omega(type_radius)|
  std::size_t omega_inner_outer = 0;  // |Omega(outer_radius - L)|
  std::size_t type_a = 0, type_b = 0, type_c = 0;
  std::size_t partition_failures = 0;     // f not of exactly one type
  std::size_t uncovered_axes = 0;         // Theta in A_R with empty H(Theta)
  std::size_t type_a_outside_A_R_L = 0;   // type (a) f whose axis is not in A_R^L
  double bucket_bound;                    // 2(L + A)/lambda + 2
  std::size_t bucket_bound_violations = 0;
  std::size_t max_bucket = 0;
  double type_c_share_bound;              // 2(L + A)/lambda
  std::size_t type_c_share_violations = 0;
  double sum_H;                           // sum of |H(Theta)| over A_R^L
  double sum_H_lower;                     // |Omega(type)| - (1 + 2(L+A)/lambda)|Omega(outer - L)|
  bool sum_inequality_holds = false;
  double axes_lower;                      // lambda/(2(L+A+lambda)) * sum_H
  bool axes_inequality_holds = false;
  bool ok() const {
    return partition_failures == 0 && uncovered_axes == 0 && type_a_outside_A_R_L == 0 &&
           bucket_bound_violations == 0 && type_c_share_violations == 0 && sum_inequality_holds &&
           axes_inequality_holds;
  }
};

/// Builds the buckets H(Theta) over conjugators in Omega((R - 2A)/2)(X) and
/// checks the bucket bound, the type (a)/(b)/(c) partition, and both
/// counting inequalities. All lengths hyperbolic. Throws DomainError when X
/// is off the axis or L is not in (0, (R - 2A - lambda)/2).
BucketReport bucket_census(const PseudoAnosov& phi, const Point& x, double R, double A, double L,
                           unsigned threads = 1);

/// Periodic continued fraction of the attracting fixed point of phi.
struct ThicknessReport {
  std::vector<std::int64_t> preperiod;
  std::vector<std::int64_t> period;
  std::int64_t max_quotient;  // over the period
  std::size_t period_length() const { return period.size(); }
};

/// Throws DomainError for non-hyperbolic input.
ThicknessReport thickness_diagnostic(const GroupElement& phi);

}  // namespace modgrowth
