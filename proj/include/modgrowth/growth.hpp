#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "modgrowth/hyperbolic.hpp"

namespace modgrowth {

struct SeriesPoint {
  double radius;
  std::int64_t count;
};

/// Radius -> count table, ascending in radius.
struct GrowthSeries {
  std::vector<SeriesPoint> points;
  Units units = Units::Hyperbolic;

  /// Throws DomainError unless radii ascend and counts are nonnegative and
  /// nondecreasing.
  void validate() const;
  GrowthSeries in_units(Units target) const;
};

struct FitWindow {
  double lo;
  double hi;
};

/// Least-squares line through (R, ln count).
struct FitResult {
  double slope;
  double intercept;
  FitWindow window;
  double residual_rms;
  std::size_t n_points;
};

/// Fits ln(count) against R over the points with lo <= R <= hi and
/// count > 0. Throws DomainError with fewer than three such points.
FitResult fit_exponent(const GrowthSeries& s, FitWindow window);

struct RunningExponent {
  std::vector<std::pair<double, double>> values;  // (R, ln(count)/R)
  std::size_t skipped = 0;                        // points with count 0 or R = 0
};

RunningExponent running_exponent(const GrowthSeries& s);

/// e^{hL} > 2 e^{h lambda/2} N (1 + 2(L + A)/lambda).
bool bucket_width_admissible(double L, double lambda, double A, double N, double h);

/// Smallest L on the 0.01 grid satisfying bucket_width_admissible. All
/// inputs must be positive (DomainError otherwise).
double choose_L(double lambda, double A, double N, double h);

/// The explicit constants of the conjugacy growth bounds, all in one unit
/// system (normally Teichmuller, h = 2).
struct GrowthConstants {
  double h;
  double N;
  double A;
  double lambda;
  double L;
  double G_L;  // lower constant: lambda / (2N(L+A+lambda) e^{hA}) / (2 e^{h(lambda/2+A)})
  double G_U;  // upper constant: N e^{hA/2}

  /// max(1/G_L, G_U), the two-sided coarse constant.
  double G() const;
};

GrowthConstants evaluate_constants(double lambda, double A, double L, double N, double h);

struct SandwichRow {
  double radius;
  std::int64_t count;
  double lower;  // e^{(h/2)R} / (delta G)
  double upper;  // delta G e^{(h/2)R}
  bool inside;
};

struct SandwichReport {
  bool pass = true;
  std::optional<double> first_violation;  // smallest checked R that fails
  /// Smallest series radius from which every later row is inside (the
  /// empirical counterpart of M(delta)); empty if the last row fails.
  std::optional<double> empirical_threshold;
  double G;
  double h;
  double delta;
  double R_min;
  std::vector<SandwichRow> rows;
};

/// Checks e^{(h/2)R}/(delta G) <= count <= delta G e^{(h/2)R} for every
/// series point with R >= R_min, reading R in the series' own units.
/// Throws DomainError unless delta > 1.
SandwichReport coarse_sandwich_check(const GrowthSeries& s, double G, double h, double delta,
                                     double R_min);

/// Result of fitting the contraction constant A to the model.
struct CalibrationResult {
  double A_hyp;
  double A_teich;
  std::size_t samples;
  std::uint64_t seed;
  double max_shadow_ratio;   // worst diam / A over shadow samples at the returned A
  double max_lower_deficit;  // worst 2 dist + lambda - d(X, psi X)
  double max_upper_excess;   // worst (d(X, psi X) - 2 dist - lambda) / 2
  double min_lambda;
};

struct ContractionValidation {
  double A_hyp;
  std::size_t samples;
  std::size_t shadow_checked = 0;
  std::size_t shadow_violations = 0;
  std::size_t lower_checked = 0;
  std::size_t lower_violations = 0;
  std::size_t upper_violations = 0;
  double max_shadow = 0;  // largest measured shadow diameter among checked samples
  bool ok() const { return shadow_violations == 0 && lower_violations == 0 && upper_violations == 0; }
};

/// Smallest A on the 0.05 grid (hyperbolic units) such that, over `samples`
/// random configurations (hyperbolic elements of norm^2 <= 10^4, conjugates,
/// points up to distance 10 from the axis):
///   - a ball N_{d - A}(X) with d = d(X, L) > A projects to a set of
///     diameter <= A, and
///   - for every conjugate psi with lambda > A,
///     2 d(X, axis psi) + lambda - A <= d(X, psi X) <= 2 d(X, axis psi) + lambda + 2A.
/// Deterministic in `seed`, whatever `threads` is. Throws DomainError for
/// fewer than 1000 samples.
CalibrationResult calibrate_A(std::size_t samples, std::uint64_t seed = 1, unsigned threads = 1);

/// Re-checks both statements at a given A on a sample drawn from `seed`,
/// measuring shadows by projecting the ball boundary numerically instead of
/// the closed form used during calibration.
ContractionValidation validate_A(double A_hyp, std::size_t samples, std::uint64_t seed,
                                 unsigned threads = 1);

}  // namespace modgrowth
