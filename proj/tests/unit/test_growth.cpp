#include <doctest.h>

#include <cmath>
#include <numbers>

#include "modgrowth/error.hpp"
#include "modgrowth/growth.hpp"
#include "modgrowth/hyperbolic.hpp"

using namespace modgrowth;

namespace {

GrowthSeries synthetic(double slope, double intercept, double lo, double hi, double step) {
  GrowthSeries s;
  for (double r = lo; r <= hi + 1e-12; r += step) {
    s.points.push_back({r, static_cast<std::int64_t>(std::llround(std::exp(intercept + slope * r)))});
  }
  return s;
}

bool admissible_oracle(double L, double lambda, double A, double N, double h) {
  return std::exp(h * L) > 2.0 * std::exp(h * lambda / 2.0) * N * (1.0 + 2.0 * (L + A) / lambda);
}

const double kGoldenTeich = std::log((3.0 + std::sqrt(5.0)) / 2.0);  // lambda of (2 1; 1 1), Teich units

}  // namespace

TEST_SUITE("growth") {
  TEST_CASE("fit recovers an exact exponential") {
    GrowthSeries s;
    for (int k = 0; k <= 20; ++k) {
      const double r = 0.5 * k;
      s.points.push_back({r, 0});
    }
    // Counts exactly e^{0.7 R + 1.3} are not integral, so fit on logs of
    // exactly representable powers of two instead.
    for (auto& p : s.points) p.count = std::int64_t{1} << static_cast<int>(2.0 * p.radius);
    const auto fit = fit_exponent(s, {0.0, 10.0});
    CHECK(fit.slope == doctest::Approx(2.0 * std::numbers::ln2).epsilon(1e-12));
    CHECK(std::abs(fit.intercept) < 1e-12);
    CHECK(fit.residual_rms < 1e-12);
    CHECK(fit.n_points == 21);
    const auto sub = fit_exponent(s, {3.0, 6.0});
    CHECK(sub.n_points == 7);
    CHECK(sub.slope == doctest::Approx(2.0 * std::numbers::ln2).epsilon(1e-12));
  }

  TEST_CASE("fit of rounded exponentials") {
    const auto s = synthetic(1.0, 2.0, 8.0, 14.0, 0.25);
    CHECK(fit_exponent(s, {8.0, 14.0}).slope == doctest::Approx(1.0).epsilon(1e-4));
  }

  TEST_CASE("fit rejects thin windows and skips zeros") {
    GrowthSeries s{{{1.0, 0}, {2.0, 0}, {3.0, 4}, {4.0, 8}}, Units::Hyperbolic};
    CHECK_THROWS_AS(fit_exponent(s, {1.0, 4.0}), DomainError);
    s.points.push_back({5.0, 16});
    const auto fit = fit_exponent(s, {1.0, 5.0});
    CHECK(fit.n_points == 3);
    CHECK(fit.slope == doctest::Approx(std::numbers::ln2));
  }

  TEST_CASE("running exponent") {
    GrowthSeries s{{{0.0, 1}, {1.0, 0}, {2.0, 7}, {4.0, 50}}, Units::Hyperbolic};
    const auto r = running_exponent(s);
    CHECK(r.skipped == 2);
    REQUIRE(r.values.size() == 2);
    CHECK(r.values[0].first == 2.0);
    CHECK(r.values[0].second == doctest::Approx(std::log(7.0) / 2.0));
    CHECK(r.values[1].second == doctest::Approx(std::log(50.0) / 4.0));
  }

  TEST_CASE("series validation and unit conversion") {
    GrowthSeries bad{{{2.0, 3}, {1.0, 4}}, Units::Hyperbolic};
    CHECK_THROWS_AS(bad.validate(), DomainError);
    GrowthSeries dec{{{1.0, 3}, {2.0, 2}}, Units::Hyperbolic};
    CHECK_THROWS_AS(dec.validate(), DomainError);
    GrowthSeries ok{{{2.0, 3}, {4.0, 9}}, Units::Hyperbolic};
    CHECK_NOTHROW(ok.validate());
    const auto t = ok.in_units(Units::Teichmuller);
    CHECK(t.units == Units::Teichmuller);
    CHECK(t.points[1].radius == 2.0);
    CHECK(t.points[1].count == 9);
  }

  TEST_CASE("slope doubles when radii are halved") {
    const auto hyp = synthetic(1.0, 1.0, 8.0, 14.0, 0.5);
    const auto teich = hyp.in_units(Units::Teichmuller);
    CHECK(fit_exponent(teich, {4.0, 7.0}).slope ==
          doctest::Approx(2.0 * fit_exponent(hyp, {8.0, 14.0}).slope).epsilon(1e-12));
  }

  TEST_CASE("choose_L against a grid search") {
    const double lambda = kGoldenTeich, A = 1.0, h = 2.0;
    double prev = 0.0;
    for (double N : {1.0, 2.0, 3.0, 6.0, 12.0}) {
      double oracle = 0.0;
      for (int k = 1; k < 100000; ++k) {
        if (admissible_oracle(0.01 * k, lambda, A, N, h)) {
          oracle = 0.01 * k;
          break;
        }
      }
      const double L = choose_L(lambda, A, N, h);
      CHECK(L == doctest::Approx(oracle).epsilon(1e-12));
      CHECK(bucket_width_admissible(L, lambda, A, N, h));
      CHECK_FALSE(bucket_width_admissible(L - 0.01, lambda, A, N, h));
      CHECK(L >= prev);
      prev = L;
    }
    const double L3 = choose_L(lambda, A, 3.0, h);
    CHECK(L3 >= 2.3);
    CHECK(L3 <= 2.5);
    CHECK_THROWS_AS(choose_L(0.0, A, 3.0, h), DomainError);
    CHECK_THROWS_AS(choose_L(lambda, A, 3.0, -1.0), DomainError);
  }

  TEST_CASE("growth constants") {
    const double lambda = kGoldenTeich, A = 1.0, N = 3.0, h = 2.0, L = 2.4;
    const auto c = evaluate_constants(lambda, A, L, N, h);
    CHECK(c.G_U == doctest::Approx(3.0 * std::numbers::e).epsilon(1e-12));
    const double gl = lambda / (2.0 * N * (L + A + lambda) * std::exp(h * A)) /
                      (2.0 * std::exp(h * (lambda / 2.0 + A)));
    CHECK(c.G_L == doctest::Approx(gl).epsilon(1e-12));
    CHECK(c.G_L == doctest::Approx(1.29e-4).epsilon(0.01));
    CHECK(c.G_L < c.G_U);
    CHECK(c.G() == doctest::Approx(1.0 / c.G_L));
    CHECK_THROWS_AS(evaluate_constants(lambda, A, 0.0, N, h), DomainError);
  }

  TEST_CASE("coarse sandwich") {
    GrowthSeries s{{}, Units::Teichmuller};
    for (double r = 1.0; r <= 6.0; r += 1.0) {
      s.points.push_back({r, static_cast<std::int64_t>(std::llround(5.0 * std::exp(r)))});
    }
    const auto good = coarse_sandwich_check(s, 6.0, 2.0, 1.5, 1.0);
    CHECK(good.pass);
    CHECK(good.rows.size() == 6);
    CHECK(good.empirical_threshold.value() == 1.0);
    const auto tight = coarse_sandwich_check(s, 2.0, 2.0, 1.5, 1.0);
    CHECK_FALSE(tight.pass);
    CHECK(tight.first_violation.value() == 1.0);
    CHECK_FALSE(tight.empirical_threshold.has_value());
    // Rows below R_min are not checked.
    CHECK(coarse_sandwich_check(s, 6.0, 2.0, 1.5, 4.0).rows.size() == 3);
    CHECK_THROWS_AS(coarse_sandwich_check(s, 6.0, 2.0, 1.0, 1.0), DomainError);
    const auto& row = good.rows.front();
    CHECK(row.lower == doctest::Approx(std::exp(1.0) / (1.5 * 6.0)));
    CHECK(row.upper == doctest::Approx(1.5 * 6.0 * std::exp(1.0)));
  }

  TEST_CASE("calibrated contraction constant") {
    const auto cal = calibrate_A(2000, 7);
    CHECK(cal.A_hyp <= 3.0);
    CHECK(cal.A_teich == doctest::Approx(cal.A_hyp / 2.0));
    CHECK(cal.max_shadow_ratio <= 1.0 + 1e-12);
    CHECK(cal.max_lower_deficit <= cal.A_hyp + 1e-12);
    CHECK(cal.max_upper_excess <= cal.A_hyp + 1e-12);
    CHECK(validate_A(cal.A_hyp, 2000, 8).ok());
    CHECK_FALSE(validate_A(0.1, 2000, 8).ok());
    CHECK_THROWS_AS(calibrate_A(10, 1), DomainError);
  }

  TEST_CASE("calibration is deterministic across thread counts") {
    const auto a = calibrate_A(1500, 3, 1);
    const auto b = calibrate_A(1500, 3, 4);
    CHECK(a.A_hyp == b.A_hyp);
    CHECK(a.max_lower_deficit == b.max_lower_deficit);
    CHECK(a.max_upper_excess == b.max_upper_excess);
    const auto va = validate_A(1.75, 1500, 4, 1);
    const auto vb = validate_A(1.75, 1500, 4, 3);
    CHECK(va.max_shadow == vb.max_shadow);
    CHECK(va.shadow_checked == vb.shadow_checked);
  }
}
