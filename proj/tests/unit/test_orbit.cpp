#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "modgrowth/error.hpp"
#include "modgrowth/orbit.hpp"

using namespace modgrowth;

namespace {

GroupElement M(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return GroupElement::normalize(a, b, c, d);
}

const RationalPoint kI(Rational(0), Rational(1));

// {g : d(x, g.x) <= r} from the entry scan of a norm ball large enough to
// contain it (triangle inequality through i).
std::set<GroupElement> scan_omega(const Point& x, double r) {
  const double m = 2.0 * std::cosh(r + 2.0 * distance(Point(0, 1), x)) + 1.0;
  std::set<GroupElement> out;
  for (const auto& g : enumerate_norm_ball_scan(static_cast<std::int64_t>(m))) {
    if (distance(x, mobius_apply(g, x)) <= r + 1e-9) out.insert(g);
  }
  return out;
}

std::set<GroupElement> as_set(const std::vector<GroupElement>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_SUITE("orbit") {
  TEST_CASE("omega ball examples at i") {
    CHECK(omega_ball(Point(0, 1), 1.0).elements.size() == 10);
    const auto half = omega_ball(Point(0, 1), 0.5).elements;
    CHECK(as_set(half) == std::set<GroupElement>{GroupElement::identity(), M(0, -1, 1, 0)});
    CHECK(omega_ball(Point(0, 1), 0.0).elements.size() == 2);
    CHECK(as_set(omega_ball(Point(0, 1), 1.0).elements) == scan_omega(Point(0, 1), 1.0));
    CHECK_THROWS_AS(omega_ball(Point(0, 1), -1.0), DomainError);
  }

  TEST_CASE("omega ball agrees with the scan oracle at several centres") {
    for (const Point x : {Point(0, 1), Point(0.3, 0.8), Point(-1.25, 2.5), Point(0.5, std::sqrt(3.0) / 2.0),
                          Point(0.1, 0.35)}) {
      for (double r : {0.0, 0.7, 1.5, 2.5, 3.5}) {
        CHECK_MESSAGE(as_set(omega_ball(x, r).elements) == scan_omega(x, r), "x=" << x << " r=" << r);
      }
    }
  }

  TEST_CASE("fast omega ball equals the brute-force path") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> ux(-1.0, 1.0), uy(0.3, 2.0), ur(0.0, 6.0);
    for (int k = 0; k < 40; ++k) {
      const Point x(ux(rng), uy(rng));
      const double r = ur(rng);
      const auto fast = omega_ball(x, r);
      const auto slow = omega_ball_bruteforce(x, r);
      REQUIRE(fast.elements == slow.elements);
      REQUIRE(fast.boundary_hits == slow.boundary_hits);
    }
  }

  TEST_CASE("omega ball is independent of thread count") {
    CHECK(omega_ball(Point(0.2, 0.9), 8.0, 1).elements == omega_ball(Point(0.2, 0.9), 8.0, 3).elements);
  }

  TEST_CASE("orbit point count examples") {
    CHECK(orbit_point_count(Point(0, 1), kI, 1.0).count == 5);
    CHECK(orbit_point_count(Point(0, 1), kI, 0.0).count == 1);
    const RationalPoint two_i(Rational(0), Rational(2));
    CHECK(orbit_point_count(Point(0, 1), two_i, 0.5).count == 0);
  }

  TEST_CASE("the five points at radius one") {
    // i, +-1 + i, (+-1 + i)/2 by the exact action.
    std::set<RationalPoint> expected{kI,
                                     {Rational(1), Rational(1)},
                                     {Rational(-1), Rational(1)},
                                     {Rational(1, 2), Rational(1, 2)},
                                     {Rational(-1, 2), Rational(1, 2)}};
    std::set<RationalPoint> got;
    for (const auto& g : omega_ball(Point(0, 1), 1.0).elements) got.insert(kI.apply(g));
    CHECK(got == expected);
  }

  TEST_CASE("exact and tolerance dedup agree for rational points") {
    const RationalPoint y(Rational(1, 3), Rational(3, 2));
    for (double r : {2.0, 5.0, 7.0}) {
      CHECK(orbit_point_count(Point(0, 1), y, r).count ==
            orbit_point_count(Point(0, 1), y.to_point(), r, 1e-9).count);
    }
    CHECK_THROWS_AS(orbit_point_count(Point(0, 1), Point(0, 1), 1.0, 0.0), DomainError);
  }

  TEST_CASE("stabilizers") {
    const auto si = stabilizer_of(Point(0, 1));
    CHECK(as_set(si) == std::set<GroupElement>{GroupElement::identity(), M(0, -1, 1, 0)});
    const auto rho = stabilizer_of(Point(0.5, std::sqrt(3.0) / 2.0));
    CHECK(rho.size() == 3);
    CHECK(as_set(rho).contains(M(1, -1, 1, 0)));
    CHECK(stabilizer_of(Point(0, 2)).size() == 1);
    CHECK(max_stabilizer_order() == 3);
  }

  TEST_CASE("stabilizers of random rational points are trivial and never exceed three") {
    std::mt19937_64 rng(22);
    for (int k = 0; k < 200; ++k) {
      const Rational x(static_cast<std::int64_t>(rng() % 200) - 100, 37);
      const Rational y(static_cast<std::int64_t>(rng() % 100) + 1, 41);
      const auto order = stabilizer_of(RationalPoint(x, y).to_point()).size();
      REQUIRE(order <= 3);
      REQUIRE(order == 1);
    }
  }

  TEST_CASE("orbit sandwich and monotonicity") {
    const std::size_t N = max_stabilizer_order();
    for (const auto& y : {kI, RationalPoint(Rational(1, 5), Rational(7, 4)),
                          RationalPoint(Rational(1, 2), Rational(1, 2))}) {
      std::size_t prev_o = 0, prev_w = 0;
      for (double r = 0.0; r <= 7.0; r += 0.5) {
        const auto w = omega_ball(y.to_point(), r).elements.size();
        const auto o = orbit_point_count(y.to_point(), y, r).count;
        REQUIRE(o <= w);
        REQUIRE(w <= N * o);
        REQUIRE(o >= prev_o);
        REQUIRE(w >= prev_w);
        prev_o = o;
        prev_w = w;
      }
    }
  }

  TEST_CASE("orbit multiplicities at i equal the stabilizer order") {
    std::map<RationalPoint, int> mult;
    for (const auto& g : omega_ball(Point(0, 1), 6.0).elements) ++mult[kI.apply(g)];
    for (const auto& [p, m] : mult) REQUIRE(m == 2);
    CHECK(omega_ball(Point(0, 1), 6.0).elements.size() == 2 * orbit_point_count(Point(0, 1), kI, 6.0).count);
  }

  TEST_CASE("census") {
    const auto rows = census(kI, {1.0, 4.0, 10.0});
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].omega_count == 10);
    CHECK(rows[0].orbit_count == 5);
    CHECK(rows[0].frac_hyperbolic == 0.0);
    CHECK(rows[2].frac_hyperbolic > 0.95);
    CHECK(rows[2].frac_hyperbolic > rows[1].frac_hyperbolic);
    CHECK(rows[2].frac_hyperbolic + rows[2].frac_parabolic + rows[2].frac_elliptic == doctest::Approx(1.0));
    CHECK(census(kI, {}).empty());
    CHECK_THROWS_AS(census(kI, {2.0, 1.0}), DomainError);
    // Units: 0.5 Teich is 1 hyp.
    CHECK(census(kI, {0.5}, Units::Teichmuller)[0].omega_count == 10);
  }

  TEST_CASE("radii beyond the checked range raise overflow") {
    CHECK_THROWS_AS(omega_ball(Point(0, 1), 200.0), OverflowError);
  }
}
