#include "modgrowth/identities.hpp"

#include <algorithm>
#include <cmath>

#include "modgrowth/group.hpp"
#include "modgrowth/hyperbolic.hpp"
#include "modgrowth/random.hpp"

namespace modgrowth {

using detail::unit_uniform;

bool IdentityReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.failures == 0; });
}

namespace {

void record(IdentityCheck& c, double error) {
  ++c.cases;
  c.max_error = std::max(c.max_error, error);
  if (!(error <= c.tolerance)) ++c.failures;
}

double rel_error(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

template <typename T>
const T& pick(const std::vector<T>& v, std::mt19937_64& rng) {
  return v[static_cast<std::size_t>(unit_uniform(rng) * static_cast<double>(v.size()))];
}

}  // namespace

IdentityReport check_identities(std::size_t cases, std::uint64_t seed, double tolerance) {
  const auto ball = enumerate_norm_ball(10'000);
  std::vector<GroupElement> hyperbolic;
  std::vector<GroupElement> small;
  for (const auto& g : ball) {
    if (g.classify() == ElementClass::Hyperbolic) hyperbolic.push_back(g);
    if (g.frobenius_norm_sq() <= 1'000) small.push_back(g);
  }
  std::vector<GroupElement> short_hyperbolic;
  for (const auto& g : hyperbolic) {
    if (g.frobenius_norm_sq() <= 100) short_hyperbolic.push_back(g);
  }

  IdentityCheck norm{"norm", 0, 0, 0, tolerance};
  IdentityCheck disp{"displacement", 0, 0, 0, tolerance};
  IdentityCheck equi{"equivariance", 0, 0, 0, tolerance};
  IdentityCheck power{"power_length", 0, 0, 0, tolerance};
  const Point i(0.0, 1.0);

  for (std::size_t j = 0; j < cases; ++j) {
    auto rng = detail::sample_rng(seed, j);

    const auto& g = pick(ball, rng);
    record(norm, rel_error(std::cosh(distance(i, mobius_apply(g, i))),
                           static_cast<double>(g.frobenius_norm_sq()) / 2.0));

    const auto& psi = pick(hyperbolic, rng);
    const Geodesic axis = axis_of(psi);
    const Point z = point_off_geodesic(axis, -2.0 + 4.0 * unit_uniform(rng), -5.0 + 10.0 * unit_uniform(rng));
    record(disp, rel_error(std::sinh(distance(z, mobius_apply(psi, z)) / 2.0),
                           std::cosh(dist_to_geodesic(z, axis)) * std::sinh(translation_length(psi) / 2.0)));

    const auto& h = pick(small, rng);
    const double u = -3.0 + 6.0 * unit_uniform(rng);
    const double v = u + 0.1 + 3.0 * unit_uniform(rng);
    const Geodesic L = unit_uniform(rng) < 0.1 ? Geodesic::vertical(u) : Geodesic::through(u, v);
    const Point w(-3.0 + 6.0 * unit_uniform(rng), 0.05 + 3.0 * unit_uniform(rng));
    record(equi, distance(mobius_apply(h, project_to_geodesic(w, L)),
                          project_to_geodesic(mobius_apply(h, w), mobius_apply(h, L))));

    const auto& phi = pick(short_hyperbolic, rng);
    const auto k = 1 + static_cast<std::int64_t>(unit_uniform(rng) * 5.0);
    record(power, rel_error(translation_length(phi.pow(k)), static_cast<double>(k) * translation_length(phi)));
  }
  return {{norm, disp, equi, power}};
}

}  // namespace modgrowth
