#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace modgrowth {

struct IdentityCheck {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  double max_error = 0;  // relative, or absolute distance for equivariance
  double tolerance = 0;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool ok() const;
};

/// Random-case checks of the model identities, `cases` each:
///   norm:          cosh d(i, g.i) = |g|^2 / 2
///   displacement:  sinh(d(z, psi z)/2) = cosh d(z, axis psi) sinh(lambda/2)
///   equivariance:  g.pi_L(z) = pi_{gL}(g.z)
///   power_length:  lambda(phi^k) = k lambda(phi)
/// Scalar identities compare relatively (|a - b| <= tol max(1, |b|)); the
/// equivariance check compares points by hyperbolic distance.
IdentityReport check_identities(std::size_t cases, std::uint64_t seed, double tolerance = 1e-9);

}  // namespace modgrowth
