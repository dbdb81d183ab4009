#pragma once

#include <span>

namespace freefp {

/// Quartic confinement V(x) = x^4/4 + (c/2) x^2.
struct QuarticPotential {
  double c = 0.0;

  explicit QuarticPotential(double c_);

  double value(double x) const noexcept { return 0.25 * x * x * x * x + 0.5 * c * x * x; }
  double grad(double x) const noexcept { return x * x * x + c * x; }
  double hess(double x) const noexcept { return 3.0 * x * x + c; }

  /// Equilibrium measure has connected support iff c >= -2.
  bool one_cut() const noexcept { return c >= -2.0; }
  bool two_cut() const noexcept { return !one_cut(); }
};

/// Checks -x V'(x) <= a x^2 + b at every grid point. Requires a < 0 < b and a
/// nonempty grid; throws DomainError otherwise.
bool confinement_check(const QuarticPotential& p, double a, double b,
                       std::span<const double> xs);

} // namespace freefp
