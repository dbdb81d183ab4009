#include "freefp/potential.hpp"

#include <cmath>

#include "freefp/errors.hpp"

namespace freefp {

QuarticPotential::QuarticPotential(double c_) : c(c_) {
  if (!std::isfinite(c))
    throw DomainError("potential coefficient c must be finite");
}

bool confinement_check(const QuarticPotential& p, double a, double b,
                       std::span<const double> xs) {
  if (!(a < 0.0) || !(b > 0.0))
    throw DomainError("confinement_check needs a < 0 < b");
  if (xs.empty())
    throw DomainError("confinement_check needs a nonempty grid");
  for (double x : xs)
    if (-x * p.grad(x) > a * x * x + b) return false;
  return true;
}

} // namespace freefp
