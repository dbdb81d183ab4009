#pragma once

// Independent reference computations used only by the tests. They integrate
// in the original variable with double-exponential quadrature, so they share
// no code path with the library's angle-variable and closed-form routines.

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>
#include <vector>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

template <class F>
double integrate(F f, double a, double b, double tol = 1e-14) {
  static boost::math::quadrature::tanh_sinh<double> ts(15);
  return ts.integrate(f, a, b, tol);
}

/// Equilibrium density written out independently of the library.
inline double equilibrium_density(double c, double x) {
  if (c >= -2.0) {
    const double a2 = 2.0 / 3.0 * (std::sqrt(c * c + 12.0) - c);
    const double b0 = (c + std::sqrt(c * c / 4.0 + 3.0)) / 3.0;
    if (x * x >= a2) return 0.0;
    return (0.5 * x * x + b0) * std::sqrt(a2 - x * x) / pi;
  }
  const double a2 = -2.0 - c, b2 = 2.0 - c;
  if (x * x <= a2 || x * x >= b2) return 0.0;
  return std::abs(x) * std::sqrt((x * x - a2) * (b2 - x * x)) / (2.0 * pi);
}

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return x;
}

} // namespace oracle
