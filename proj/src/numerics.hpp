#pragma once

// Internal quadrature helpers shared by the library sources.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "freefp/measure.hpp"

namespace freefp::detail {

inline constexpr double pi = std::numbers::pi;

/// Adaptive Gauss-Kronrod on [a, b].
template <class F>
double adaptive(F f, double a, double b, double tol = 1e-13,
                unsigned max_depth = 18) {
  if (a == b) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, a, b, max_depth, tol);
}

/// Integral of f over an interval, taken in the angle variable
/// x = mid - radius cos(theta) restricted to theta in [t0, t1].
template <class F>
double adaptive_angle(F&& f, const Interval& iv, double t0, double t1,
                      double tol = 1e-13) {
  const double m = iv.mid();
  const double r = iv.radius();
  auto g = [&](double th) { return f(m - r * std::cos(th)) * r * std::sin(th); };
  return adaptive(g, t0, t1, tol);
}

template <class F>
double adaptive_angle(F&& f, const Interval& iv, double tol = 1e-13) {
  return adaptive_angle(f, iv, 0.0, pi, tol);
}

/// Angle of x in the parametrisation of `iv`, clamped to [0, pi].
inline double angle_of(const Interval& iv, double x) {
  const double t = (x - iv.mid()) / iv.radius();
  if (t <= -1.0) return 0.0;
  if (t >= 1.0) return pi;
  return std::acos(-t);
}

/// Nodes/weights of the n-point Gauss rule for weight sqrt(1 - t^2) on
/// [-1, 1]; exact for polynomials of degree <= 2n - 1.
struct ChebyshevURule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline ChebyshevURule chebyshev_u_rule(std::size_t n) {
  ChebyshevURule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t j = 1; j <= n; ++j) {
    const double th = static_cast<double>(j) * pi / static_cast<double>(n + 1);
    rule.nodes[j - 1] = std::cos(th);
    rule.weights[j - 1] = pi / static_cast<double>(n + 1) * std::sin(th) * std::sin(th);
  }
  return rule;
}

inline std::vector<double> chebyshev_lobatto(const Interval& iv, std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t j = 0; j < n; ++j)
    x[j] = iv.mid() - iv.radius() * std::cos(pi * static_cast<double>(j) /
                                             static_cast<double>(n - 1));
  x.front() = iv.lo;
  x.back() = iv.hi;
  return x;
}

} // namespace freefp::detail
