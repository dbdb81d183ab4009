#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace freefp {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const noexcept { return hi - lo; }
  double mid() const noexcept { return 0.5 * (lo + hi); }
  double radius() const noexcept { return 0.5 * (hi - lo); }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
};

/// Absolutely continuous measure given pointwise: a density on finitely many
/// disjoint, ordered intervals. The density may vanish like a square root or
/// stay bounded away from zero at the edges; quadrature runs in the angle
/// variable x = mid - radius cos(theta), which absorbs both behaviours.
struct SupportedDensity {
  std::vector<Interval> support;
  std::function<double(double)> density;

  double operator()(double x) const;
  double total_mass() const;
  double moment(int k) const;
};

/// Continuous piecewise-linear density sampled at Chebyshev-Lobatto nodes
/// of each support interval.
class GridDensity {
public:
  struct Piece {
    Interval interval;
    std::vector<double> nodes;  // ascending, first = lo, last = hi
    std::vector<double> values;
  };

  GridDensity() = default;
  explicit GridDensity(std::vector<Piece> pieces);

  /// Samples `density` at `nodes_per_interval` (>= 2) nodes per interval.
  static GridDensity sample(const SupportedDensity& density,
                            std::size_t nodes_per_interval);

  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  double operator()(double x) const;
  /// Exact for the interpolant.
  double moment(int k) const;

private:
  std::vector<Piece> pieces_;
};

/// Finite weighted sum of point masses.
struct PointMasses {
  std::vector<double> locations;
  std::vector<double> weights;
};

} // namespace freefp
