#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "freefp/measure.hpp"

namespace freefp {

enum class MeasureKind { OneCut, TwoCut, Interval };

const char* to_string(MeasureKind kind) noexcept;

/// Analytic description of an absolutely continuous probability measure.
///
/// Every supported family has density sqrt((x - lo)(hi - x)) * g(x) on each
/// support interval [lo, hi] with g smooth there:
///
///   OneCut   (a, b0)       (1/pi)(x^2/2 + b0) sqrt(a^2 - x^2)           on [-a, a]
///   TwoCut   (a, b)        (1/2pi)|x| sqrt((x^2 - a^2)(b^2 - x^2))      on [-b,-a] u [a,b]
///   Interval (a, b, q)     (1/2pi) sqrt((x - a)(b - x)) q(x)            on [a, b]
///
/// Instances are immutable; all members are safe to call concurrently.
class MeasureDescriptor {
public:
  static MeasureDescriptor one_cut(double a, double b0);
  static MeasureDescriptor two_cut(double a, double b);
  /// `factor` holds the ascending coefficients of q. Throws DomainError if
  /// the resulting density is negative on [a, b] or does not have unit mass.
  static MeasureDescriptor interval(double a, double b, std::vector<double> factor);

  MeasureKind kind() const noexcept { return kind_; }
  const std::vector<Interval>& support() const noexcept { return support_; }
  /// OneCut: {a, b0}; TwoCut: {a, b}; Interval: {a, b}.
  const std::vector<double>& params() const noexcept { return params_; }
  /// Ascending coefficients of q (Interval only; empty otherwise).
  const std::vector<double>& factor() const noexcept { return factor_; }
  /// True when the measure is invariant under x -> -x.
  bool symmetric() const noexcept { return symmetric_; }

  double density(double x) const;
  double cdf(double x) const;
  /// Left-continuous inverse of the CDF; u must lie in (0, 1).
  double quantile(double u) const;
  /// Integral of x^k, 0 <= k <= 8.
  double moment(int k) const;
  /// n i.i.d. draws by inverse transform of a seeded uniform stream.
  std::vector<double> sample(std::size_t n, std::uint64_t seed) const;
  /// quantile((i - 1/2) / n) for i = 1..n.
  std::vector<double> midpoint_quantiles(std::size_t n) const;

  SupportedDensity as_density() const;

private:
  MeasureDescriptor(MeasureKind kind, std::vector<Interval> support,
                    std::vector<double> params, std::vector<double> factor);

  double edge_factor(double x) const;
  double mass_within(std::size_t piece, double theta) const;

  MeasureKind kind_;
  std::vector<Interval> support_;
  std::vector<double> params_;
  std::vector<double> factor_;
  std::vector<double> cumulative_;  // mass to the left of each piece
  bool symmetric_ = false;
};

/// Closed-form equilibrium measure of the quartic potential: one interval for
/// c >= -2, two symmetric intervals for c < -2.
MeasureDescriptor equilibrium_measure(double c);

} // namespace freefp
