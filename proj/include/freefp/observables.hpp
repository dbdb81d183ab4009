#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "freefp/equilibrium.hpp"
#include "freefp/measure.hpp"

namespace freefp {

/// (1/N) sum V(x_i) - (1/N^2) sum_{i != j} log|x_i - x_j|. Positions must be
/// strictly ascending; a zero gap throws CollisionError.
double sigma_v_empirical(std::span<const double> xs, double c);

/// 2 (1/N) sum F_i^2 with F_i = V'(x_i)/2 - (1/N) sum_{j != i} 1/(x_i - x_j).
double dissipation_empirical(std::span<const double> xs, double c);

/// Free entropy -iint log|x - y| dmu dmu + int V dmu of an absolutely
/// continuous measure. The outer integral is a midpoint rule with `nodes`
/// points per support interval in the angle variable; the inner log
/// potential subtracts the density value at x and adds the exact integral
/// of the logarithm back.
double sigma_v_analytic(const SupportedDensity& m, double c, std::size_t nodes = 2048);
double sigma_v_analytic(const MeasureDescriptor& m, double c, std::size_t nodes = 2048);

/// Empirical-vs-analytic W_p by quantile matching at (i - 1/2)/N.
/// p must lie in [1, 8]. Discretisation bias is O(1/N).
double wasserstein_p(std::span<const double> xs, const MeasureDescriptor& m, double p);
/// Same, against precomputed matched quantiles (equal length, ascending).
double wasserstein_p(std::span<const double> xs, std::span<const double> quantiles,
                     double p);

struct SeriesRow {
  double t = 0.0;
  double w1 = 0.0;
  double w2 = 0.0;
  std::optional<double> wp;
  double sigma_v = 0.0;
  double dissipation = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
  double min_gap = 0.0;
};

/// Time series of observables along a simulated trajectory.
class ConvergenceSeries {
public:
  static constexpr const char* csv_header =
      "t,w1,w2,wp,sigma_v,dissipation,m1,m2,min_gap";

  /// Throws ValidationError unless t increases strictly and every entry is
  /// finite.
  void append(const SeriesRow& row);

  const std::vector<SeriesRow>& rows() const noexcept { return rows_; }
  bool empty() const noexcept { return rows_.empty(); }
  std::size_t size() const noexcept { return rows_.size(); }
  const SeriesRow& back() const { return rows_.back(); }

  /// Header plus one line per row, 17 significant digits, empty wp cell when
  /// absent.
  void write_csv(std::ostream& os) const;
  std::string to_csv() const;

private:
  std::vector<SeriesRow> rows_;
};

} // namespace freefp
