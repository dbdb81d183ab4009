#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "freefp/equilibrium.hpp"
#include "freefp/measure.hpp"
#include "freefp/polynomial.hpp"

namespace freefp {

// One-interval stationary measures of the quartic potential.
//
// A measure with bounded density on [a, b] solves H rho = V'/2 iff
//   (a + b)(5b^2 - 2ab + 5a^2 + 8c) = 0                          (solvability)
//   ((b - a)^2 / 256)(15a^2 + 18ab + 15b^2 + 16c) = 1             (unit mass)
// and then rho(x) = (1/2pi) sqrt((x - a)(b - x)) q(x) with
//   q(x) = x^2 + ((a + b)/2) x + (3/8) b^2 + (1/4) ab + (3/8) a^2 + c.

/// (a + b)(5b^2 - 2ab + 5a^2 + 8c). Requires a < b.
double solvability_residual(double a, double b, double c);
/// ((b - a)^2/256)(15a^2 + 18ab + 15b^2 + 16c) - 1. Requires a < b.
double normalization_residual(double a, double b, double c);
/// Ascending coefficients of q.
PolynomialCoeffs interval_factor(double a, double b, double c);
/// Bounded solution on [a, b]; throws DomainError for x outside.
double interval_density(double a, double b, double c, double x);

/// Bounded solution of PV int_a^b phi(t)/(t - x) dt = f(x) on one interval,
/// represented through the Chebyshev expansion of f.
class MuskhelishviliSolution {
public:
  MuskhelishviliSolution(Interval iv, std::vector<double> chebyshev);

  const Interval& interval() const noexcept { return iv_; }
  /// Chebyshev coefficients of f on the interval.
  const std::vector<double>& chebyshev() const noexcept { return coeffs_; }
  /// Chebyshev nodes (first kind, ascending) where f was sampled.
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  /// phi at the nodes.
  const std::vector<double>& values() const noexcept { return values_; }

  double operator()(double x) const;
  /// Integral of phi over the interval.
  double mass() const;

private:
  Interval iv_;
  std::vector<double> coeffs_;
  std::vector<double> nodes_;
  std::vector<double> values_;
};

/// Solves with n >= 16 Chebyshev nodes. Throws SolvabilityError when
/// |int f / sqrt((t - a)(b - t)) dt| exceeds 1e-8.
MuskhelishviliSolution muskhelishvili_solve(double a, double b,
                                            const std::function<double(double)>& f,
                                            std::size_t n);

enum class CaseTag { Symmetric, PlusBranch, MinusBranch };

const char* to_string(CaseTag tag) noexcept;

struct IntervalCandidate {
  double a = 0.0;
  double b = 0.0;
  CaseTag case_tag = CaseTag::Symmetric;
  bool admissible = false;
  PolynomialCoeffs density_params;  // q, ascending
  double solvability = 0.0;
  double normalization = 0.0;
  /// Minimum of q over the nonnegativity check points.
  double min_factor = 0.0;

  double density(double x) const;
  /// Admissible candidates only.
  MeasureDescriptor to_measure() const;
};

/// Every interval solving both constraints for this c, with admissibility
/// decided by |residuals| <= tol and q >= -1e-3 tol at 4096 Chebyshev points.
/// Ordered by (case_tag, a).
std::vector<IntervalCandidate> interval_candidates(double c, double tol);

/// The admissible subset of interval_candidates.
std::vector<IntervalCandidate> enumerate_stationary_onecut(double c, double tol = 1e-9);

/// f(x, c) = 45x^4 + 156c x^3 + (182c^2 - 552)x^2 + (76c^3 - 880c)x
///           + 5c^4 - 200c^2 + 2000, as a polynomial in x.
PolynomialCoeffs obstruction_polynomial(double c);
double obstruction_value(double x, double c);

struct ObstructionMinimum {
  double value = 0.0;
  double x = 0.0;
  double c = 0.0;
};

/// Minimum of f over K = {c_lo <= c <= c_hi, 0 <= x <= -5c/3}, by a
/// grid x grid scan followed by compass-search refinement.
/// Requires -2 <= c_lo <= c_hi <= 0 and grid >= 2.
ObstructionMinimum obstruction_min_on_K(double c_lo, double c_hi, std::size_t grid);

/// Real roots of f(., c) in [0, -5c/3]: sign changes on a 10^4-point scan
/// refined by bisection. Tangential (even-multiplicity) roots are not seen.
std::vector<double> obstruction_roots(double c);

/// Euler-Lagrange residual of the two-cut equilibrium measure (c < -2).
double two_cut_stationarity_residual(double c, std::size_t grid = 512);

} // namespace freefp
