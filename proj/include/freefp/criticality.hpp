#pragma once

#include <complex>
#include <span>
#include <vector>

#include "freefp/equilibrium.hpp"
#include "freefp/measure.hpp"
#include "freefp/polynomial.hpp"
#include "freefp/potential.hpp"

namespace freefp {

// Stieltjes transform G(z) = int dmu(x) / (z - x), z off the support.
// Throws DomainError when z lies on the support.
std::complex<double> stieltjes(const SupportedDensity& m, std::complex<double> z);
std::complex<double> stieltjes(const MeasureDescriptor& m, std::complex<double> z);
/// Exact for the piecewise-linear interpolant.
std::complex<double> stieltjes(const GridDensity& m, std::complex<double> z);
std::complex<double> stieltjes(const PointMasses& m, std::complex<double> z);

// Principal-value Hilbert transform H rho(x) = PV int rho(y) / (x - y) dy,
// computed by subtracting rho(x) and adding rho(x) log((x - lo)/(hi - x)).
// x must lie strictly inside a support interval.

/// Grid route: the remainder integral is evaluated exactly panel by panel
/// for the piecewise-linear interpolant.
double pv_hilbert(const GridDensity& rho, double x);
/// Analytic route: the remainder integral by adaptive quadrature.
double pv_hilbert(const SupportedDensity& rho, double x);

/// sup over the interior grid nodes (1% edge margins excluded) of
/// |H rho(x) - V'(x)/2|, with rho sampled on `grid` Chebyshev-Lobatto nodes
/// per support interval.
double euler_lagrange_residual(const SupportedDensity& m, const QuarticPotential& p,
                               std::size_t grid);
double euler_lagrange_residual(const MeasureDescriptor& m, const QuarticPotential& p,
                               std::size_t grid);

/// R(z) = z^6/4 + (c/2) z^4 + ((c^2 - 4)/4) z^2 - m1 z - (m2 + c).
PolynomialCoeffs r_polynomial(double c, double m1, double m2);

/// max over samples of |(V'(z)/2 - G(z))^2 - R(z)|, with R built from the
/// first two moments of the measure. Samples must be off the real axis.
double r_identity_residual(const MeasureDescriptor& m, double c,
                           std::span<const std::complex<double>> zs);
double r_identity_residual(const SupportedDensity& m, double c,
                           std::span<const std::complex<double>> zs);
double r_identity_residual(const GridDensity& m, double c,
                           std::span<const std::complex<double>> zs);

/// One row of the sign-case analysis of R for a fixed c: the Descartes
/// counts for a given sign of m1 and of m2 + c.
struct RootCountCase {
  int m1_sign = 0;
  int m2_plus_c_sign = 0;
  DescartesCounts counts;
  bool zero_is_root = false;
  /// Largest number of nonzero real roots Descartes allows.
  int max_nonzero_real = 0;
};

std::vector<RootCountCase> root_count_report(double c);

} // namespace freefp
