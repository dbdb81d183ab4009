#include "freefp/criticality.hpp"

#include <algorithm>
#include <cmath>

#include "freefp/errors.hpp"
#include "numerics.hpp"

namespace freefp {

using cplx = std::complex<double>;

namespace {

void require_off_support(const std::vector<Interval>& support, cplx z) {
  if (z.imag() != 0.0) return;
  for (const auto& iv : support)
    if (iv.contains(z.real()))
      throw DomainError("Stieltjes transform evaluated on the support");
}

std::vector<Interval> support_of(const GridDensity& g) {
  std::vector<Interval> out;
  for (const auto& p : g.pieces()) out.push_back(p.interval);
  return out;
}

const Interval& enclosing_interior(const std::vector<Interval>& support, double x) {
  for (const auto& iv : support)
    if (iv.lo < x && x < iv.hi) return iv;
  throw DomainError("principal value needs x strictly inside the support");
}

} // namespace

cplx stieltjes(const SupportedDensity& m, cplx z) {
  require_off_support(m.support, z);
  double re = 0.0, im = 0.0;
  for (const auto& iv : m.support) {
    re += detail::adaptive_angle(
        [&](double x) { return (m.density(x) / (z - x)).real(); }, iv, 1e-13);
    im += detail::adaptive_angle(
        [&](double x) { return (m.density(x) / (z - x)).imag(); }, iv, 1e-13);
  }
  return {re, im};
}

cplx stieltjes(const MeasureDescriptor& m, cplx z) { return stieltjes(m.as_density(), z); }

cplx stieltjes(const GridDensity& m, cplx z) {
  require_off_support(support_of(m), z);
  cplx acc = 0.0;
  for (const auto& p : m.pieces()) {
    for (std::size_t j = 0; j + 1 < p.nodes.size(); ++j) {
      const double y0 = p.nodes[j], y1 = p.nodes[j + 1];
      if (y1 == y0) continue;
      const double s = (p.values[j + 1] - p.values[j]) / (y1 - y0);
      const double c0 = p.values[j] - s * y0;
      // int (c0 + s y)/(z - y) dy = (c0 + s z) log((z-y0)/(z-y1)) - s (y1 - y0)
      acc += (c0 + s * z) * (std::log(z - y0) - std::log(z - y1)) - s * (y1 - y0);
    }
  }
  return acc;
}

cplx stieltjes(const PointMasses& m, cplx z) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < m.locations.size(); ++i) {
    if (z == cplx(m.locations[i], 0.0))
      throw DomainError("Stieltjes transform evaluated at an atom");
    acc += m.weights[i] / (z - m.locations[i]);
  }
  return acc;
}

double pv_hilbert(const GridDensity& rho, double x) {
  const auto support = support_of(rho);
  const Interval& home = enclosing_interior(support, x);
  double acc = 0.0;
  for (const auto& p : rho.pieces()) {
    const bool inside = p.interval.lo == home.lo &&
                        p.interval.hi == home.hi;
    const double rx = inside ? rho(x) : 0.0;
    for (std::size_t j = 0; j + 1 < p.nodes.size(); ++j) {
      const double y0 = p.nodes[j], y1 = p.nodes[j + 1];
      if (y1 == y0) continue;
      const double s = (p.values[j + 1] - p.values[j]) / (y1 - y0);
      // (rho(y) - rx)/(x - y) = K/(x - y) - s on this panel.
      const double K = p.values[j] + s * (x - y0) - rx;
      if (!(y0 <= x && x <= y1) && K != 0.0)
        acc += K * std::log(std::abs((x - y0) / (x - y1)));
      acc -= s * (y1 - y0);
    }
    if (inside) acc += rx * std::log((x - p.interval.lo) / (p.interval.hi - x));
  }
  return acc;
}

double pv_hilbert(const SupportedDensity& rho, double x) {
  const Interval& home = enclosing_interior(rho.support, x);
  const double rx = rho.density(x);
  double acc = 0.0;
  for (const auto& iv : rho.support) {
    if (iv.lo == home.lo && iv.hi == home.hi) {
      auto g = [&](double y) { return y == x ? 0.0 : (rho.density(y) - rx) / (x - y); };
      const double tx = detail::angle_of(iv, x);
      acc += detail::adaptive_angle(g, iv, 0.0, tx, 1e-13) +
             detail::adaptive_angle(g, iv, tx, detail::pi, 1e-13);
      acc += rx * std::log((x - iv.lo) / (iv.hi - x));
    } else {
      acc += detail::adaptive_angle([&](double y) { return rho.density(y) / (x - y); }, iv,
                                    1e-13);
    }
  }
  return acc;
}

double euler_lagrange_residual(const SupportedDensity& m, const QuarticPotential& p,
                               std::size_t grid) {
  const auto g = GridDensity::sample(m, grid);
  double worst = 0.0;
  for (const auto& piece : g.pieces()) {
    const double margin = 0.01 * piece.interval.width();
    for (double x : piece.nodes) {
      if (x <= piece.interval.lo + margin || x >= piece.interval.hi - margin) continue;
      worst = std::max(worst, std::abs(pv_hilbert(g, x) - 0.5 * p.grad(x)));
    }
  }
  return worst;
}

double euler_lagrange_residual(const MeasureDescriptor& m, const QuarticPotential& p,
                               std::size_t grid) {
  return euler_lagrange_residual(m.as_density(), p, grid);
}

PolynomialCoeffs r_polynomial(double c, double m1, double m2) {
  return PolynomialCoeffs({-(m2 + c), -m1, 0.25 * (c * c - 4.0), 0.0, 0.5 * c, 0.0, 0.25});
}

namespace {

template <class M>
double r_identity_impl(const M& m, double m1, double m2, double c,
                       std::span<const cplx> zs) {
  const auto R = r_polynomial(c, m1, m2);
  double worst = 0.0;
  for (cplx z : zs) {
    if (z.imag() == 0.0) throw DomainError("R-identity samples must be off the real axis");
    const cplx w = 0.5 * (z * z * z + c * z) - stieltjes(m, z);
    worst = std::max(worst, std::abs(w * w - R(z)));
  }
  return worst;
}

} // namespace

double r_identity_residual(const MeasureDescriptor& m, double c, std::span<const cplx> zs) {
  return r_identity_impl(m.as_density(), m.moment(1), m.moment(2), c, zs);
}

double r_identity_residual(const SupportedDensity& m, double c, std::span<const cplx> zs) {
  return r_identity_impl(m, m.moment(1), m.moment(2), c, zs);
}

double r_identity_residual(const GridDensity& m, double c, std::span<const cplx> zs) {
  return r_identity_impl(m, m.moment(1), m.moment(2), c, zs);
}

std::vector<RootCountCase> root_count_report(double c) {
  std::vector<RootCountCase> rows;
  for (int s1 : {-1, 0, 1}) {
    for (int s2 : {-1, 0, 1}) {
      // Only signs enter Descartes' rule, so unit representatives suffice:
      // m1 = s1 and m2 = s2 - c.
      auto R = r_polynomial(c, s1, s2 - c);
      RootCountCase row;
      row.m1_sign = s1;
      row.m2_plus_c_sign = s2;
      row.zero_is_root = s2 == 0;
      if (row.zero_is_root) {
        // Strip the zero roots before counting the others.
        auto a = R.coefficients();
        std::size_t lead = 0;
        while (lead < a.size() && std::abs(a[lead]) < 1e-14) ++lead;
        R = PolynomialCoeffs(std::vector<double>(a.begin() + static_cast<long>(lead), a.end()));
      }
      row.counts = descartes_counts(R);
      row.max_nonzero_real = row.counts.positive + row.counts.negative;
      rows.push_back(row);
    }
  }
  return rows;
}

} // namespace freefp
