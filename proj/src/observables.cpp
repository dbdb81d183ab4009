#include "freefp/observables.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "freefp/errors.hpp"
#include "freefp/potential.hpp"
#include "numerics.hpp"
#include "pairwise.hpp"

namespace freefp {

using detail::pi;

double sigma_v_empirical(std::span<const double> xs, double c) {
  const QuarticPotential v(c);
  const std::size_t n = xs.size();
  if (n == 0) throw DomainError("sigma_v_empirical: no particles");
  if (const std::size_t k = detail::first_collision(xs); k < n) throw CollisionError(k, 0.0);
  double pot = 0.0;
  for (double x : xs) pot += v.value(x);
  double logs = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) logs += std::log(xs[j] - xs[i]);
  const double nn = static_cast<double>(n);
  return pot / nn - 2.0 * logs / (nn * nn);
}

double dissipation_empirical(std::span<const double> xs, double c) {
  const QuarticPotential v(c);
  const std::size_t n = xs.size();
  if (n == 0) throw DomainError("dissipation_empirical: no particles");
  std::vector<double> h(n);
  detail::interaction_field(xs, h, 0.0, detail::worker_count());
  const double nn = static_cast<double>(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = 0.5 * v.grad(xs[i]) - h[i] / nn;
    acc += f * f;
  }
  return 2.0 * acc / nn;
}

namespace {

// t log|t| - t, the antiderivative of log|t|, extended by continuity at 0.
double xlogx_minus_x(double t) { return t == 0.0 ? 0.0 : t * std::log(std::abs(t)) - t; }

// int_lo^hi log|x - y| dy
double log_integral(double x, const Interval& iv) {
  return xlogx_minus_x(x - iv.lo) - xlogx_minus_x(x - iv.hi);
}

// Double-exponential rule in the angle variable; copes with the logarithmic
// kink that sits at an endpoint after splitting at x.
template <class F>
double angle_tanh_sinh(F f, const Interval& iv, double t0, double t1) {
  static thread_local boost::math::quadrature::tanh_sinh<double> rule(12);
  if (t1 <= t0) return 0.0;
  const double m = iv.mid();
  const double r = iv.radius();
  auto g = [&](double th) { return f(m - r * std::cos(th)) * r * std::sin(th); };
  return rule.integrate(g, t0, t1, 1e-10);
}

// int log|x - y| rho(y) dy over all pieces.
double log_potential(const SupportedDensity& m, double x) {
  double u = 0.0;
  for (const Interval& iv : m.support) {
    if (iv.contains(x)) {
      const double rx = m.density(x);
      auto g = [&](double y) {
        return y == x ? 0.0 : (m.density(y) - rx) * std::log(std::abs(x - y));
      };
      const double tx = detail::angle_of(iv, x);
      u += angle_tanh_sinh(g, iv, 0.0, tx) + angle_tanh_sinh(g, iv, tx, pi) +
           rx * log_integral(x, iv);
    } else {
      auto g = [&](double y) { return m.density(y) * std::log(std::abs(x - y)); };
      u += angle_tanh_sinh(g, iv, 0.0, pi);
    }
  }
  return u;
}

} // namespace

double sigma_v_analytic(const SupportedDensity& m, double c, std::size_t nodes) {
  const QuarticPotential v(c);
  if (nodes < 16) throw DomainError("sigma_v_analytic: need at least 16 nodes");
  double total = 0.0;
  for (const Interval& iv : m.support) {
    const double h = pi / static_cast<double>(nodes);
    double acc = 0.0;
    for (std::size_t k = 0; k < nodes; ++k) {
      const double th = (static_cast<double>(k) + 0.5) * h;
      const double x = iv.mid() - iv.radius() * std::cos(th);
      const double w = m.density(x) * iv.radius() * std::sin(th);
      if (w == 0.0) continue;
      acc += w * (v.value(x) - log_potential(m, x));
    }
    total += acc * h;
  }
  return total;
}

double sigma_v_analytic(const MeasureDescriptor& m, double c, std::size_t nodes) {
  return sigma_v_analytic(m.as_density(), c, nodes);
}

double wasserstein_p(std::span<const double> xs, std::span<const double> quantiles,
                     double p) {
  if (!(p >= 1.0 && p <= 8.0)) throw DomainError("wasserstein_p: p must lie in [1, 8]");
  if (xs.empty() || xs.size() != quantiles.size())
    throw DomainError("wasserstein_p: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double d = std::abs(xs[i] - quantiles[i]);
    acc += p == 1.0 ? d : p == 2.0 ? d * d : std::pow(d, p);
  }
  acc /= static_cast<double>(xs.size());
  return p == 1.0 ? acc : p == 2.0 ? std::sqrt(acc) : std::pow(acc, 1.0 / p);
}

double wasserstein_p(std::span<const double> xs, const MeasureDescriptor& m, double p) {
  const auto q = m.midpoint_quantiles(xs.size());
  return wasserstein_p(xs, q, p);
}

void ConvergenceSeries::append(const SeriesRow& row) {
  const double vals[] = {row.t,           row.w1, row.w2, row.sigma_v,
                         row.dissipation, row.m1, row.m2, row.min_gap};
  for (double v : vals)
    if (!std::isfinite(v)) throw ValidationError("series row has a non-finite entry");
  if (row.wp && !std::isfinite(*row.wp))
    throw ValidationError("series row has a non-finite entry");
  if (!rows_.empty() && !(row.t > rows_.back().t))
    throw ValidationError("series times must increase strictly");
  rows_.push_back(row);
}

namespace {

void put(std::ostream& os, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

} // namespace

void ConvergenceSeries::write_csv(std::ostream& os) const {
  os << csv_header << '\n';
  for (const SeriesRow& r : rows_) {
    put(os, r.t);
    os << ',';
    put(os, r.w1);
    os << ',';
    put(os, r.w2);
    os << ',';
    if (r.wp) put(os, *r.wp);
    for (double v : {r.sigma_v, r.dissipation, r.m1, r.m2, r.min_gap}) {
      os << ',';
      put(os, v);
    }
    os << '\n';
  }
}

std::string ConvergenceSeries::to_csv() const {
  std::ostringstream os;
  write_csv(os);
  return os.str();
}

} // namespace freefp
