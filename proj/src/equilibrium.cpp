#include "freefp/equilibrium.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "freefp/errors.hpp"
#include "numerics.hpp"

namespace freefp {

using detail::pi;

const char* to_string(MeasureKind kind) noexcept {
  switch (kind) {
    case MeasureKind::OneCut: return "one_cut";
    case MeasureKind::TwoCut: return "two_cut";
    case MeasureKind::Interval: return "interval";
  }
  return "unknown";
}

namespace {

double horner(const std::vector<double>& coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

} // namespace

MeasureDescriptor::MeasureDescriptor(MeasureKind kind, std::vector<Interval> support,
                                     std::vector<double> params,
                                     std::vector<double> factor)
    : kind_(kind),
      support_(std::move(support)),
      params_(std::move(params)),
      factor_(std::move(factor)) {
  double acc = 0.0;
  for (std::size_t j = 0; j < support_.size(); ++j) {
    cumulative_.push_back(acc);
    acc += mass_within(j, pi);
  }
  cumulative_.push_back(acc);
}

MeasureDescriptor MeasureDescriptor::one_cut(double a, double b0) {
  if (!(a > 0.0) || !std::isfinite(a) || !std::isfinite(b0))
    throw DomainError("one-cut measure needs a > 0");
  MeasureDescriptor m(MeasureKind::OneCut, {{-a, a}}, {a, b0}, {});
  m.symmetric_ = true;
  return m;
}

MeasureDescriptor MeasureDescriptor::two_cut(double a, double b) {
  if (!(a > 0.0) || !(b > a) || !std::isfinite(b))
    throw DomainError("two-cut measure needs 0 < a < b");
  MeasureDescriptor m(MeasureKind::TwoCut, {{-b, -a}, {a, b}}, {a, b}, {});
  m.symmetric_ = true;
  return m;
}

MeasureDescriptor MeasureDescriptor::interval(double a, double b,
                                              std::vector<double> factor) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw DomainError("interval measure needs a < b");
  if (factor.empty()) throw DomainError("interval measure needs a factor");
  MeasureDescriptor m(MeasureKind::Interval, {{a, b}}, {a, b}, std::move(factor));
  for (double x : detail::chebyshev_lobatto({a, b}, 4096))
    if (horner(m.factor_, x) < -1e-12)
      throw DomainError("interval density is negative at x = " + std::to_string(x));
  if (std::abs(m.cumulative_.back() - 1.0) > 1e-8)
    throw DomainError("interval density does not have unit mass");
  // Mirror symmetry needs a = -b and an even factor.
  bool even = std::abs(a + b) <= 1e-14 * (b - a);
  for (std::size_t k = 1; k < m.factor_.size(); k += 2)
    even = even && m.factor_[k] == 0.0;
  m.symmetric_ = even;
  return m;
}

double MeasureDescriptor::edge_factor(double x) const {
  switch (kind_) {
    case MeasureKind::OneCut: return (0.5 * x * x + params_[1]) / pi;
    case MeasureKind::TwoCut: {
      const double ax = std::abs(x);
      return ax * std::sqrt((ax + params_[0]) * (ax + params_[1])) / (2.0 * pi);
    }
    case MeasureKind::Interval: return horner(factor_, x) / (2.0 * pi);
  }
  return 0.0;
}

double MeasureDescriptor::density(double x) const {
  for (const auto& iv : support_) {
    if (!iv.contains(x)) continue;
    const double s = (x - iv.lo) * (iv.hi - x);
    return s > 0.0 ? std::sqrt(s) * edge_factor(x) : 0.0;
  }
  return 0.0;
}

// Mass of piece `j` between its left edge and the point with angle `theta`
// (x = mid - radius cos theta).
double MeasureDescriptor::mass_within(std::size_t j, double theta) const {
  const Interval& iv = support_[j];
  switch (kind_) {
    case MeasureKind::OneCut: {
      const double a = params_[0], b0 = params_[1];
      const double s2 = theta / 2.0 - std::sin(2.0 * theta) / 4.0;
      const double s4 = theta / 8.0 - std::sin(4.0 * theta) / 32.0;
      return a * a / pi * (0.5 * a * a * s4 + b0 * s2);
    }
    case MeasureKind::TwoCut: {
      // u = x^2 turns each piece into a semicircle-type integral in u.
      const double a = params_[0], b = params_[1];
      const double mu = 0.5 * (a * a + b * b), ru = 0.5 * (b * b - a * a);
      const double x = iv.mid() - iv.radius() * std::cos(theta);
      const double ct = std::clamp((mu - x * x) / ru, -1.0, 1.0);
      const double phi = std::acos(ct);
      const double inner = ru * ru / (4.0 * pi) * (phi / 2.0 - std::sin(2.0 * phi) / 4.0);
      // Right piece: mass accumulates from a outward; left piece mirrored.
      return j == 1 ? inner : 0.5 - inner;
    }
    case MeasureKind::Interval: {
      const double m = iv.mid(), r = iv.radius();
      auto g = [&](double th) {
        const double s = std::sin(th);
        return r * r * s * s * edge_factor(m - r * std::cos(th));
      };
      return boost::math::quadrature::gauss<double, 30>::integrate(g, 0.0, theta);
    }
  }
  return 0.0;
}

double MeasureDescriptor::cdf(double x) const {
  for (std::size_t j = 0; j < support_.size(); ++j) {
    const Interval& iv = support_[j];
    if (x < iv.lo) return std::clamp(cumulative_[j], 0.0, 1.0);
    if (x < iv.hi)
      return std::clamp(cumulative_[j] + mass_within(j, detail::angle_of(iv, x)), 0.0, 1.0);
  }
  return 1.0;
}

double MeasureDescriptor::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("quantile level must lie in (0, 1)");
  std::size_t j = 0;
  while (j + 1 < support_.size() && u > cumulative_[j + 1]) ++j;
  const Interval& iv = support_[j];
  const double target = u - cumulative_[j];
  if (target <= 0.0) return iv.lo;
  auto f = [&](double th) { return mass_within(j, th) - target; };
  const double f0 = f(0.0), f1 = f(pi);
  if (f1 <= 0.0) return iv.hi;
  if (f0 >= 0.0) return iv.lo;
  std::uintmax_t iters = 200;
  auto bracket = boost::math::tools::toms748_solve(
      f, 0.0, pi, f0, f1, boost::math::tools::eps_tolerance<double>(52), iters);
  const double th = 0.5 * (bracket.first + bracket.second);
  return iv.mid() - iv.radius() * std::cos(th);
}

double MeasureDescriptor::moment(int k) const {
  if (k < 0 || k > 8) throw DomainError("moment order must lie in [0, 8]");
  if (k == 0 && kind_ != MeasureKind::Interval) return cumulative_.back();
  if (symmetric_ && k % 2 == 1) return 0.0;
  // Gauss rule for the sqrt weight; 16 nodes integrate degree <= 31 exactly.
  static const auto rule = detail::chebyshev_u_rule(16);
  if (kind_ == MeasureKind::TwoCut) {
    // Even k: integral over both pieces = (1/2pi) int u^{k/2} sqrt((u-a^2)(b^2-u)) du.
    const double a = params_[0], b = params_[1];
    const double mu = 0.5 * (a * a + b * b), ru = 0.5 * (b * b - a * a);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      acc += rule.weights[i] * std::pow(mu + ru * rule.nodes[i], k / 2);
    return ru * ru * acc / (2.0 * pi);
  }
  const Interval& iv = support_.front();
  const double m = iv.mid(), r = iv.radius();
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = m + r * rule.nodes[i];
    acc += rule.weights[i] * std::pow(x, k) * edge_factor(x);
  }
  return r * r * acc;
}

std::vector<double> MeasureDescriptor::sample(std::size_t n, std::uint64_t seed) const {
  if (n == 0) throw DomainError("sample size must be positive");
  std::mt19937_64 gen(seed);
  std::vector<double> out(n);
  for (auto& x : out) {
    // 53 random bits mapped to the open unit interval.
    const double u = (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
    x = quantile(u);
  }
  return out;
}

std::vector<double> MeasureDescriptor::midpoint_quantiles(std::size_t n) const {
  std::vector<double> q(n);
  for (std::size_t i = 0; i < n; ++i)
    q[i] = quantile((static_cast<double>(i) + 0.5) / static_cast<double>(n));
  return q;
}

SupportedDensity MeasureDescriptor::as_density() const {
  return {support_, [m = *this](double x) { return m.density(x); }};
}

MeasureDescriptor equilibrium_measure(double c) {
  if (!std::isfinite(c)) throw DomainError("c must be finite");
  if (c >= -2.0) {
    const double a2 = 2.0 / 3.0 * (std::sqrt(c * c + 12.0) - c);
    const double b0 = (c + std::sqrt(c * c / 4.0 + 3.0)) / 3.0;
    return MeasureDescriptor::one_cut(std::sqrt(a2), b0);
  }
  return MeasureDescriptor::two_cut(std::sqrt(-2.0 - c), std::sqrt(2.0 - c));
}

} // namespace freefp
