#include "freefp/measure.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "freefp/errors.hpp"
#include "numerics.hpp"

namespace freefp {

double SupportedDensity::operator()(double x) const {
  for (const auto& iv : support)
    if (iv.contains(x)) return density(x);
  return 0.0;
}

double SupportedDensity::total_mass() const { return moment(0); }

double SupportedDensity::moment(int k) const {
  double acc = 0.0;
  for (const auto& iv : support)
    acc += detail::adaptive_angle(
        [&](double x) { return std::pow(x, k) * density(x); }, iv, 1e-14);
  return acc;
}

GridDensity::GridDensity(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
  for (const auto& p : pieces_) {
    if (p.nodes.size() < 2 || p.nodes.size() != p.values.size())
      throw DomainError("grid density piece needs >= 2 matching nodes/values");
    if (!std::is_sorted(p.nodes.begin(), p.nodes.end()))
      throw DomainError("grid density nodes must ascend");
  }
}

GridDensity GridDensity::sample(const SupportedDensity& density,
                                std::size_t nodes_per_interval) {
  if (nodes_per_interval < 2) throw DomainError("grid needs at least 2 nodes");
  std::vector<Piece> pieces;
  for (const auto& iv : density.support) {
    Piece p{iv, detail::chebyshev_lobatto(iv, nodes_per_interval), {}};
    p.values.reserve(p.nodes.size());
    for (double x : p.nodes) p.values.push_back(density.density(x));
    pieces.push_back(std::move(p));
  }
  return GridDensity(std::move(pieces));
}

double GridDensity::operator()(double x) const {
  for (const auto& p : pieces_) {
    if (!p.interval.contains(x)) continue;
    auto it = std::upper_bound(p.nodes.begin(), p.nodes.end(), x);
    if (it == p.nodes.end()) return p.values.back();
    const auto j = static_cast<std::size_t>(it - p.nodes.begin());
    if (j == 0) return p.values.front();
    const double s = (x - p.nodes[j - 1]) / (p.nodes[j] - p.nodes[j - 1]);
    return (1.0 - s) * p.values[j - 1] + s * p.values[j];
  }
  return 0.0;
}

double GridDensity::moment(int k) const {
  // Per panel, integral of x^k (r0 + s (x - y0)) in closed form.
  double acc = 0.0;
  for (const auto& p : pieces_) {
    for (std::size_t j = 0; j + 1 < p.nodes.size(); ++j) {
      const double y0 = p.nodes[j], y1 = p.nodes[j + 1];
      if (y1 == y0) continue;
      const double s = (p.values[j + 1] - p.values[j]) / (y1 - y0);
      const double c0 = p.values[j] - s * y0;  // density = c0 + s x
      auto prim = [&](double x) {
        return c0 * std::pow(x, k + 1) / (k + 1) + s * std::pow(x, k + 2) / (k + 2);
      };
      acc += prim(y1) - prim(y0);
    }
  }
  return acc;
}

} // namespace freefp
