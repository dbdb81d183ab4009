#include "freefp/polynomial.hpp"

#include <cmath>

#include "freefp/errors.hpp"

namespace freefp {

PolynomialCoeffs::PolynomialCoeffs(std::vector<double> ascending)
    : coeffs_(std::move(ascending)) {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double PolynomialCoeffs::operator()(double x) const noexcept {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::complex<double> PolynomialCoeffs::operator()(std::complex<double> z) const noexcept {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

PolynomialCoeffs operator*(const PolynomialCoeffs& p, const PolynomialCoeffs& q) {
  if (p.is_zero() || q.is_zero()) return {};
  std::vector<double> out(p.coeffs_.size() + q.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < q.coeffs_.size(); ++j) out[i + j] += p.coeffs_[i] * q.coeffs_[j];
  return PolynomialCoeffs(std::move(out));
}

namespace {

int sign_changes(const std::vector<double>& seq) {
  constexpr double zero_cut = 1e-14;
  int changes = 0, last = 0;
  for (double v : seq) {
    if (std::abs(v) < zero_cut) continue;
    const int s = v > 0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

} // namespace

DescartesCounts descartes_counts(const PolynomialCoeffs& p) {
  if (p.is_zero()) throw DomainError("Descartes' rule needs a nonzero polynomial");
  const auto& a = p.coefficients();
  std::vector<double> pos(a.rbegin(), a.rend());
  std::vector<double> neg(pos);
  const int n = p.degree();
  for (int k = 0; k <= n; ++k)
    if (k % 2 == 1) neg[static_cast<std::size_t>(n - k)] = -neg[static_cast<std::size_t>(n - k)];
  return {sign_changes(pos), sign_changes(neg)};
}

std::vector<int> admissible_root_counts(int sign_changes) {
  std::vector<int> out;
  for (int v = sign_changes; v >= 0; v -= 2) out.push_back(v);
  return out;
}

} // namespace freefp
