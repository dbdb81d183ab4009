#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace freefp {

/// Dense real polynomial, coefficients in ascending degree. Trailing exact
/// zeros are dropped so the leading coefficient is nonzero unless the
/// polynomial is zero.
class PolynomialCoeffs {
public:
  PolynomialCoeffs() = default;
  explicit PolynomialCoeffs(std::vector<double> ascending);

  const std::vector<double>& coefficients() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  double operator[](std::size_t k) const noexcept {
    return k < coeffs_.size() ? coeffs_[k] : 0.0;
  }

  double operator()(double x) const noexcept;
  std::complex<double> operator()(std::complex<double> z) const noexcept;

  friend PolynomialCoeffs operator*(const PolynomialCoeffs& p, const PolynomialCoeffs& q);

private:
  std::vector<double> coeffs_;
};

struct DescartesCounts {
  int positive = 0;  // sign changes of (a_n, ..., a_0)
  int negative = 0;  // sign changes of ((-1)^n a_n, ..., a_0)
};

/// Coefficients smaller than 1e-14 in magnitude count as zero. Throws
/// DomainError for the zero polynomial.
DescartesCounts descartes_counts(const PolynomialCoeffs& p);

/// Root counts compatible with a sign-change bound: v, v-2, ..., down to 0/1.
std::vector<int> admissible_root_counts(int sign_changes);

} // namespace freefp
