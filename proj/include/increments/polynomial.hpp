#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace increments::laplace {

/// Real polynomial in p with ascending coefficients. Trailing exact zeros are
/// trimmed, so the zero polynomial has no coefficients and degree -1.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients);
  Polynomial(std::initializer_list<double> coefficients);

  static Polynomial constant(double value);
  /// (p + shift)^power, expanded by repeated multiplication.
  static Polynomial shifted_power(double shift, unsigned power);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<double>& coefficients() const noexcept { return coeffs_; }
  double coefficient(std::size_t power) const noexcept {
    return power < coeffs_.size() ? coeffs_[power] : 0.0;
  }
  double leading() const noexcept { return coeffs_.empty() ? 0.0 : coeffs_.back(); }
  double max_abs_coefficient() const noexcept;

  double operator()(double p) const noexcept;
  std::complex<double> operator()(std::complex<double> p) const noexcept;

  Polynomial derivative() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(double scale);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= -1.0; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
  void trim() noexcept;

  std::vector<double> coeffs_;
};

/// Complex roots via eigenvalues of the companion matrix. Requires degree >= 1.
std::vector<std::complex<double>> roots(const Polynomial& poly);

} // namespace increments::laplace
