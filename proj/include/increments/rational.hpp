#pragma once

#include "increments/polynomial.hpp"

#include <complex>
#include <string>

namespace increments::laplace {

/// numerator(p) / denominator(p) with a monic denominator.
class RationalFn {
public:
  /// Throws std::invalid_argument for a zero denominator.
  RationalFn(Polynomial numerator, Polynomial denominator);

  const Polynomial& numerator() const noexcept { return num_; }
  const Polynomial& denominator() const noexcept { return den_; }

  double operator()(double p) const noexcept { return num_(p) / den_(p); }
  std::complex<double> operator()(std::complex<double> p) const noexcept {
    return num_(p) / den_(p);
  }

  /// Quotient rule in coefficient space: (N'D - ND') / D^2.
  RationalFn derivative() const;

  RationalFn& operator*=(double scale);

  friend RationalFn operator*(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator*(RationalFn a, double s) { return a *= s; }
  friend RationalFn operator*(double s, RationalFn a) { return a *= s; }
  friend RationalFn operator+(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator-(RationalFn a) { return a *= -1.0; }

private:
  Polynomial num_;
  Polynomial den_;
};

/// Whether two denominators agree coefficient-wise to relative 1e-13 of the
/// larger coefficient magnitude; such fractions are added without
/// cross-multiplication.
bool same_denominator(const Polynomial& a, const Polynomial& b) noexcept;

/// {"num": [...], "den": [...]} with ascending coefficients.
std::string to_json(const RationalFn& f);
RationalFn rational_from_json(const std::string& text);

} // namespace increments::laplace
