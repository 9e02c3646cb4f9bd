#include "increments/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace increments::laplace {

namespace {

void require_rate(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw std::invalid_argument("rate must be positive and finite");
  }
}

double rightmost_pole(const Polynomial& denominator) {
  double rightmost = -std::numeric_limits<double>::infinity();
  for (const auto& root : roots(denominator)) {
    rightmost = std::max(rightmost, root.real());
  }
  return rightmost;
}

} // namespace

RationalFn hat_closed_form(unsigned n, double rate) {
  require_rate(rate);
  return RationalFn(Polynomial::constant(std::pow(rate, static_cast<double>(n))),
                    Polynomial::shifted_power(rate, n + 1));
}

RationalFn hat_convolution(unsigned n, double rate) {
  RationalFn sum = hat_closed_form(0, rate) * hat_closed_form(n, rate);
  for (unsigned k = 1; k <= n; ++k) {
    sum = sum + hat_closed_form(k, rate) * hat_closed_form(n - k, rate);
  }
  return sum;
}

double IdentityResidual::relative_error() const noexcept {
  if (residual.is_zero()) {
    return 0.0;
  }
  return residual.max_abs_coefficient() / scale;
}

IdentityResidual clear_difference(const RationalFn& lhs, const RationalFn& rhs) {
  const Polynomial left = lhs.numerator() * rhs.denominator();
  const Polynomial right = rhs.numerator() * lhs.denominator();
  IdentityResidual out;
  out.scale = std::max(left.max_abs_coefficient(), right.max_abs_coefficient());
  out.residual = left - right;
  return out;
}

IdentityResidual recursion_residual(unsigned n, double rate) {
  return clear_difference(-hat_closed_form(n, rate).derivative(), hat_convolution(n, rate));
}

IdentityResidual integrable_form_residual(unsigned n, double rate) {
  const RationalFn square(Polynomial::shifted_power(rate, 2), Polynomial::constant(1.0));
  const RationalFn lhs = (square * hat_closed_form(n, rate)).derivative();
  const RationalFn rhs(Polynomial::constant(-(static_cast<double>(n) - 1.0) *
                                            std::pow(rate, static_cast<double>(n))),
                       Polynomial::shifted_power(rate, n));
  return clear_difference(lhs, rhs);
}

double cross_term_identity_check(unsigned n, double rate) {
  if (n < 2) {
    throw std::invalid_argument("cross-term identity needs n >= 2");
  }
  require_rate(rate);
  const unsigned half = n / 2;
  const unsigned paired = n % 2 == 0 ? half - 1 : half;

  RationalFn folded(Polynomial{}, Polynomial::constant(1.0));
  for (unsigned k = 1; k <= paired; ++k) {
    folded = folded + 2.0 * (hat_closed_form(k, rate) * hat_closed_form(n - k, rate));
  }
  if (n % 2 == 0) {
    const RationalFn middle = hat_closed_form(half, rate);
    folded = folded + middle * middle;
  }
  const RationalFn expected(
      Polynomial::constant((static_cast<double>(n) - 1.0) * std::pow(rate, static_cast<double>(n))),
      Polynomial::shifted_power(rate, n + 2));
  return clear_difference(folded, expected).relative_error();
}

double invert_exact(unsigned n, double rate, double t) {
  require_rate(rate);
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("t must be non-negative and finite");
  }
  const double mean = rate * t;
  if (mean == 0.0) {
    return n == 0 ? 1.0 : 0.0;
  }
  const double count = static_cast<double>(n);
  if (n > 20) {
    return std::exp(count * std::log(mean) - mean - std::lgamma(count + 1.0));
  }
  return std::pow(mean, count) * std::exp(-mean) / std::tgamma(count + 1.0);
}

double invert_numeric(const RationalFn& transform, double t, unsigned nodes) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("numerical inversion needs t > 0");
  }
  if (nodes < 2) {
    throw std::invalid_argument("Talbot inversion needs at least 2 nodes");
  }
  const Polynomial& num = transform.numerator();
  const Polynomial& den = transform.denominator();
  if (num.is_zero()) {
    return 0.0;
  }
  if (num.degree() >= den.degree()) {
    throw std::invalid_argument("transform must be strictly proper to be inverted");
  }

  const double shift = rightmost_pole(den);
  const double m = static_cast<double>(nodes);
  const double r = 2.0 * m / (5.0 * t);
  const double crossing = shift + r;

  double sum = 0.5 * transform(crossing) * std::exp(crossing * t);
  for (unsigned k = 1; k < nodes; ++k) {
    const double theta = static_cast<double>(k) * std::numbers::pi / m;
    const double cot = std::cos(theta) / std::sin(theta);
    const std::complex<double> s(shift + r * theta * cot, r * theta);
    const double sigma = theta + (theta * cot - 1.0) * cot;
    sum += (std::exp(t * s) * transform(s) * std::complex<double>(1.0, sigma)).real();
  }
  return r / m * sum;
}

} // namespace increments::laplace
