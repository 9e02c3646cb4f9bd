#pragma once

#include "increments/polynomial.hpp"
#include "increments/rational.hpp"

namespace increments::laplace {

/// lambda^n / (p + lambda)^{n+1}, the transform of the Poisson count pmf.
RationalFn hat_closed_form(unsigned n, double rate);

/// Σ_{k=0}^{n} hat_k * hat_{n-k}, summed over a shared denominator.
RationalFn hat_convolution(unsigned n, double rate);

/// Numerator left after clearing denominators in `lhs - rhs`, together with
/// the magnitude of the terms that were subtracted.
struct IdentityResidual {
  Polynomial residual;
  double scale = 0.0;

  /// max |residual coefficient| / scale; 0 when the residual vanishes exactly.
  double relative_error() const noexcept;
};

IdentityResidual clear_difference(const RationalFn& lhs, const RationalFn& rhs);

/// -d/dp hat_n - Σ_k hat_k hat_{n-k}.
IdentityResidual recursion_residual(unsigned n, double rate);

/// d/dp[(p + lambda)^2 hat_n] + (n - 1) lambda^n / (p + lambda)^n.
IdentityResidual integrable_form_residual(unsigned n, double rate);

/// Checks Σ_{k=1}^{n-1} hat_k hat_{n-k} = (n - 1) lambda^n / (p + lambda)^{n+2}.
/// The left side is folded the way the induction step folds it: pairs
/// k <-> n - k doubled, plus the square of the middle term when n is even.
/// Returns the max relative coefficient error. Requires n >= 2.
double cross_term_identity_check(unsigned n, double rate);

/// (lambda t)^n e^{-lambda t} / n!, in log space for n > 20.
double invert_exact(unsigned n, double rate, double t);

inline constexpr unsigned kDefaultTalbotNodes = 32;

/// Fixed Talbot inversion of a strictly proper rational transform. The
/// contour is shifted to the rightmost pole so the result keeps its relative
/// accuracy when f(t) decays like that pole.
double invert_numeric(const RationalFn& transform, double t,
                      unsigned nodes = kDefaultTalbotNodes);

} // namespace increments::laplace
