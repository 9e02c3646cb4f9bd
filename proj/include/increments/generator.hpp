#pragma once

#include "increments/jump_law.hpp"

#include <vector>

namespace increments::generator {

/// g'(0; p) = Σ_j rate_j (e^{-p size_j} - 1). Requires p >= 0.
double eta(const AtomicJumpLaw& law, double p);

/// g(t; p) = E[e^{-p N_t}] = exp(t eta(p)).
double g_of(const AtomicJumpLaw& law, double t, double p);

/// |g(t + s; p) - g(t; p) g(s; p)|.
double semigroup_residual(const AtomicJumpLaw& law, double t, double s, double p);

/// P(N_t = n) for n = 0..n_max, read off as the coefficients of g(t; p) as a
/// power series in e^{-p}:
///   P(0) = e^{-Λt},  P(n) = (t / n) Σ_{m} m rate_m P(n - m).
std::vector<double> pmf_from_generator(const AtomicJumpLaw& law, double t, unsigned n_max);

} // namespace increments::generator
