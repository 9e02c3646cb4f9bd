#include "increments/generator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace increments::generator {

namespace {
void require_non_negative(double value, const char* what) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(std::string(what) + " must be non-negative and finite");
  }
}
} // namespace

double eta(const AtomicJumpLaw& law, double p) {
  require_non_negative(p, "p");
  double sum = 0.0;
  for (const auto& atom : law.atoms()) {
    sum += atom.rate * std::expm1(-p * static_cast<double>(atom.size));
  }
  return sum;
}

double g_of(const AtomicJumpLaw& law, double t, double p) {
  require_non_negative(t, "t");
  return std::exp(t * eta(law, p));
}

double semigroup_residual(const AtomicJumpLaw& law, double t, double s, double p) {
  return std::abs(g_of(law, t + s, p) - g_of(law, t, p) * g_of(law, s, p));
}

std::vector<double> pmf_from_generator(const AtomicJumpLaw& law, double t, unsigned n_max) {
  require_non_negative(t, "t");
  std::vector<double> pmf(n_max + 1u, 0.0);
  pmf[0] = std::exp(-law.total_rate() * t);
  for (unsigned n = 1; n <= n_max; ++n) {
    double sum = 0.0;
    for (const auto& atom : law.atoms()) {
      if (atom.size > n) {
        break;
      }
      sum += static_cast<double>(atom.size) * atom.rate * pmf[n - atom.size];
    }
    pmf[n] = t * sum / static_cast<double>(n);
  }
  return pmf;
}

} // namespace increments::generator
