#include "increments/polynomial.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace increments::laplace {

Polynomial::Polynomial(std::vector<double> coefficients) : coeffs_(std::move(coefficients)) {
  trim();
}

Polynomial::Polynomial(std::initializer_list<double> coefficients) : coeffs_(coefficients) {
  trim();
}

Polynomial Polynomial::constant(double value) { return Polynomial(std::vector<double>{value}); }

Polynomial Polynomial::shifted_power(double shift, unsigned power) {
  const Polynomial factor{shift, 1.0};
  Polynomial result = constant(1.0);
  for (unsigned i = 0; i < power; ++i) {
    result = result * factor;
  }
  return result;
}

double Polynomial::max_abs_coefficient() const noexcept {
  double largest = 0.0;
  for (double c : coeffs_) {
    largest = std::max(largest, std::abs(c));
  }
  return largest;
}

double Polynomial::operator()(double p) const noexcept {
  double value = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    value = value * p + *it;
  }
  return value;
}

std::complex<double> Polynomial::operator()(std::complex<double> p) const noexcept {
  std::complex<double> value = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    value = value * p + *it;
  }
  return value;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) {
    return {};
  }
  std::vector<double> out(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    out[i - 1] = static_cast<double>(i) * coeffs_[i];
  }
  return Polynomial(std::move(out));
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) {
    coeffs_.resize(other.coeffs_.size(), 0.0);
  }
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) {
    coeffs_[i] += other.coeffs_[i];
  }
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) {
    coeffs_.resize(other.coeffs_.size(), 0.0);
  }
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) {
    coeffs_[i] -= other.coeffs_[i];
  }
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(double scale) {
  for (double& c : coeffs_) {
    c *= scale;
  }
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) {
    return {};
  }
  std::vector<double> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return Polynomial(std::move(out));
}

void Polynomial::trim() noexcept {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) {
    coeffs_.pop_back();
  }
}

std::vector<std::complex<double>> roots(const Polynomial& poly) {
  const int degree = poly.degree();
  if (degree < 1) {
    throw std::invalid_argument("roots of a constant polynomial are undefined");
  }
  const double lead = poly.leading();
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
  for (int i = 1; i < degree; ++i) {
    companion(i, i - 1) = 1.0;
  }
  for (int i = 0; i < degree; ++i) {
    companion(i, degree - 1) = -poly.coefficient(static_cast<std::size_t>(i)) / lead;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("companion eigenvalue iteration did not converge");
  }
  const auto values = solver.eigenvalues();
  std::vector<std::complex<double>> out(values.data(), values.data() + values.size());
  return out;
}

} // namespace increments::laplace
