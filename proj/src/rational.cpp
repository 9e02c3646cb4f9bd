#include "increments/rational.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace increments::laplace {

namespace {
constexpr double kSameDenominatorTolerance = 1e-13;

RationalFn combine(const RationalFn& a, const RationalFn& b, double sign) {
  if (same_denominator(a.denominator(), b.denominator())) {
    return RationalFn(a.numerator() + sign * b.numerator(), a.denominator());
  }
  return RationalFn(a.numerator() * b.denominator() + sign * (b.numerator() * a.denominator()),
                    a.denominator() * b.denominator());
}
} // namespace

RationalFn::RationalFn(Polynomial numerator, Polynomial denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.is_zero()) {
    throw std::invalid_argument("denominator is identically zero");
  }
  const double lead = den_.leading();
  if (lead != 1.0) {
    num_ *= 1.0 / lead;
    den_ *= 1.0 / lead;
  }
}

RationalFn RationalFn::derivative() const {
  Polynomial top = num_.derivative() * den_ - num_ * den_.derivative();
  return RationalFn(std::move(top), den_ * den_);
}

RationalFn& RationalFn::operator*=(double scale) {
  num_ *= scale;
  return *this;
}

RationalFn operator*(const RationalFn& a, const RationalFn& b) {
  return RationalFn(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFn operator+(const RationalFn& a, const RationalFn& b) { return combine(a, b, 1.0); }

RationalFn operator-(const RationalFn& a, const RationalFn& b) { return combine(a, b, -1.0); }

bool same_denominator(const Polynomial& a, const Polynomial& b) noexcept {
  if (a.degree() != b.degree()) {
    return false;
  }
  const double scale = std::max(a.max_abs_coefficient(), b.max_abs_coefficient());
  for (std::size_t i = 0; i < a.coefficients().size(); ++i) {
    if (std::abs(a.coefficient(i) - b.coefficient(i)) > kSameDenominatorTolerance * scale) {
      return false;
    }
  }
  return true;
}

std::string to_json(const RationalFn& f) {
  nlohmann::ordered_json j;
  j["num"] = f.numerator().coefficients();
  j["den"] = f.denominator().coefficients();
  return j.dump();
}

RationalFn rational_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("rational function JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("num") || !j.contains("den")) {
    throw std::invalid_argument("rational function JSON needs \"num\" and \"den\" arrays");
  }
  return RationalFn(Polynomial(j.at("num").get<std::vector<double>>()),
                    Polynomial(j.at("den").get<std::vector<double>>()));
}

} // namespace increments::laplace
