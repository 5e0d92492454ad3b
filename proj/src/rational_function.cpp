#include "hartogs/rational_function.hpp"

#include <stdexcept>

namespace hartogs::algebra {

RationalFunction::RationalFunction(const UniPoly& num, const UniPoly& den) {
  if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num.is_zero()) {
    den_ = UniPoly::constant(Rational(1));
    return;
  }
  const UniPoly g = gcd(num, den);
  UniPoly n = divide(num, g).quotient;
  UniPoly d = divide(den, g).quotient;
  const Rational lead = d.leading();
  num_ = n.scaled(lead.inverse());
  den_ = d.monic();
}

RationalFunction::RationalFunction(const UniPoly& p)
    : num_(p), den_(UniPoly::constant(Rational(1))) {}

std::optional<UniPoly> RationalFunction::as_polynomial() const {
  if (!is_polynomial()) return std::nullopt;
  return num_;
}

Rational RationalFunction::operator()(const Rational& at) const {
  const Rational d = den_(at);
  if (d.is_zero()) throw std::domain_error("rational function evaluated at a pole x = " + at.to_string());
  return num_(at) / d;
}

std::string RationalFunction::to_string(std::string_view var) const {
  if (is_polynomial()) return num_.to_string(var);
  return "(" + num_.to_string(var) + ") / (" + den_.to_string(var) + ")";
}

}  // namespace hartogs::algebra
