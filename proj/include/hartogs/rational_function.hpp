#pragma once

#include <optional>
#include <string>

#include "hartogs/uni_poly.hpp"

namespace hartogs::algebra {

/// Quotient of univariate polynomials kept in lowest terms with a monic
/// denominator.
class RationalFunction {
 public:
  /// Throws std::domain_error when den is the zero polynomial.
  RationalFunction(const UniPoly& num, const UniPoly& den);
  explicit RationalFunction(const UniPoly& p);

  const UniPoly& numerator() const { return num_; }
  const UniPoly& denominator() const { return den_; }

  bool is_polynomial() const { return den_.degree() == 0; }
  std::optional<UniPoly> as_polynomial() const;

  /// Throws std::domain_error at a pole.
  Rational operator()(const Rational& at) const;

  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

  std::string to_string(std::string_view var = "x") const;

 private:
  UniPoly num_;
  UniPoly den_;
};

}  // namespace hartogs::algebra
