#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hartogs/rational.hpp"

namespace hartogs::algebra {

/// Dense univariate polynomial over the rationals.
///
/// coefficients()[k] is the coefficient of x^k. The representation is
/// canonical: no trailing zero coefficient, and the zero polynomial is the
/// empty sequence, so operator== is semantic equality.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coefficients);

  static UniPoly constant(const Rational& c);
  static UniPoly monomial(const Rational& c, std::size_t power);
  /// The identity polynomial x.
  static UniPoly x();

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(std::size_t power) const;
  /// Throws std::domain_error for the zero polynomial.
  const Rational& leading() const;

  Rational operator()(const Rational& at) const;

  UniPoly scaled(const Rational& c) const;
  /// p(c*x + e).
  UniPoly compose_affine(const Rational& c, const Rational& e) const;
  /// p(q(x)).
  UniPoly compose(const UniPoly& inner) const;
  /// Leading coefficient 1; zero stays zero.
  UniPoly monic() const;

  UniPoly& operator+=(const UniPoly& rhs);
  UniPoly& operator-=(const UniPoly& rhs);
  UniPoly& operator*=(const UniPoly& rhs);

  friend UniPoly operator+(UniPoly lhs, const UniPoly& rhs) { return lhs += rhs; }
  friend UniPoly operator-(UniPoly lhs, const UniPoly& rhs) { return lhs -= rhs; }
  friend UniPoly operator*(UniPoly lhs, const UniPoly& rhs) { return lhs *= rhs; }
  friend UniPoly operator-(const UniPoly& p) { return p.scaled(Rational(-1)); }
  friend bool operator==(const UniPoly&, const UniPoly&) = default;

  /// Human-readable form, highest power first, e.g. "x^2 - 3/2*x + 1".
  std::string to_string(std::string_view var = "x") const;

 private:
  void trim();

  std::vector<Rational> coeffs_;
};

struct PolyDivision {
  UniPoly quotient;
  UniPoly remainder;
};

/// Long division num = quotient*den + remainder with deg(remainder) < deg(den).
/// Throws std::domain_error when den is the zero polynomial.
PolyDivision divide(const UniPoly& num, const UniPoly& den);

/// Monic greatest common divisor; gcd(0, 0) = 0.
UniPoly gcd(UniPoly a, UniPoly b);

/// (x + shift)_m = prod_{l=0}^{m-1} (x + shift + l) as a monic polynomial.
UniPoly rising_factorial_poly(const Rational& shift, unsigned m);

}  // namespace hartogs::algebra
