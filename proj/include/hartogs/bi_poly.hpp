#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hartogs/rational.hpp"
#include "hartogs/uni_poly.hpp"

namespace hartogs::algebra {

enum class Variable { x, y };

/// Sparse polynomial in two variables over the rationals.
///
/// Terms are keyed by the exponent pair (i, j) of x^i y^j and zero
/// coefficients are never stored, so structural equality is semantic
/// equality.
class BiPoly {
 public:
  using Exponents = std::pair<unsigned, unsigned>;
  using TermMap = std::map<Exponents, Rational>;

  BiPoly() = default;

  static BiPoly constant(const Rational& c);
  static BiPoly monomial(const Rational& c, unsigned x_power, unsigned y_power);
  static BiPoly x();
  static BiPoly y();
  /// Embeds p(t) with t replaced by the chosen variable.
  static BiPoly lift(const UniPoly& p, Variable v);
  /// a*x + b*y + c.
  static BiPoly linear(const Rational& a, const Rational& b, const Rational& c);

  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  Rational coefficient(unsigned x_power, unsigned y_power) const;
  /// -1 for the zero polynomial.
  int degree(Variable v) const;
  int total_degree() const;

  Rational operator()(const Rational& x, const Rational& y) const;

  BiPoly scaled(const Rational& c) const;
  /// p(x_image, y_image).
  BiPoly substitute(const BiPoly& x_image, const BiPoly& y_image) const;
  /// Fix one variable to a value; the result is univariate in the other one.
  UniPoly restrict(Variable fixed, const Rational& value) const;

  /// Coefficients of v^0, v^1, ... each as a polynomial in the other variable.
  std::vector<UniPoly> coefficients_in(Variable v) const;
  /// Inverse of coefficients_in.
  static BiPoly from_coefficients(Variable v, const std::vector<UniPoly>& coefficients);

  BiPoly& operator+=(const BiPoly& rhs);
  BiPoly& operator-=(const BiPoly& rhs);
  BiPoly& operator*=(const BiPoly& rhs);

  friend BiPoly operator+(BiPoly lhs, const BiPoly& rhs) { return lhs += rhs; }
  friend BiPoly operator-(BiPoly lhs, const BiPoly& rhs) { return lhs -= rhs; }
  friend BiPoly operator*(BiPoly lhs, const BiPoly& rhs) { return lhs *= rhs; }
  friend BiPoly operator-(const BiPoly& p) { return p.scaled(Rational(-1)); }
  friend bool operator==(const BiPoly&, const BiPoly&) = default;

  /// Graded lexicographic rendering, e.g. "3/4*x + 1/2*y - 1".
  std::string to_string(const std::string& x_name = "x", const std::string& y_name = "y") const;

 private:
  void add_term(const Exponents& e, const Rational& c);

  TermMap terms_;
};

/// Pseudo-division of num by den viewed as univariate in `v` with
/// coefficients in Q[other]: multiplier*num = quotient*den + remainder,
/// where multiplier is a polynomial in the other variable and the degree of
/// the remainder in `v` is below that of den.
struct BiPolyDivision {
  BiPoly quotient;
  BiPoly remainder;
  BiPoly multiplier;
};

/// Throws std::domain_error when den is zero.
BiPolyDivision pseudo_divide(const BiPoly& num, const BiPoly& den, Variable v);

/// The exact quotient num/den when den divides num in Q[x, y]; empty otherwise.
std::optional<BiPoly> exact_divide(const BiPoly& num, const BiPoly& den, Variable v);

/// p(arg) for a univariate p and a bivariate argument.
BiPoly compose(const UniPoly& p, const BiPoly& arg);

/// (arg)_m = prod_{l=0}^{m-1} (arg + l).
BiPoly rising_factorial(const BiPoly& arg, unsigned m);

}  // namespace hartogs::algebra
