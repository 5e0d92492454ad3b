#pragma once

#include <compare>
#include <concepts>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hartogs::algebra {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Thin value wrapper over GMP's mpq_class. Every constructor canonicalizes,
/// so two equal rationals always share one representation.
class Rational {
 public:
  Rational() = default;

  template <std::integral T>
  Rational(T value) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<T>) {
      value_ = mpz_class(static_cast<long>(value));
    } else {
      value_ = mpz_class(static_cast<unsigned long>(value));
    }
  }

  /// num/den; throws std::domain_error when den == 0.
  Rational(long num, long den);
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(mpq_class value);

  /// Accepts "7", "-3/4", "+2", "0.125" and "-1.5e-2" (decimal input is exact).
  static Rational parse(std::string_view text);

  const mpq_class& value() const { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  Rational abs() const;
  /// Multiplicative inverse; throws std::domain_error on zero.
  Rational inverse() const;
  Rational pow(unsigned exponent) const;
  /// Largest integer <= value.
  mpz_class floor() const;

  /// "p/q", or "p" when the denominator is 1.
  std::string to_string() const;
  /// Correctly scaled to a 64-bit mantissa even when numerator and
  /// denominator overflow the floating-point range individually.
  long double to_long_double() const;
  double to_double() const { return static_cast<double>(to_long_double()); }

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  friend Rational operator-(const Rational& v) { return Rational(mpq_class(-v.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Binomial coefficient C(n, k) as an exact rational (0 when k > n).
Rational binomial(unsigned n, unsigned k);
/// n! exactly.
Rational factorial(unsigned n);
/// Raising factorial (s)_m = s (s+1) ... (s+m-1); (s)_0 = 1.
Rational rising_factorial(const Rational& s, unsigned m);

long double to_long_double(const mpz_class& z);

}  // namespace hartogs::algebra
