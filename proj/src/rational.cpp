#include "hartogs/rational.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace hartogs::algebra {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw std::invalid_argument("malformed integer");
  }
  mpz_class z(std::string(s), 10);
  return negative ? mpz_class(-z) : z;
}

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

// Splits |z| into a 64-bit mantissa and a binary exponent.
std::pair<long double, long> split(const mpz_class& z) {
  mpz_class a = abs(z);
  const std::size_t bits = mpz_sizeinbase(a.get_mpz_t(), 2);
  long exponent = 0;
  if (bits > 64) {
    exponent = static_cast<long>(bits - 64);
    a >>= exponent;
  }
  return {static_cast<long double>(a.get_ui()), exponent};
}

}  // namespace

Rational::Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) {
  if (value_.get_den() == 0) throw std::domain_error("rational with zero denominator");
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  try {
    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
      const mpz_class num = parse_integer(s.substr(0, slash));
      std::string_view den_text = s.substr(slash + 1);
      if (!den_text.empty() && den_text.front() == '+') den_text.remove_prefix(1);
      const mpz_class den = parse_integer(den_text);
      if (den == 0) throw std::invalid_argument("zero denominator");
      return Rational(num, den);
    }

    // Decimal literal with optional exponent.
    long exponent = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      const mpz_class ez = parse_integer(s.substr(e + 1));
      if (!ez.fits_slong_p() || ::abs(ez) > 4096) throw std::invalid_argument("exponent out of range");
      exponent = ez.get_si();
      s = s.substr(0, e);
    }
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
      negative = s.front() == '-';
      s.remove_prefix(1);
    }
    std::string digits;
    std::size_t fraction_digits = 0;
    if (const auto dot = s.find('.'); dot != std::string_view::npos) {
      const std::string_view whole = s.substr(0, dot);
      const std::string_view frac = s.substr(dot + 1);
      if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
          (whole.empty() && frac.empty())) {
        throw std::invalid_argument("malformed decimal");
      }
      digits = std::string(whole) + std::string(frac);
      fraction_digits = frac.size();
    } else {
      if (!all_digits(s)) throw std::invalid_argument("malformed number");
      digits = std::string(s);
    }
    mpz_class num(digits, 10);
    if (negative) num = -num;
    const long scale = exponent - static_cast<long>(fraction_digits);
    if (scale >= 0) return Rational(mpz_class(num * pow10(static_cast<unsigned long>(scale))), mpz_class(1));
    return Rational(num, pow10(static_cast<unsigned long>(-scale)));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("cannot parse rational \"" + std::string(text) + "\"");
  }
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  return Rational(mpq_class(1 / value_));
}

Rational Rational::pow(unsigned exponent) const {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), exponent);
  return Rational(num, den);
}

mpz_class Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return q;
}

std::string Rational::to_string() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

long double to_long_double(const mpz_class& z) {
  const auto [mantissa, exponent] = split(z);
  const long double v = std::ldexp(mantissa, static_cast<int>(exponent));
  return sgn(z) < 0 ? -v : v;
}

long double Rational::to_long_double() const {
  if (is_zero()) return 0.0L;
  const auto [nm, ne] = split(value_.get_num());
  const auto [dm, de] = split(value_.get_den());
  const long double v = std::ldexp(nm / dm, static_cast<int>(ne - de));
  return sign() < 0 ? -v : v;
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("division by zero");
  value_ /= rhs.value_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational binomial(unsigned n, unsigned k) {
  if (k > n) return Rational(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rational(r, mpz_class(1));
}

Rational factorial(unsigned n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return Rational(r, mpz_class(1));
}

Rational rising_factorial(const Rational& s, unsigned m) {
  Rational product(1);
  for (unsigned l = 0; l < m; ++l) product *= s + Rational(l);
  return product;
}

}  // namespace hartogs::algebra
