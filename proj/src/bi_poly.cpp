#include "hartogs/bi_poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hartogs::algebra {

namespace {

using Coeffs = std::vector<UniPoly>;

void trim(Coeffs& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

int degree(const Coeffs& c) { return static_cast<int>(c.size()) - 1; }

Coeffs scale(const Coeffs& c, const UniPoly& f) {
  Coeffs out;
  out.reserve(c.size());
  for (const auto& a : c) out.push_back(a * f);
  return out;
}

// c -= t * v^shift * den
void subtract_shifted(Coeffs& c, const UniPoly& t, std::size_t shift, const Coeffs& den) {
  if (c.size() < den.size() + shift) c.resize(den.size() + shift);
  for (std::size_t j = 0; j < den.size(); ++j) c[j + shift] -= t * den[j];
  trim(c);
}

}  // namespace

BiPoly BiPoly::constant(const Rational& c) { return monomial(c, 0, 0); }

BiPoly BiPoly::monomial(const Rational& c, unsigned x_power, unsigned y_power) {
  BiPoly p;
  p.add_term({x_power, y_power}, c);
  return p;
}

BiPoly BiPoly::x() { return monomial(Rational(1), 1, 0); }
BiPoly BiPoly::y() { return monomial(Rational(1), 0, 1); }

BiPoly BiPoly::lift(const UniPoly& p, Variable v) {
  BiPoly out;
  const auto& c = p.coefficients();
  for (unsigned k = 0; k < c.size(); ++k) {
    out.add_term(v == Variable::x ? Exponents{k, 0u} : Exponents{0u, k}, c[k]);
  }
  return out;
}

BiPoly BiPoly::linear(const Rational& a, const Rational& b, const Rational& c) {
  BiPoly p;
  p.add_term({1, 0}, a);
  p.add_term({0, 1}, b);
  p.add_term({0, 0}, c);
  return p;
}

void BiPoly::add_term(const Exponents& e, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Rational BiPoly::coefficient(unsigned x_power, unsigned y_power) const {
  const auto it = terms_.find({x_power, y_power});
  return it == terms_.end() ? Rational(0) : it->second;
}

int BiPoly::degree(Variable v) const {
  int best = -1;
  for (const auto& [e, c] : terms_) {
    best = std::max(best, static_cast<int>(v == Variable::x ? e.first : e.second));
  }
  return best;
}

int BiPoly::total_degree() const {
  int best = -1;
  for (const auto& [e, c] : terms_) best = std::max(best, static_cast<int>(e.first + e.second));
  return best;
}

Rational BiPoly::operator()(const Rational& x, const Rational& y) const {
  // Horner in x over coefficients that are polynomials in y.
  const auto rows = coefficients_in(Variable::x);
  Rational acc(0);
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    acc *= x;
    acc += (*it)(y);
  }
  return acc;
}

BiPoly BiPoly::scaled(const Rational& c) const {
  if (c.is_zero()) return BiPoly();
  BiPoly out = *this;
  for (auto& [e, v] : out.terms_) v *= c;
  return out;
}

BiPoly BiPoly::substitute(const BiPoly& x_image, const BiPoly& y_image) const {
  // Horner in x, each coefficient (a polynomial in y) composed with y_image.
  const auto rows = coefficients_in(Variable::x);
  BiPoly acc;
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    acc *= x_image;
    acc += compose(*it, y_image);
  }
  return acc;
}

UniPoly BiPoly::restrict(Variable fixed, const Rational& value) const {
  const Variable free = fixed == Variable::x ? Variable::y : Variable::x;
  const auto rows = coefficients_in(free);
  std::vector<Rational> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row(value));
  return UniPoly(std::move(out));
}

std::vector<UniPoly> BiPoly::coefficients_in(Variable v) const {
  const int deg = degree(v);
  if (deg < 0) return {};
  std::vector<std::vector<Rational>> raw(static_cast<std::size_t>(deg) + 1);
  for (const auto& [e, c] : terms_) {
    const unsigned outer = v == Variable::x ? e.first : e.second;
    const unsigned inner = v == Variable::x ? e.second : e.first;
    auto& row = raw[outer];
    if (row.size() <= inner) row.resize(inner + 1);
    row[inner] = c;
  }
  std::vector<UniPoly> out;
  out.reserve(raw.size());
  for (auto& row : raw) out.emplace_back(std::move(row));
  return out;
}

BiPoly BiPoly::from_coefficients(Variable v, const std::vector<UniPoly>& coefficients) {
  BiPoly out;
  for (unsigned outer = 0; outer < coefficients.size(); ++outer) {
    const auto& c = coefficients[outer].coefficients();
    for (unsigned inner = 0; inner < c.size(); ++inner) {
      out.add_term(v == Variable::x ? Exponents{outer, inner} : Exponents{inner, outer}, c[inner]);
    }
  }
  return out;
}

BiPoly& BiPoly::operator+=(const BiPoly& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

BiPoly& BiPoly::operator*=(const BiPoly& rhs) {
  BiPoly out;
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : rhs.terms_) {
      out.add_term({ea.first + eb.first, ea.second + eb.second}, ca * cb);
    }
  }
  terms_ = std::move(out.terms_);
  return *this;
}

std::string BiPoly::to_string(const std::string& x_name, const std::string& y_name) const {
  if (is_zero()) return "0";
  std::vector<std::pair<Exponents, Rational>> ordered(terms_.begin(), terms_.end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    const unsigned da = a.first.first + a.first.second;
    const unsigned db = b.first.first + b.first.second;
    if (da != db) return da > db;
    return a.first.first > b.first.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : ordered) {
    const Rational mag = c.abs();
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    std::vector<std::string> factors;
    if (e.first > 0) factors.push_back(x_name + (e.first > 1 ? "^" + std::to_string(e.first) : ""));
    if (e.second > 0) factors.push_back(y_name + (e.second > 1 ? "^" + std::to_string(e.second) : ""));
    if (factors.empty()) {
      os << mag;
      continue;
    }
    if (mag != Rational(1)) os << mag << "*";
    for (std::size_t k = 0; k < factors.size(); ++k) os << (k ? "*" : "") << factors[k];
  }
  return os.str();
}

BiPolyDivision pseudo_divide(const BiPoly& num, const BiPoly& den, Variable v) {
  if (den.is_zero()) throw std::domain_error("bivariate division by zero");
  Coeffs rem = num.coefficients_in(v);
  const Coeffs d = den.coefficients_in(v);
  const UniPoly& lead = d.back();
  const std::size_t dd = d.size() - 1;

  Coeffs quot;
  UniPoly multiplier = UniPoly::constant(Rational(1));
  while (degree(rem) >= static_cast<int>(dd)) {
    const std::size_t shift = rem.size() - 1 - dd;
    const UniPoly lr = rem.back();
    if (quot.size() <= shift) quot.resize(shift + 1);
    const PolyDivision step = divide(lr, lead);
    if (step.remainder.is_zero()) {
      quot[shift] += step.quotient;
      subtract_shifted(rem, step.quotient, shift, d);
    } else {
      // Leading coefficient does not divide: scale everything by lead.
      rem = scale(rem, lead);
      quot = scale(quot, lead);
      multiplier *= lead;
      quot[shift] += lr;
      subtract_shifted(rem, lr, shift, d);
    }
  }
  trim(quot);
  const Variable other = v == Variable::x ? Variable::y : Variable::x;
  return {BiPoly::from_coefficients(v, quot), BiPoly::from_coefficients(v, rem),
          BiPoly::lift(multiplier, other)};
}

std::optional<BiPoly> exact_divide(const BiPoly& num, const BiPoly& den, Variable v) {
  const BiPolyDivision div = pseudo_divide(num, den, v);
  if (!div.remainder.is_zero()) return std::nullopt;
  // The multiplier is free of v.
  const UniPoly m = div.multiplier.coefficients_in(v).front();
  std::vector<UniPoly> q = div.quotient.coefficients_in(v);
  for (auto& c : q) {
    const PolyDivision step = divide(c, m);
    if (!step.remainder.is_zero()) return std::nullopt;
    c = step.quotient;
  }
  return BiPoly::from_coefficients(v, q);
}

BiPoly compose(const UniPoly& p, const BiPoly& arg) {
  const auto& c = p.coefficients();
  BiPoly acc;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc *= arg;
    acc += BiPoly::constant(*it);
  }
  return acc;
}

BiPoly rising_factorial(const BiPoly& arg, unsigned m) {
  BiPoly product = BiPoly::constant(Rational(1));
  for (unsigned l = 0; l < m; ++l) product *= arg + BiPoly::constant(Rational(l));
  return product;
}

}  // namespace hartogs::algebra
