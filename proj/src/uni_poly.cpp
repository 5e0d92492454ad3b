#include "hartogs/uni_poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hartogs::algebra {

UniPoly::UniPoly(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

UniPoly UniPoly::constant(const Rational& c) { return UniPoly(std::vector<Rational>{c}); }

UniPoly UniPoly::monomial(const Rational& c, std::size_t power) {
  std::vector<Rational> coeffs(power + 1);
  coeffs[power] = c;
  return UniPoly(std::move(coeffs));
}

UniPoly UniPoly::x() { return monomial(Rational(1), 1); }

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Rational UniPoly::coefficient(std::size_t power) const {
  return power < coeffs_.size() ? coeffs_[power] : Rational(0);
}

const Rational& UniPoly::leading() const {
  if (coeffs_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

Rational UniPoly::operator()(const Rational& at) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= at;
    acc += *it;
  }
  return acc;
}

UniPoly UniPoly::scaled(const Rational& c) const {
  if (c.is_zero()) return UniPoly();
  std::vector<Rational> out = coeffs_;
  for (auto& a : out) a *= c;
  return UniPoly(std::move(out));
}

UniPoly UniPoly::compose_affine(const Rational& c, const Rational& e) const {
  return compose(UniPoly(std::vector<Rational>{e, c}));
}

UniPoly UniPoly::compose(const UniPoly& inner) const {
  UniPoly acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= inner;
    acc += constant(*it);
  }
  return acc;
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(leading().inverse());
}

UniPoly& UniPoly::operator+=(const UniPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const UniPoly& rhs) {
  if (is_zero() || rhs.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + rhs.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

std::string UniPoly::to_string(std::string_view var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = coeffs_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    const Rational mag = c.abs();
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = mag == Rational(1);
    if (k == 0) {
      os << mag;
      continue;
    }
    if (!unit) os << mag << "*";
    os << var;
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

PolyDivision divide(const UniPoly& num, const UniPoly& den) {
  if (den.is_zero()) throw std::domain_error("polynomial division by zero");
  if (num.degree() < den.degree()) return {UniPoly(), num};

  std::vector<Rational> rem = num.coefficients();
  const auto& d = den.coefficients();
  const std::size_t dd = d.size() - 1;
  const Rational lead_inv = d.back().inverse();
  std::vector<Rational> quot(rem.size() - dd);
  for (std::size_t k = rem.size(); k-- > dd;) {
    const Rational t = rem[k] * lead_inv;
    quot[k - dd] = t;
    if (t.is_zero()) continue;
    for (std::size_t j = 0; j <= dd; ++j) rem[k - dd + j] -= t * d[j];
  }
  rem.resize(dd);
  return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = divide(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

UniPoly rising_factorial_poly(const Rational& shift, unsigned m) {
  UniPoly product = UniPoly::constant(Rational(1));
  for (unsigned l = 0; l < m; ++l) {
    product *= UniPoly(std::vector<Rational>{shift + Rational(l), Rational(1)});
  }
  return product;
}

}  // namespace hartogs::algebra
