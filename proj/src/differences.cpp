#include "hartogs/differences.hpp"

namespace hartogs::algebra {

Rational finite_difference(const std::function<Rational(const Rational&)>& f, unsigned j,
                           const Rational& x0) {
  Rational sum(0);
  for (unsigned l = 0; l <= j; ++l) {
    const Rational term = binomial(j, l) * f(x0 - Rational(l));
    if (l % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum;
}

Rational finite_difference(const UniPoly& f, unsigned j, const Rational& x0) {
  return finite_difference([&f](const Rational& x) { return f(x); }, j, x0);
}

Rational finite_difference(const RationalFunction& f, unsigned j, const Rational& x0) {
  return finite_difference([&f](const Rational& x) { return f(x); }, j, x0);
}

std::vector<Rational> backward_differences(const UniPoly& f, unsigned max_order, const Rational& x0) {
  // Repeated differencing of the value table f(x0 - max_order), ..., f(x0).
  std::vector<Rational> table;
  table.reserve(max_order + 1);
  for (unsigned l = max_order + 1; l-- > 0;) table.push_back(f(x0 - Rational(l)));

  std::vector<Rational> out;
  out.reserve(max_order + 1);
  for (unsigned order = 0; order <= max_order; ++order) {
    out.push_back(table.back());
    for (std::size_t k = table.size() - 1; k > 0; --k) table[k] -= table[k - 1];
    table.erase(table.begin());
  }
  return out;
}

UniPoly newton_reconstruct(std::span<const Rational> diffs, const Rational& base) {
  UniPoly out;
  for (unsigned j = 0; j < diffs.size(); ++j) {
    if (diffs[j].is_zero()) continue;
    out += rising_factorial_poly(-base, j).scaled(diffs[j] / factorial(j));
  }
  return out;
}

}  // namespace hartogs::algebra
