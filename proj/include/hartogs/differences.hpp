#pragma once

#include <functional>
#include <span>
#include <vector>

#include "hartogs/rational.hpp"
#include "hartogs/rational_function.hpp"
#include "hartogs/uni_poly.hpp"

namespace hartogs::algebra {

/// Backward difference of order j at x0:
///   D^j f(x0) = sum_{l=0}^{j} C(j, l) (-1)^l f(x0 - l).
/// Any exception raised by f (a pole, say) propagates unchanged.
Rational finite_difference(const std::function<Rational(const Rational&)>& f, unsigned j,
                           const Rational& x0);
Rational finite_difference(const UniPoly& f, unsigned j, const Rational& x0);
/// Throws std::domain_error if f has a pole at one of x0, x0-1, ..., x0-j.
Rational finite_difference(const RationalFunction& f, unsigned j, const Rational& x0);

/// [D^0 f(x0), D^1 f(x0), ..., D^max_order f(x0)] from one table of values.
std::vector<Rational> backward_differences(const UniPoly& f, unsigned max_order, const Rational& x0);

/// Newton backward-difference form
///   f(x) = sum_j diffs[j] / j! * (x - base)_j
/// i.e. the unique polynomial of degree < diffs.size() whose backward
/// differences at `base` are `diffs`.
UniPoly newton_reconstruct(std::span<const Rational> diffs, const Rational& base);

}  // namespace hartogs::algebra
