#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "hartogs/bi_poly.hpp"
#include "hartogs/domains.hpp"
#include "hartogs/rational.hpp"
#include "hartogs/rational_function.hpp"
#include "hartogs/uni_poly.hpp"

namespace hartogs::epsilon {

using algebra::BiPoly;
using algebra::Rational;
using algebra::RationalFunction;
using algebra::UniPoly;
using domains::DomainSpec;

/// alpha did not exceed alpha_threshold(spec).
class AlphaBelowThreshold : public std::domain_error {
 public:
  AlphaBelowThreshold(const Rational& alpha, const Rational& threshold);
};

/// The closed form was requested for a spec whose phi is not a polynomial.
class NotPolynomial : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Throws AlphaBelowThreshold unless alpha > alpha_threshold(spec).
void require_admissible_alpha(const DomainSpec& spec, const Rational& alpha);

/// sigma(t) = sum over t_1 + ... + t_k = d - t of prod_i C(d_i, t_i) nu_i^{t_i},
/// read off as the y^{d-t} coefficient of prod_i (1 + nu_i y)^{d_i}.
/// Throws std::out_of_range unless 0 <= t <= d.
Rational sigma(const DomainSpec& spec, int t);
/// sigma(0), ..., sigma(d).
std::vector<Rational> sigma_table(const DomainSpec& spec);

/// Numerator and denominator of psi(x, y):
///   numerator   = prod_i chi_i(mu_i((1 + nu_i) x + y) - p_i)
///   denominator = prod_i mu_i^{d_i} * sum_t sigma(t) (x - n)_{d-t} (x + y - t)_t
struct PsiParts {
  BiPoly numerator;
  BiPoly denominator;
};
PsiParts psi_parts(const DomainSpec& spec);

/// psi parts with x = alpha fixed, as polynomials in y.
struct PsiPartsAtAlpha {
  UniPoly numerator;
  UniPoly denominator;
};
PsiPartsAtAlpha psi_parts(const DomainSpec& spec, const Rational& alpha);

/// Exact psi(alpha, t). Throws AlphaBelowThreshold, or std::domain_error at a pole.
Rational psi_eval(const DomainSpec& spec, const Rational& alpha, const Rational& t);

/// phi(x) = (x - d)_d psi(alpha, x - alpha) with alpha kept symbolic: both
/// parts are polynomials in (x, y) where y stands for alpha.
struct SymbolicPhi {
  BiPoly numerator;
  BiPoly denominator;
};
SymbolicPhi phi_build(const DomainSpec& spec);
/// Same quotient, assembled by substituting (x, y) -> (alpha, x - alpha)
/// into psi_parts. Independent route used for cross-checking phi_build.
SymbolicPhi phi_from_psi(const DomainSpec& spec);
/// phi at a fixed alpha, reduced to lowest terms.
RationalFunction phi_build(const DomainSpec& spec, const Rational& alpha);

enum class PolynomialityStatus { polynomial_all_alpha, polynomial_at_alpha, not_polynomial };

const char* to_string(PolynomialityStatus status);

struct AlphaVerdict {
  Rational alpha;
  std::optional<UniPoly> phi;
  /// Remainder of the reduced numerator by the reduced denominator.
  UniPoly remainder;
};

struct PolynomialityVerdict {
  PolynomialityStatus status = PolynomialityStatus::not_polynomial;
  /// Symbolic mode: phi(x; alpha) with y standing for alpha.
  std::optional<BiPoly> phi;
  /// Nonzero remainder when status is not_polynomial. In fixed mode this is
  /// the remainder at the first failing alpha, embedded in x only.
  std::optional<BiPoly> witness;
  std::optional<Rational> witness_alpha;
  /// Fixed mode only.
  std::vector<AlphaVerdict> per_alpha;

  bool is_polynomial() const { return status != PolynomialityStatus::not_polynomial; }
};

/// Symbolic mode: exact divisibility in Q[x, alpha].
PolynomialityVerdict polynomiality_check(const DomainSpec& spec);
/// Fixed mode: one univariate division per alpha. Every alpha must exceed
/// the threshold (AlphaBelowThreshold otherwise).
PolynomialityVerdict polynomiality_check(const DomainSpec& spec, std::span<const Rational> alphas);

/// epsilon = sum_j coeffs[j] (1 - s)^{d-j} with
///   coeffs[j] = diffs[j] / j! * (alpha - n)_{d0 + j},  diffs[j] = D^j phi(d).
struct EpsilonClosedForm {
  Rational alpha;
  int base_dim = 0;
  int fiber_dim = 0;
  std::vector<Rational> diffs;
  std::vector<Rational> coeffs;

  Rational value(const Rational& s) const;
  long double value(long double s) const;
};

/// Throws AlphaBelowThreshold or NotPolynomial.
EpsilonClosedForm epsilon_coeffs(const DomainSpec& spec, const Rational& alpha);
/// Closed-form coefficients from a known polynomial phi.
EpsilonClosedForm epsilon_coeffs_from_phi(const DomainSpec& spec, const UniPoly& phi, const Rational& alpha);

struct SeriesOptions {
  std::size_t max_terms = 10000;
  long double tolerance = 1e-18L;
};

struct SeriesResult {
  /// (alpha - n)_n (1 - s)^alpha * sum_t psi(alpha, t) (alpha)_t / t! s^t
  long double value = 0;
  /// sum_t psi(alpha, t) (alpha)_t / t! s^t alone.
  long double raw_sum = 0;
  /// Last added term scaled like `value`; a truncation proxy.
  long double last_term = 0;
  std::size_t terms = 0;
  bool converged = false;
};

/// Throws AlphaBelowThreshold, std::domain_error unless 0 <= s < 1, and
/// std::domain_error if psi(alpha, t) hits a pole.
SeriesResult epsilon_series(const DomainSpec& spec, const Rational& alpha, const Rational& s,
                            const SeriesOptions& options = {});
/// Same with a floating-point s.
SeriesResult epsilon_series_at(const DomainSpec& spec, const Rational& alpha, long double s,
                               const SeriesOptions& options = {});

/// K_alpha = exp(alpha * potential) * epsilon.
long double kernel_from_epsilon(long double epsilon, const Rational& alpha, long double potential);
long double epsilon_from_kernel(long double kernel, const Rational& alpha, long double potential);
/// Series value of epsilon at s turned into the kernel value.
long double kernel_eval(const DomainSpec& spec, const Rational& alpha, const Rational& s,
                        long double potential, const SeriesOptions& options = {});

/// Both sides of the balanced identity
///   prod_i chi_i(mu_i((1+nu_i)x + y) - p_i)
///     = prod_i mu_i^{d_i} sum_t tau(t) (x - n)_t (x + y - d + t)_{d-t},
/// with tau(t) summed over t_1 + ... + t_k = t.
struct BalancedResult {
  bool balanced = false;
  BiPoly lhs;
  BiPoly rhs;
  /// lhs - rhs
  BiPoly residual;
  /// rhs agrees with the psi denominator after t -> d - t.
  bool reindexing_consistent = false;
};
BalancedResult balanced_check(const DomainSpec& spec);
/// Right-hand side built term by term over explicit multi-indices.
BiPoly balanced_rhs(const DomainSpec& spec);

struct EpsilonReport {
  PolynomialityVerdict verdict;
  bool balanced = false;
  bool wallach_ok = false;
  bool berezin_admissible = false;
  Rational alpha_threshold;
};
EpsilonReport berezin_report(const DomainSpec& spec);

/// Coefficients from the nu = 0 formula
///   (1 / prod mu_i^{d_i}) D^j chi~(d) / j! (alpha - n)_{j + d0},
///   chi~(x) = prod_i chi_i(mu_i x - p_i),
/// next to the general epsilon_coeffs output.
struct NuZeroComparison {
  bool equal = false;
  std::vector<Rational> reduced;
  std::vector<Rational> general;
};
/// Throws std::invalid_argument unless every nu_i is 0.
NuZeroComparison nu_zero_reduction_check(const DomainSpec& spec, const Rational& alpha);

}  // namespace hartogs::epsilon
