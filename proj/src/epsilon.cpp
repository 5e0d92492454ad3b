#include "hartogs/epsilon.hpp"

#include <cmath>
#include <functional>

#include "hartogs/differences.hpp"

namespace hartogs::epsilon {

using algebra::Variable;

AlphaBelowThreshold::AlphaBelowThreshold(const Rational& alpha, const Rational& threshold)
    : std::domain_error("alpha = " + alpha.to_string() + " must exceed the threshold " + threshold.to_string()) {}

void require_admissible_alpha(const DomainSpec& spec, const Rational& alpha) {
  const Rational threshold = domains::alpha_threshold(spec);
  if (!(alpha > threshold)) throw AlphaBelowThreshold(alpha, threshold);
}

std::vector<Rational> sigma_table(const DomainSpec& spec) {
  // prod_i (1 + nu_i y)^{d_i}, coefficient of y^k at index k.
  UniPoly generating = UniPoly::constant(Rational(1));
  for (const auto& f : spec.factors) {
    const UniPoly linear(std::vector<Rational>{Rational(1), f.nu});
    for (int k = 0; k < f.params.dim; ++k) generating *= linear;
  }
  const int d = spec.base_dim();
  std::vector<Rational> out(static_cast<std::size_t>(d) + 1);
  for (int t = 0; t <= d; ++t) out[static_cast<std::size_t>(t)] = generating.coefficient(static_cast<std::size_t>(d - t));
  return out;
}

Rational sigma(const DomainSpec& spec, int t) {
  const int d = spec.base_dim();
  if (t < 0 || t > d) throw std::out_of_range("sigma index outside [0, d]");
  return sigma_table(spec)[static_cast<std::size_t>(t)];
}

namespace {

// prod_i mu_i^{d_i} sum_t sigma(t) (a - n)_{d-t} (b - t)_t for bivariate a, b.
BiPoly kernel_denominator(const DomainSpec& spec, const BiPoly& a, const BiPoly& b) {
  const int d = spec.base_dim();
  const Rational n(spec.total_dim());
  const auto sig = sigma_table(spec);
  BiPoly sum;
  for (int t = 0; t <= d; ++t) {
    const Rational& c = sig[static_cast<std::size_t>(t)];
    if (c.is_zero()) continue;
    const BiPoly left = algebra::rising_factorial(a - BiPoly::constant(n), static_cast<unsigned>(d - t));
    const BiPoly right = algebra::rising_factorial(b - BiPoly::constant(Rational(t)), static_cast<unsigned>(t));
    sum += (left * right).scaled(c);
  }
  return sum.scaled(spec.mu_power_product());
}

// prod_i chi_i(mu_i * arg_i - p_i)
BiPoly hua_product(const DomainSpec& spec, const std::function<BiPoly(const domains::Factor&)>& arg) {
  BiPoly product = BiPoly::constant(Rational(1));
  for (const auto& f : spec.factors) {
    const UniPoly chi = domains::hua_polynomial(f.params);
    const BiPoly inner = arg(f).scaled(f.mu) - BiPoly::constant(Rational(f.params.genus));
    product *= algebra::compose(chi, inner);
  }
  return product;
}

}  // namespace

PsiParts psi_parts(const DomainSpec& spec) {
  PsiParts out;
  out.numerator = hua_product(spec, [](const domains::Factor& f) {
    return BiPoly::linear(Rational(1) + f.nu, Rational(1), Rational(0));
  });
  out.denominator = kernel_denominator(spec, BiPoly::x(), BiPoly::x() + BiPoly::y());
  return out;
}

PsiPartsAtAlpha psi_parts(const DomainSpec& spec, const Rational& alpha) {
  const PsiParts parts = psi_parts(spec);
  return {parts.numerator.restrict(Variable::x, alpha), parts.denominator.restrict(Variable::x, alpha)};
}

Rational psi_eval(const DomainSpec& spec, const Rational& alpha, const Rational& t) {
  require_admissible_alpha(spec, alpha);
  const PsiPartsAtAlpha parts = psi_parts(spec, alpha);
  const Rational den = parts.denominator(t);
  if (den.is_zero()) throw std::domain_error("psi has a pole at t = " + t.to_string());
  return parts.numerator(t) / den;
}

SymbolicPhi phi_build(const DomainSpec& spec) {
  // x is the phi variable, y stands for alpha.
  const int d = spec.base_dim();
  SymbolicPhi out;
  out.numerator = algebra::rising_factorial(BiPoly::x() - BiPoly::constant(Rational(d)), static_cast<unsigned>(d)) *
                  hua_product(spec, [](const domains::Factor& f) {
                    return BiPoly::linear(Rational(1), f.nu, Rational(0));
                  });
  out.denominator = kernel_denominator(spec, BiPoly::y(), BiPoly::x());
  return out;
}

SymbolicPhi phi_from_psi(const DomainSpec& spec) {
  const int d = spec.base_dim();
  const PsiParts parts = psi_parts(spec);
  const BiPoly alpha = BiPoly::y();
  const BiPoly t = BiPoly::x() - BiPoly::y();
  SymbolicPhi out;
  out.numerator = algebra::rising_factorial(BiPoly::x() - BiPoly::constant(Rational(d)), static_cast<unsigned>(d)) *
                  parts.numerator.substitute(alpha, t);
  out.denominator = parts.denominator.substitute(alpha, t);
  return out;
}

RationalFunction phi_build(const DomainSpec& spec, const Rational& alpha) {
  const SymbolicPhi phi = phi_build(spec);
  return RationalFunction(phi.numerator.restrict(Variable::y, alpha), phi.denominator.restrict(Variable::y, alpha));
}

const char* to_string(PolynomialityStatus status) {
  switch (status) {
    case PolynomialityStatus::polynomial_all_alpha: return "polynomial_all_alpha";
    case PolynomialityStatus::polynomial_at_alpha: return "polynomial_at_alpha";
    case PolynomialityStatus::not_polynomial: return "not_polynomial";
  }
  return "unknown";
}

PolynomialityVerdict polynomiality_check(const DomainSpec& spec) {
  const SymbolicPhi phi = phi_build(spec);
  PolynomialityVerdict verdict;
  const auto division = algebra::pseudo_divide(phi.numerator, phi.denominator, Variable::x);
  if (division.remainder.is_zero()) {
    if (auto q = algebra::exact_divide(phi.numerator, phi.denominator, Variable::x)) {
      verdict.status = PolynomialityStatus::polynomial_all_alpha;
      verdict.phi = std::move(*q);
      return verdict;
    }
  }
  verdict.status = PolynomialityStatus::not_polynomial;
  verdict.witness = division.remainder.is_zero() ? division.multiplier : division.remainder;
  return verdict;
}

PolynomialityVerdict polynomiality_check(const DomainSpec& spec, std::span<const Rational> alphas) {
  if (alphas.empty()) throw std::invalid_argument("fixed mode needs at least one alpha");
  for (const auto& a : alphas) require_admissible_alpha(spec, a);
  const SymbolicPhi phi = phi_build(spec);
  PolynomialityVerdict verdict;
  verdict.status = PolynomialityStatus::polynomial_at_alpha;
  for (const auto& a : alphas) {
    const RationalFunction reduced(phi.numerator.restrict(Variable::y, a), phi.denominator.restrict(Variable::y, a));
    AlphaVerdict entry;
    entry.alpha = a;
    entry.remainder = algebra::divide(reduced.numerator(), reduced.denominator()).remainder;
    entry.phi = reduced.as_polynomial();
    if (!entry.phi && verdict.status != PolynomialityStatus::not_polynomial) {
      verdict.status = PolynomialityStatus::not_polynomial;
      verdict.witness = BiPoly::lift(entry.remainder, Variable::x);
      verdict.witness_alpha = a;
    }
    verdict.per_alpha.push_back(std::move(entry));
  }
  return verdict;
}

Rational EpsilonClosedForm::value(const Rational& s) const {
  const int d = base_dim;
  const Rational u = Rational(1) - s;
  Rational sum(0);
  for (int j = 0; j <= d; ++j) sum += coeffs[static_cast<std::size_t>(j)] * u.pow(static_cast<unsigned>(d - j));
  return sum;
}

long double EpsilonClosedForm::value(long double s) const {
  // Horner in u = 1 - s, highest power of u belongs to coeffs[0].
  const long double u = 1.0L - s;
  long double acc = 0;
  for (const auto& c : coeffs) acc = acc * u + c.to_long_double();
  return acc;
}

EpsilonClosedForm epsilon_coeffs_from_phi(const DomainSpec& spec, const UniPoly& phi, const Rational& alpha) {
  const int d = spec.base_dim();
  const Rational n(spec.total_dim());
  EpsilonClosedForm out;
  out.alpha = alpha;
  out.base_dim = d;
  out.fiber_dim = spec.fiber_dim;
  out.diffs = algebra::backward_differences(phi, static_cast<unsigned>(d), Rational(d));
  out.coeffs.reserve(out.diffs.size());
  for (int j = 0; j <= d; ++j) {
    const auto uj = static_cast<unsigned>(j);
    out.coeffs.push_back(out.diffs[uj] / algebra::factorial(uj) *
                         algebra::rising_factorial(alpha - n, static_cast<unsigned>(spec.fiber_dim + j)));
  }
  return out;
}

EpsilonClosedForm epsilon_coeffs(const DomainSpec& spec, const Rational& alpha) {
  require_admissible_alpha(spec, alpha);
  const RationalFunction phi = phi_build(spec, alpha);
  const auto poly = phi.as_polynomial();
  if (!poly) throw NotPolynomial("phi is not a polynomial at alpha = " + alpha.to_string());
  return epsilon_coeffs_from_phi(spec, *poly, alpha);
}

SeriesResult epsilon_series(const DomainSpec& spec, const Rational& alpha, const Rational& s,
                            const SeriesOptions& options) {
  if (s.sign() < 0 || !(s < Rational(1))) throw std::domain_error("s must lie in [0, 1)");
  return epsilon_series_at(spec, alpha, s.to_long_double(), options);
}

SeriesResult epsilon_series_at(const DomainSpec& spec, const Rational& alpha, long double sv,
                               const SeriesOptions& options) {
  require_admissible_alpha(spec, alpha);
  if (!(sv >= 0 && sv < 1)) throw std::domain_error("s must lie in [0, 1)");
  const PsiPartsAtAlpha parts = psi_parts(spec, alpha);
  const int n = spec.total_dim();

  const long double a = alpha.to_long_double();
  const long double prefactor =
      algebra::rising_factorial(alpha - Rational(n), static_cast<unsigned>(n)).to_long_double() * std::pow(1.0L - sv, a);
  const long double saddle = sv == 0 ? 0 : a * sv / (1.0L - sv);

  SeriesResult out;
  long double weight = 1;  // (alpha)_t / t! s^t
  long double sum = 0;
  for (std::size_t t = 0; t < options.max_terms; ++t) {
    const Rational tr(static_cast<long>(t));
    const Rational den = parts.denominator(tr);
    if (den.is_zero()) throw std::domain_error("psi has a pole at t = " + tr.to_string());
    const long double term = (parts.numerator(tr) / den).to_long_double() * weight;
    sum += term;
    out.terms = t + 1;
    out.last_term = term * prefactor;
    if (std::fabs(term) <= options.tolerance * std::fabs(sum) && static_cast<long double>(t) > saddle) {
      out.converged = true;
      break;
    }
    weight *= (a + static_cast<long double>(t)) / static_cast<long double>(t + 1) * sv;
  }
  out.raw_sum = sum;
  out.value = prefactor * sum;
  return out;
}

long double kernel_from_epsilon(long double epsilon, const Rational& alpha, long double potential) {
  return std::exp(alpha.to_long_double() * potential) * epsilon;
}

long double epsilon_from_kernel(long double kernel, const Rational& alpha, long double potential) {
  return std::exp(-alpha.to_long_double() * potential) * kernel;
}

long double kernel_eval(const DomainSpec& spec, const Rational& alpha, const Rational& s, long double potential,
                        const SeriesOptions& options) {
  return kernel_from_epsilon(epsilon_series(spec, alpha, s, options).value, alpha, potential);
}

BiPoly balanced_rhs(const DomainSpec& spec) {
  const int d = spec.base_dim();
  const Rational n(spec.total_dim());
  const std::size_t k = spec.factors.size();

  // tau(t) = sum over t_1 + ... + t_k = t of prod_i C(d_i, t_i) nu_i^{t_i}
  std::vector<Rational> tau(static_cast<std::size_t>(d) + 1);
  std::vector<int> idx(k, 0);
  while (true) {
    Rational weight(1);
    int total = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const auto& f = spec.factors[i];
      const auto di = static_cast<unsigned>(f.params.dim);
      const auto ti = static_cast<unsigned>(idx[i]);
      weight *= algebra::binomial(di, ti) * f.nu.pow(ti);
      total += idx[i];
    }
    tau[static_cast<std::size_t>(total)] += weight;
    std::size_t pos = 0;
    while (pos < k && idx[pos] == spec.factors[pos].params.dim) idx[pos++] = 0;
    if (pos == k) break;
    ++idx[pos];
  }

  BiPoly sum;
  for (int t = 0; t <= d; ++t) {
    const Rational& c = tau[static_cast<std::size_t>(t)];
    if (c.is_zero()) continue;
    const BiPoly left = algebra::rising_factorial(BiPoly::x() - BiPoly::constant(n), static_cast<unsigned>(t));
    const BiPoly right = algebra::rising_factorial(BiPoly::linear(Rational(1), Rational(1), Rational(t - d)),
                                                   static_cast<unsigned>(d - t));
    sum += (left * right).scaled(c);
  }
  return sum.scaled(spec.mu_power_product());
}

BalancedResult balanced_check(const DomainSpec& spec) {
  const PsiParts parts = psi_parts(spec);
  BalancedResult out;
  out.lhs = parts.numerator;
  out.rhs = balanced_rhs(spec);
  out.residual = out.lhs - out.rhs;
  out.balanced = out.residual.is_zero();
  out.reindexing_consistent = out.rhs == parts.denominator;
  return out;
}

EpsilonReport berezin_report(const DomainSpec& spec) {
  EpsilonReport out;
  out.verdict = polynomiality_check(spec);
  out.balanced = balanced_check(spec).balanced;
  out.wallach_ok = true;
  for (const auto& f : spec.factors) {
    if (!domains::wallach_contains(f.params, f.mu)) out.wallach_ok = false;
  }
  out.berezin_admissible = out.wallach_ok && out.verdict.status == PolynomialityStatus::polynomial_all_alpha;
  out.alpha_threshold = domains::alpha_threshold(spec);
  return out;
}

NuZeroComparison nu_zero_reduction_check(const DomainSpec& spec, const Rational& alpha) {
  for (const auto& f : spec.factors) {
    if (!f.nu.is_zero()) throw std::invalid_argument("the reduced formula needs nu = 0 on every factor");
  }
  const int d = spec.base_dim();
  const Rational n(spec.total_dim());

  UniPoly chi_tilde = UniPoly::constant(Rational(1));
  for (const auto& f : spec.factors) {
    chi_tilde *= domains::hua_polynomial(f.params).compose_affine(f.mu, Rational(-f.params.genus));
  }
  const Rational scale = spec.mu_power_product().inverse();

  NuZeroComparison out;
  for (int j = 0; j <= d; ++j) {
    const auto uj = static_cast<unsigned>(j);
    out.reduced.push_back(scale * algebra::finite_difference(chi_tilde, uj, Rational(d)) / algebra::factorial(uj) *
                          algebra::rising_factorial(alpha - n, static_cast<unsigned>(j + spec.fiber_dim)));
  }
  out.general = epsilon_coeffs(spec, alpha).coeffs;
  out.equal = out.reduced == out.general;
  return out;
}

}  // namespace hartogs::epsilon
