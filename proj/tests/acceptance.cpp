#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hartogs/differences.hpp"
#include "hartogs/epsilon.hpp"
#include "hartogs/numeric.hpp"
#include "oracles.hpp"
#include "spec_helpers.hpp"

using namespace hartogs;
using algebra::BiPoly;
using algebra::Rational;
using algebra::UniPoly;
using algebra::Variable;
using domains::DomainSpec;
using domains::FactorKind;
using helpers::factor;
using helpers::make_spec;
using helpers::thullen;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

/// Collects failures; the first message is kept as the detail.
class Tally {
 public:
  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (passed_) first_ = what;
    passed_ = false;
    ++failures_;
  }
  Outcome outcome(const std::string& ok_detail) const {
    if (passed_) return {true, ok_detail};
    return {false, first_ + (failures_ > 1 ? " (+" + std::to_string(failures_ - 1) + " more)" : "")};
  }

 private:
  bool passed_ = true;
  int failures_ = 0;
  std::string first_;
};

std::string label(const DomainSpec& spec) {
  std::ostringstream os;
  for (std::size_t i = 0; i < spec.factors.size(); ++i) {
    const auto& f = spec.factors[i];
    os << (i ? " x " : "") << f.kind.label() << "[" << f.mu << "," << f.nu << "]";
  }
  os << " d0=" << spec.fiber_dim;
  return os.str();
}

/// x as a BiPoly polynomial in x only.
BiPoly lift_x(const UniPoly& p) { return BiPoly::lift(p, Variable::x); }

/// prod_i mu_i^{-d_i} chi_i(mu_i x - p_i), expanded from direct evaluation at d + 1 nodes.
UniPoly reduced_hua_product(const DomainSpec& spec, const UniPoly& extra) {
  const int degree = spec.base_dim() + extra.degree();
  std::vector<Rational> xs, ys;
  for (int k = 0; k <= degree; ++k) {
    const Rational x(k);
    Rational v = extra(x) / oracle::mu_power(spec);
    for (const auto& f : spec.factors) {
      const auto q = oracle::table(f.kind);
      v *= oracle::chi(q, f.mu * x - Rational(q.p));
    }
    xs.push_back(x);
    ys.push_back(v);
  }
  return UniPoly(oracle::interpolate(xs, ys));
}

std::vector<DomainSpec> criterion1_specs() {
  std::vector<DomainSpec> out;
  for (const Rational& mu : {Rational(1, 2), Rational(1), Rational(2), Rational(3, 5)}) {
    out.push_back(thullen(mu, helpers::balanced_nu(mu)));
  }
  return out;
}

std::vector<DomainSpec> criterion2_specs() {
  std::vector<DomainSpec> out;
  for (const Rational& mu : {Rational(1, 2), Rational(1)}) {
    for (const auto kind : {FactorKind::ball(1), FactorKind::ball(3), FactorKind::type_one(2, 2)}) {
      out.push_back(make_spec({factor(kind, mu)}, 1));
    }
    out.push_back(make_spec({factor(FactorKind::ball(1), mu), factor(FactorKind::ball(3), mu),
                             factor(FactorKind::type_one(2, 2), mu)},
                            1));
  }
  return out;
}

struct Criterion3Case {
  DomainSpec spec;
  UniPoly expected;
};

std::vector<Criterion3Case> criterion3_cases() {
  std::vector<Criterion3Case> out;
  for (const auto kind : {FactorKind::ball(1), FactorKind::type_one(2, 2)}) {
    const int d1 = oracle::table(kind).d;
    const int d = d1 + 1;
    for (int d0 : {1, 2}) {
      for (const Rational& mu1 : {Rational(1), Rational(3, 2)}) {
        for (const Rational& mu2 : {Rational(1, 2), Rational(1), Rational(3)}) {
          const Rational nu2 = (Rational(1) - mu2 * Rational(d1 + 1)) / (Rational(d0 + d1 + 1) * mu2);
          if (!(nu2 > Rational(-1))) continue;
          auto spec = make_spec({factor(kind, mu1), factor(FactorKind::ball(1), mu2, nu2)}, d0);
          DomainSpec first = make_spec({factor(kind, mu1)}, d0);
          out.push_back({spec, reduced_hua_product(first, UniPoly(std::vector<Rational>{Rational(-d), Rational(1)}))});
        }
      }
    }
  }
  return out;
}

Outcome criterion1() {
  Tally t;
  const BiPoly expected = BiPoly::x() - BiPoly::constant(Rational(1));
  for (const auto& spec : criterion1_specs()) {
    const auto report = epsilon::berezin_report(spec);
    t.require(report.verdict.status == epsilon::PolynomialityStatus::polynomial_all_alpha,
              label(spec) + ": status " + epsilon::to_string(report.verdict.status));
    t.require(report.verdict.phi && *report.verdict.phi == expected, label(spec) + ": phi != x - 1");
    t.require(report.berezin_admissible, label(spec) + ": not admissible");
  }
  return t.outcome("phi = x - 1 and admissible for mu in {1/2, 1, 2, 3/5}");
}

Outcome criterion2() {
  Tally t;
  int checked = 0;
  for (const auto& spec : criterion2_specs()) {
    const auto verdict = epsilon::polynomiality_check(spec);
    const BiPoly expected = lift_x(reduced_hua_product(spec, UniPoly::constant(Rational(1))));
    t.require(verdict.phi && *verdict.phi == expected, label(spec) + ": phi differs from the Hua product");
    for (const Rational& alpha : {alpha_threshold(spec) + Rational(1), alpha_threshold(spec) + Rational(7, 2)}) {
      t.require(epsilon::nu_zero_reduction_check(spec, alpha).equal, label(spec) + ": nu = 0 reduction mismatch");
    }
    ++checked;
  }
  return t.outcome(std::to_string(checked) + " specs, coefficients identical");
}

Outcome criterion3() {
  Tally t;
  int checked = 0;
  for (const auto& c : criterion3_cases()) {
    const auto verdict = epsilon::polynomiality_check(c.spec);
    t.require(verdict.phi && *verdict.phi == lift_x(c.expected), label(c.spec) + ": phi mismatch");
    ++checked;
  }
  return t.outcome(std::to_string(checked) + " specs, phi = mu1^{-d1} (x - d) chi1(mu1 x - p1)");
}

Outcome criterion4() {
  Tally t;
  for (const Rational& mu : {Rational(1, 2), Rational(1), Rational(2)}) {
    const auto spec = thullen(mu, helpers::balanced_nu(mu));
    const auto b = epsilon::balanced_check(spec);
    t.require(b.balanced && b.residual.is_zero(), label(spec) + ": not balanced");
    for (const Rational& alpha : {Rational(3), Rational(9, 2), Rational(20)}) {
      const auto closed = epsilon::epsilon_coeffs(spec, alpha);
      bool constant = closed.coeffs.back() == (alpha - Rational(1)) * (alpha - Rational(2));
      for (std::size_t j = 0; j + 1 < closed.coeffs.size(); ++j) constant = constant && closed.coeffs[j].is_zero();
      t.require(constant, label(spec) + ": epsilon is not (alpha - 1)(alpha - 2)");
    }
  }
  const auto unbalanced = epsilon::balanced_check(thullen(Rational(2), Rational(0)));
  t.require(!unbalanced.balanced && !unbalanced.residual.is_zero(), "Thullen(2, 0) reported balanced");

  std::mt19937_64 rng(20240601);
  for (int k = 0; k < 10; ++k) {
    const auto spec = helpers::random_spec(rng, 3);
    const auto b = epsilon::balanced_check(spec);
    // rhs after t -> d - t against the psi denominator, and the multi-index build
    const auto denominator = epsilon::psi_parts(spec).denominator;
    t.require(b.reindexing_consistent && b.rhs == denominator && epsilon::balanced_rhs(spec) == denominator,
              label(spec) + ": re-indexing mismatch");
  }
  return t.outcome("3 balanced, Thullen(2,0) residual " + unbalanced.residual.to_string() + ", 10 re-indexings exact");
}

Outcome criterion5() {
  Tally t;
  std::vector<DomainSpec> specs = criterion1_specs();
  for (const auto& s : criterion2_specs()) specs.push_back(s);
  for (const auto& c : criterion3_cases()) specs.push_back(c.spec);
  std::size_t max_terms = 0;
  long double worst = 0;
  int evaluations = 0;
  for (const auto& spec : specs) {
    const Rational threshold = alpha_threshold(spec);
    for (int offset : {1, 3, 10}) {
      const Rational alpha = threshold + Rational(offset);
      const auto closed = epsilon::epsilon_coeffs(spec, alpha);
      for (const Rational& s : {Rational(0), Rational(1, 10), Rational(1, 2), Rational(9, 10)}) {
        const long double exact = closed.value(s).to_long_double();
        const auto series = epsilon::epsilon_series(spec, alpha, s);
        const long double scaled = std::fabs(series.value - exact) / std::max(1.0L, std::fabs(exact));
        worst = std::max(worst, scaled);
        max_terms = std::max(max_terms, series.terms);
        t.require(series.converged && series.terms < 10000, label(spec) + ": series did not converge");
        t.require(scaled <= 1e-9L, label(spec) + " alpha=" + alpha.to_string() + " s=" + s.to_string() +
                                       ": |series - closed| too large");
        ++evaluations;
      }
    }
  }
  std::ostringstream os;
  os << evaluations << " evaluations, worst scaled difference " << static_cast<double>(worst) << ", at most "
     << max_terms << " terms";
  return t.outcome(os.str());
}

std::vector<DomainSpec> numeric_specs() {
  std::vector<DomainSpec> out;
  const std::vector<std::pair<Rational, Rational>> weights{
      {Rational(1), Rational(0)}, {Rational(1), Rational(1)}, {Rational(1, 2), Rational(1, 2)}};
  for (const auto& [mu, nu] : weights) {
    out.push_back(make_spec({factor(FactorKind::ball(1), mu, nu)}, 1));  // disc over disc
    out.push_back(make_spec({factor(FactorKind::ball(2), mu, nu)}, 1));  // ball(2) base, disc fiber
    out.push_back(make_spec({factor(FactorKind::ball(1), mu, nu)}, 2));  // disc base, ball(2) fiber
  }
  return out;
}

Outcome criterion6() {
  Tally t;
  long double worst = 0;
  long double min_ratio = 1e30L, max_ratio = 0;
  for (const auto& spec : numeric_specs()) {
    numeric::SampleOptions opts;
    opts.margin = 0.5L;
    long double err_h = 0, err_h2 = 0;
    for (std::uint64_t i = 0; i < 20; ++i) {
      const auto p = numeric::sample_point(spec, 6, i, opts);
      const auto at_h = numeric::monge_ampere_check(spec, p, 1e-3L);
      const auto at_h2 = numeric::monge_ampere_check(spec, p, 5e-4L);
      worst = std::max(worst, at_h.relative_error);
      t.require(at_h.relative_error < 1e-4L, label(spec) + ": relative error above 1e-4");
      err_h += at_h.relative_error;
      err_h2 += at_h2.relative_error;
    }
    const long double ratio = err_h / err_h2;
    min_ratio = std::min(min_ratio, ratio);
    max_ratio = std::max(max_ratio, ratio);
    t.require(ratio >= 3 && ratio <= 5, label(spec) + ": convergence ratio " + std::to_string(static_cast<double>(ratio)));
  }
  std::ostringstream os;
  os << "worst relative error " << static_cast<double>(worst) << ", h/(h/2) error ratio in ["
     << static_cast<double>(min_ratio) << ", " << static_cast<double>(max_ratio) << "]";
  return t.outcome(os.str());
}

Outcome criterion7() {
  Tally t;
  const long double beta = 3;
  long double max_value = 0, min_value = 1, diagonal = 0, max_offdiag = 0;
  std::size_t pairs = 0;
  for (const Rational& nu : {Rational(0), Rational(1)}) {
    const auto spec = thullen(Rational(1), nu);
    for (std::uint64_t i = 0; i < 1000; ++i) {
      const auto p1 = numeric::sample_point(spec, 7, 2 * i);
      const auto p2 = numeric::sample_point(spec, 7, 2 * i + 1);
      diagonal = std::max(diagonal, std::fabs(numeric::diastasis_check(spec, beta, p1, p1) - 1));
      long double v = 0;
      try {
        v = numeric::diastasis_check(spec, beta, p1, p2);
      } catch (const numeric::BranchCutError&) {
        t.require(false, label(spec) + ": X left the right half-plane");
        continue;
      }
      ++pairs;
      max_value = std::max(max_value, v);
      min_value = std::min(min_value, v);
      const auto a = numeric::flatten(p1), b = numeric::flatten(p2);
      long double dist = 0;
      for (std::size_t k = 0; k < a.size(); ++k) dist += std::norm(a[k] - b[k]);
      if (std::sqrt(dist) > 1e-6L) {
        max_offdiag = std::max(max_offdiag, v);
        t.require(v < 1, label(spec) + ": off-diagonal value not below 1");
      }
      t.require(v > 0 && v <= 1 + 1e-12L, label(spec) + ": value outside (0, 1 + 1e-12]");
    }
  }
  t.require(diagonal <= 1e-12L, "diagonal deviates from 1");
  std::ostringstream os;
  os << pairs << " pairs, values in [" << static_cast<double>(min_value) << ", " << static_cast<double>(max_value)
     << "], diagonal deviation " << static_cast<double>(diagonal);
  return t.outcome(os.str());
}

Outcome criterion8() {
  Tally t;
  long double max_cross = 0, max_x = 0;
  std::size_t samples = 0;
  for (const auto& spec : numeric_specs()) {
    const auto r = numeric::boundedness_sample(spec, 10000, 8, alpha_threshold(spec) + Rational(1));
    samples += r.samples;
    max_cross = std::max(max_cross, r.max_cross);
    max_x = std::max(max_x, r.max_abs_x);
    t.require(r.max_cross < 1, label(spec) + ": |cross| reached 1");
    t.require(r.max_abs_x < 2, label(spec) + ": |X| reached 2");
    t.require(r.rejected == 0, label(spec) + ": X left the right half-plane");
  }
  std::ostringstream os;
  os << samples << " pairs, max |cross| " << static_cast<double>(max_cross) << ", max |X| "
     << static_cast<double>(max_x);
  return t.outcome(os.str());
}

Outcome criterion9() {
  Tally t;
  std::mt19937_64 rng(9);

  std::uniform_int_distribution<int> degree(0, 6);
  for (int k = 0; k < 100; ++k) {
    std::vector<Rational> c;
    const int deg = degree(rng);
    for (int i = 0; i <= deg; ++i) c.push_back(oracle::random_rational(rng, -9, 9, 6));
    if (c.back().is_zero()) c.back() = Rational(1);
    const UniPoly p(c);
    const Rational base = oracle::random_rational(rng, -5, 5, 3);
    const auto diffs = algebra::backward_differences(p, static_cast<unsigned>(p.degree()), base);
    t.require(algebra::newton_reconstruct(diffs, base) == p, "Newton round trip failed");
  }

  std::uniform_int_distribution<int> factors(1, 3), dim(1, 4);
  for (int k = 0; k < 25; ++k) {
    std::vector<int> dims;
    std::vector<Rational> nus;
    DomainSpec spec;
    const int count = factors(rng);
    for (int i = 0; i < count; ++i) {
      dims.push_back(dim(rng));
      nus.push_back(oracle::random_rational(rng, -5, 9, 7));
      spec.factors.push_back(factor(FactorKind::ball(dims.back()), Rational(1), nus.back()));
    }
    for (int s = 0; s <= spec.base_dim(); ++s) {
      t.require(epsilon::sigma(spec, s) == oracle::sigma(dims, nus, s), "sigma differs from enumeration");
    }
  }

  for (int k = 0; k < 25; ++k) {
    const auto spec = helpers::random_spec(rng, 3);
    const auto parts = epsilon::psi_parts(spec);
    const int d = spec.base_dim();
    const auto lead = UniPoly::constant(spec.mu_power_product());
    t.require(parts.numerator.degree(Variable::y) == d && parts.denominator.degree(Variable::y) == d,
              label(spec) + ": psi degree in y");
    t.require(parts.numerator.coefficients_in(Variable::y).back() == lead &&
                  parts.denominator.coefficients_in(Variable::y).back() == lead,
              label(spec) + ": psi leading coefficient");
  }

  int catalog = 0;
  for (const auto& entry : domains::catalog_listing(8)) {
    const auto& q = entry.params;
    const bool dim_ok = q.dim == q.rank * (q.rank - 1) / 2 * q.mult_a + q.rank * q.mult_b + q.rank;
    const bool genus_ok = q.genus == (q.rank - 1) * q.mult_a + q.mult_b + 2;
    const auto table = oracle::table(entry.kind);
    const auto chi = domains::hua_polynomial(q);
    t.require(dim_ok && genus_ok, entry.kind.label() + ": dimension or genus formula");
    t.require(q.rank == table.r && q.mult_a == table.a && q.mult_b == table.b, entry.kind.label() + ": (r, a, b)");
    t.require(chi.degree() == q.dim && chi(Rational(1, 3)) == oracle::chi(table, Rational(1, 3)),
              entry.kind.label() + ": Hua polynomial");
    ++catalog;
  }
  return t.outcome("100 Newton, 25 sigma, 25 psi, " + std::to_string(catalog) + " catalog entries");
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                       criterion6, criterion7, criterion8, criterion9};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i]();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && outcome.passed;
    std::printf("criterion %zu: %s (%.2f s) %s\n", i + 1, outcome.passed ? "PASS" : "FAIL", seconds,
                outcome.detail.c_str());
  }
  return all ? 0 : 1;
}
