#include "hartogs/numeric.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "hartogs/epsilon.hpp"

namespace hartogs::numeric {

using domains::CartanType;

bool supports_numeric(const FactorKind& kind) {
  return kind.type == CartanType::ball || kind.type == CartanType::I;
}

bool supports_numeric(const DomainSpec& spec) {
  for (const auto& f : spec.factors) {
    if (!supports_numeric(f.kind)) return false;
  }
  return true;
}

std::size_t factor_dim(const FactorKind& kind) {
  switch (kind.type) {
    case CartanType::ball: return static_cast<std::size_t>(kind.n);
    case CartanType::I: return static_cast<std::size_t>(kind.m) * static_cast<std::size_t>(kind.n);
    default: return static_cast<std::size_t>(domains::cartan_catalog(kind).dim);
  }
}

namespace {

ComplexMatrix as_matrix(const FactorKind& kind, const FactorPoint& p) {
  const auto m = static_cast<Eigen::Index>(kind.m);
  const auto n = static_cast<Eigen::Index>(kind.n);
  ComplexMatrix out(m, n);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = p.coords[static_cast<std::size_t>(i * n + j)];
  }
  return out;
}

void require_numeric(const DomainSpec& spec) {
  if (!supports_numeric(spec)) throw std::invalid_argument("numeric checks support ball and type I factors only");
}

void require_balls(const DomainSpec& spec) {
  for (const auto& f : spec.factors) {
    if (f.kind.type != CartanType::ball) throw std::invalid_argument("this check needs ball factors only");
  }
}

Real real_norm(const FactorKind& kind, const FactorPoint& z) { return generic_norm(kind, z, z).real(); }

// 1 - (largest singular value)^2 >= margin
bool factor_inside(const FactorKind& kind, const FactorPoint& z, Real margin) {
  if (kind.type == CartanType::ball) {
    Real sq = 0;
    for (const auto& c : z.coords) sq += std::norm(c);
    return margin > 0 ? sq <= 1 - margin : sq < 1;
  }
  const ComplexMatrix zm = as_matrix(kind, z);
  const auto m = zm.rows();
  const ComplexMatrix gap = ComplexMatrix::Identity(m, m) * Complex(1 - margin) - zm * zm.adjoint();
  Eigen::LLT<ComplexMatrix> llt(gap);
  return llt.info() == Eigen::Success;
}

Complex uniform_disc(std::mt19937_64& rng, Real radius) {
  std::uniform_real_distribution<Real> unit(0, 1);
  const Real r = radius * std::sqrt(unit(rng));
  const Real theta = 2 * std::numbers::pi_v<Real> * unit(rng);
  return std::polar(r, theta);
}

}  // namespace

Complex generic_norm(const FactorKind& kind, const FactorPoint& z, const FactorPoint& xi) {
  const std::size_t dim = factor_dim(kind);
  if (!supports_numeric(kind)) throw std::invalid_argument("no generic norm for " + kind.label());
  if (z.coords.size() != dim || xi.coords.size() != dim) {
    throw std::invalid_argument("point size does not match " + kind.label());
  }
  if (kind.type == CartanType::ball) {
    Complex inner = 0;
    for (std::size_t k = 0; k < dim; ++k) inner += z.coords[k] * std::conj(xi.coords[k]);
    return Complex(1) - inner;
  }
  const ComplexMatrix zm = as_matrix(kind, z);
  const ComplexMatrix xm = as_matrix(kind, xi);
  const auto m = zm.rows();
  const ComplexMatrix gap = ComplexMatrix::Identity(m, m) - zm * xm.adjoint();
  return gap.determinant();
}

std::vector<Complex> flatten(const FullPoint& point) {
  std::vector<Complex> out;
  for (const auto& f : point.factors) out.insert(out.end(), f.coords.begin(), f.coords.end());
  out.insert(out.end(), point.fiber.begin(), point.fiber.end());
  return out;
}

FullPoint unflatten(const DomainSpec& spec, std::span<const Complex> coords) {
  FullPoint out;
  std::size_t pos = 0;
  for (const auto& f : spec.factors) {
    const std::size_t dim = factor_dim(f.kind);
    if (pos + dim > coords.size()) throw std::invalid_argument("coordinate vector too short");
    out.factors.push_back({std::vector<Complex>(coords.begin() + static_cast<std::ptrdiff_t>(pos),
                                                coords.begin() + static_cast<std::ptrdiff_t>(pos + dim))});
    pos += dim;
  }
  if (coords.size() - pos != static_cast<std::size_t>(spec.fiber_dim)) {
    throw std::invalid_argument("coordinate vector has the wrong length");
  }
  out.fiber.assign(coords.begin() + static_cast<std::ptrdiff_t>(pos), coords.end());
  return out;
}

Real norm_power_product(const DomainSpec& spec, const FullPoint& point) {
  Real product = 1;
  for (std::size_t i = 0; i < spec.factors.size(); ++i) {
    const auto& f = spec.factors[i];
    product *= std::pow(real_norm(f.kind, point.factors[i]), f.mu.to_long_double());
  }
  return product;
}

Real fiber_ratio(const DomainSpec& spec, const FullPoint& point) {
  Real sq = 0;
  for (const auto& c : point.fiber) sq += std::norm(c);
  return sq / norm_power_product(spec, point);
}

bool contains(const DomainSpec& spec, const FullPoint& point) {
  if (point.factors.size() != spec.factors.size()) return false;
  for (std::size_t i = 0; i < spec.factors.size(); ++i) {
    if (!factor_inside(spec.factors[i].kind, point.factors[i], 0)) return false;
  }
  return fiber_ratio(spec, point) < 1;
}

Real potential_eval(const DomainSpec& spec, const FullPoint& point) {
  require_numeric(spec);
  if (!contains(spec, point)) throw std::domain_error("point lies outside the domain");
  Real phi = 0;
  Real product = 1;
  for (std::size_t i = 0; i < spec.factors.size(); ++i) {
    const auto& f = spec.factors[i];
    const Real n = real_norm(f.kind, point.factors[i]);
    const Real mu = f.mu.to_long_double();
    phi -= mu * f.nu.to_long_double() * std::log(n);
    product *= std::pow(n, mu);
  }
  Real sq = 0;
  for (const auto& c : point.fiber) sq += std::norm(c);
  const Real gap = product - sq;
  if (!(gap > 0)) throw std::domain_error("point lies outside the domain");
  return phi - std::log(gap);
}

ComplexMatrix complex_hessian_fd(const ScalarField& f, std::span<const Complex> at, Real h) {
  const auto n = at.size();
  const std::size_t real_n = 2 * n;
  std::vector<Complex> work(at.begin(), at.end());

  auto shift = [&work](std::size_t a, Real amount) {
    const std::size_t k = a / 2;
    work[k] += (a % 2 == 0) ? Complex(amount, 0) : Complex(0, amount);
  };
  auto eval_at = [&](std::size_t a, Real da, std::size_t b, Real db) {
    shift(a, da);
    shift(b, db);
    const Real v = f(work);
    work.assign(at.begin(), at.end());
    return v;
  };

  const Real f0 = f(work);
  std::vector<Real> second(real_n * real_n);
  for (std::size_t a = 0; a < real_n; ++a) {
    const Real plus = eval_at(a, h, a, 0);
    const Real minus = eval_at(a, -h, a, 0);
    second[a * real_n + a] = (plus - 2 * f0 + minus) / (h * h);
    for (std::size_t b = a + 1; b < real_n; ++b) {
      const Real pp = eval_at(a, h, b, h);
      const Real pm = eval_at(a, h, b, -h);
      const Real mp = eval_at(a, -h, b, h);
      const Real mm = eval_at(a, -h, b, -h);
      const Real v = (pp - pm - mp + mm) / (4 * h * h);
      second[a * real_n + b] = v;
      second[b * real_n + a] = v;
    }
  }

  auto d2 = [&](std::size_t a, std::size_t b) { return second[a * real_n + b]; };
  ComplexMatrix out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const Real re = d2(2 * j, 2 * k) + d2(2 * j + 1, 2 * k + 1);
      const Real im = d2(2 * j, 2 * k + 1) - d2(2 * j + 1, 2 * k);
      out(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = Complex(re, im) / Real(4);
    }
  }
  return out;
}

ComplexMatrix complex_hessian_fd(const DomainSpec& spec, const FullPoint& point, Real h) {
  require_numeric(spec);
  const std::vector<Complex> base = flatten(point);
  std::vector<Complex> probe = base;
  for (std::size_t k = 0; k < base.size(); ++k) {
    for (const Complex step : {Complex(4 * h, 0), Complex(-4 * h, 0), Complex(0, 4 * h), Complex(0, -4 * h)}) {
      probe[k] = base[k] + step;
      if (!contains(spec, unflatten(spec, probe))) throw std::domain_error("insufficient boundary margin for step h");
      probe[k] = base[k];
    }
  }
  const ScalarField phi = [&spec](std::span<const Complex> c) { return potential_eval(spec, unflatten(spec, c)); };
  return complex_hessian_fd(phi, base, h);
}

Real normalization_constant(const FactorKind& kind) {
  if (!supports_numeric(kind)) throw std::invalid_argument("no generic norm for " + kind.label());
  // -d^2 N / dz dconj(z) at the origin is the identity for 1 - <z, z> and det(I - Z Z^*).
  return 1;
}

Real monge_ampere_closed_form(const DomainSpec& spec, const FullPoint& point) {
  require_numeric(spec);
  const Real s = fiber_ratio(spec, point);
  const Real u = 1 - s;
  const Real d0 = static_cast<Real>(spec.fiber_dim);
  Real value = 1 / std::pow(u, d0 + 1);
  for (std::size_t i = 0; i < spec.factors.size(); ++i) {
    const auto& f = spec.factors[i];
    const Real mu = f.mu.to_long_double();
    const Real di = static_cast<Real>(f.params.dim);
    const Real n = real_norm(f.kind, point.factors[i]);
    value *= std::pow(mu, di) * normalization_constant(f.kind);
    value *= std::pow(f.nu.to_long_double() + 1 / u, di) / std::pow(n, static_cast<Real>(f.params.genus) + mu * d0);
  }
  return value;
}

MongeAmpereResult monge_ampere_check(const DomainSpec& spec, const FullPoint& point, Real h) {
  MongeAmpereResult out;
  out.fd_determinant = complex_hessian_fd(spec, point, h).determinant().real();
  out.closed_form = monge_ampere_closed_form(spec, point);
  out.relative_error = std::fabs(out.fd_determinant - out.closed_form) / std::fabs(out.closed_form);
  return out;
}

MongeAmpereResult monge_ampere_check_extrapolated(const DomainSpec& spec, const FullPoint& point, Real h) {
  MongeAmpereResult out;
  const Real coarse = complex_hessian_fd(spec, point, h).determinant().real();
  const Real fine = complex_hessian_fd(spec, point, h / 2).determinant().real();
  out.fd_determinant = (4 * fine - coarse) / 3;
  out.closed_form = monge_ampere_closed_form(spec, point);
  out.relative_error = std::fabs(out.fd_determinant - out.closed_form) / std::fabs(out.closed_form);
  return out;
}

FullPoint transported_point(const DomainSpec& spec, const FullPoint& point) {
  FullPoint out;
  for (const auto& f : spec.factors) out.factors.push_back({std::vector<Complex>(factor_dim(f.kind), Complex(0))});
  const Real scale = std::sqrt(norm_power_product(spec, point));
  for (const auto& c : point.fiber) out.fiber.push_back(c / scale);
  return out;
}

Real epsilon_invariance_check(const DomainSpec& spec, const FullPoint& point, const Rational& alpha) {
  require_numeric(spec);
  const auto closed = epsilon::epsilon_coeffs(spec, alpha);
  const Real e1 = closed.value(fiber_ratio(spec, point));
  const Real e2 = closed.value(fiber_ratio(spec, transported_point(spec, point)));
  return std::fabs(e1 - e2) / std::fabs(e1);
}

Real weighted_kernel(const DomainSpec& spec, const Rational& alpha, const FullPoint& point) {
  require_numeric(spec);
  const auto series = epsilon::epsilon_series_at(spec, alpha, fiber_ratio(spec, point));
  const int n = spec.total_dim();
  const Real a = alpha.to_long_double();
  Real value = algebra::rising_factorial(alpha - Rational(n), static_cast<unsigned>(n)).to_long_double() * series.raw_sum;
  for (std::size_t i = 0; i < spec.factors.size(); ++i) {
    const auto& f = spec.factors[i];
    const Real weight = f.mu.to_long_double() * (1 + f.nu.to_long_double()) * a;
    value /= std::pow(real_norm(f.kind, point.factors[i]), weight);
  }
  return value;
}

Complex cross_term(const DomainSpec& spec, const FullPoint& p1, const FullPoint& p2) {
  require_numeric(spec);
  Complex inner = 0;
  for (std::size_t k = 0; k < p1.fiber.size(); ++k) inner += p1.fiber[k] * std::conj(p2.fiber[k]);
  Complex denom = 1;
  for (std::size_t i = 0; i < spec.factors.size(); ++i) {
    const auto& f = spec.factors[i];
    denom *= std::exp(f.mu.to_long_double() * std::log(generic_norm(f.kind, p1.factors[i], p2.factors[i])));
  }
  return inner / denom;
}

Real diastasis_check(const DomainSpec& spec, Real beta, const FullPoint& p1, const FullPoint& p2) {
  require_balls(spec);
  // Diagonal quantities go through the same code path as the mixed ones so
  // that p1 == p2 cancels exactly.
  Real log_value = 0;
  for (std::size_t i = 0; i < spec.factors.size(); ++i) {
    const auto& f = spec.factors[i];
    const Real weight = f.mu.to_long_double() * (1 + f.nu.to_long_double());
    const Real l11 = std::log(std::abs(generic_norm(f.kind, p1.factors[i], p1.factors[i])));
    const Real l22 = std::log(std::abs(generic_norm(f.kind, p2.factors[i], p2.factors[i])));
    const Real l12 = std::log(std::abs(generic_norm(f.kind, p1.factors[i], p2.factors[i])));
    log_value += beta * weight * (l11 + l22 - 2 * l12);
  }
  const Complex x = Complex(1) - cross_term(spec, p1, p2);
  if (!(x.real() > 0)) throw BranchCutError("cross term leaves the right half-plane");
  const Real u1 = std::abs(Complex(1) - cross_term(spec, p1, p1));
  const Real u2 = std::abs(Complex(1) - cross_term(spec, p2, p2));
  log_value += beta * (std::log(u1) + std::log(u2) - 2 * std::log(std::abs(x)));
  return std::exp(log_value);
}

FullPoint sample_point(const DomainSpec& spec, std::uint64_t seed, std::uint64_t index, const SampleOptions& options) {
  require_numeric(spec);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);

  FullPoint out;
  for (const auto& f : spec.factors) {
    FactorPoint z{std::vector<Complex>(factor_dim(f.kind))};
    std::size_t attempts = 0;
    do {
      if (++attempts > options.max_attempts) throw std::runtime_error("sampling gave up on " + f.kind.label());
      for (auto& c : z.coords) c = uniform_disc(rng, options.radius);
    } while (!factor_inside(f.kind, z, options.margin));
    out.factors.push_back(std::move(z));
  }

  out.fiber.assign(static_cast<std::size_t>(spec.fiber_dim), Complex(0));
  const Real product = norm_power_product(spec, out);
  const Real fiber_radius = std::sqrt(product) * std::min<Real>(options.radius, 1);
  std::size_t attempts = 0;
  Real sq = 0;
  do {
    if (++attempts > options.max_attempts) throw std::runtime_error("sampling gave up on the fiber");
    sq = 0;
    for (auto& c : out.fiber) {
      c = uniform_disc(rng, fiber_radius);
      sq += std::norm(c);
    }
  } while (sq > (1 - options.margin) * product);
  return out;
}

BoundednessResult boundedness_sample(const DomainSpec& spec, std::size_t count, std::uint64_t seed,
                                     const std::optional<Rational>& alpha, const SampleOptions& options) {
  require_balls(spec);
  if (count < 1) throw std::invalid_argument("count must be at least 1");

  std::optional<epsilon::EpsilonClosedForm> closed;
  if (alpha) {
    try {
      closed = epsilon::epsilon_coeffs(spec, *alpha);
    } catch (const epsilon::NotPolynomial&) {
    }
  }
  const int d = spec.base_dim();
  const int n = spec.total_dim();

  BoundednessResult out;
  for (std::size_t i = 0; i < count; ++i) {
    const FullPoint p1 = sample_point(spec, seed, 2 * i, options);
    const FullPoint p2 = sample_point(spec, seed, 2 * i + 1, options);
    const Complex cross = cross_term(spec, p1, p2);
    const Complex x = Complex(1) - cross;
    ++out.samples;
    if (!(x.real() > 0)) ++out.rejected;
    out.max_cross = std::max(out.max_cross, std::abs(cross));
    out.max_abs_x = std::max(out.max_abs_x, std::abs(x));
    if (!closed) continue;

    const Real a = closed->alpha.to_long_double();
    const Real lead = (closed->diffs[static_cast<std::size_t>(d - 1)] / algebra::factorial(static_cast<unsigned>(d - 1)))
                          .to_long_double();
    const Complex b = Complex(-Real(n) * Real(n + 1) / 2) + lead * x;
    Complex eps = 0;
    for (const auto& c : closed->coeffs) eps = eps * x + c.to_long_double();
    const Complex c = (eps - std::pow(a, Real(n)) - b * std::pow(a, Real(n - 1))) / std::pow(a, Real(n - 2));
    out.max_abs_b = std::max(out.max_abs_b.value_or(0), std::abs(b));
    out.max_abs_c = std::max(out.max_abs_c.value_or(0), std::abs(c));
  }
  out.bounded = out.max_cross < 1 && out.max_abs_x < 2;
  return out;
}

}  // namespace hartogs::numeric
