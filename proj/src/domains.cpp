#include "hartogs/domains.hpp"

#include <algorithm>
#include <stdexcept>

namespace hartogs::domains {

IrreducibleDomainParams make_irreducible(int rank, int mult_a, int mult_b) {
  if (rank < 1) throw std::invalid_argument("rank must be positive");
  if (mult_a < 0 || mult_b < 0) throw std::invalid_argument("multiplicities must be non-negative");
  IrreducibleDomainParams p;
  p.rank = rank;
  p.mult_a = mult_a;
  p.mult_b = mult_b;
  p.dim = rank * (rank - 1) / 2 * mult_a + rank * mult_b + rank;
  p.genus = (rank - 1) * mult_a + mult_b + 2;
  return p;
}

bool is_consistent(const IrreducibleDomainParams& p) {
  if (p.rank < 1 || p.mult_a < 0 || p.mult_b < 0) return false;
  return p.dim == p.rank * (p.rank - 1) / 2 * p.mult_a + p.rank * p.mult_b + p.rank &&
         p.genus == (p.rank - 1) * p.mult_a + p.mult_b + 2;
}

std::string FactorKind::label() const {
  switch (type) {
    case CartanType::ball: return "ball(" + std::to_string(n) + ")";
    case CartanType::I: return "I(" + std::to_string(m) + "," + std::to_string(n) + ")";
    case CartanType::II: return "II(" + std::to_string(n) + ")";
    case CartanType::III: return "III(" + std::to_string(n) + ")";
    case CartanType::IV: return "IV(" + std::to_string(n) + ")";
    case CartanType::V: return "V";
    case CartanType::VI: return "VI";
  }
  return "?";
}

FactorKind normalize(FactorKind kind) {
  if (kind.type == CartanType::I && kind.m > kind.n) std::swap(kind.m, kind.n);
  if (kind.type == CartanType::ball) kind.m = 1;
  return kind;
}

IrreducibleDomainParams cartan_catalog(FactorKind kind) {
  kind = normalize(kind);
  IrreducibleDomainParams p;
  switch (kind.type) {
    case CartanType::ball:
      if (kind.n < 1) throw std::invalid_argument("ball dimension must be at least 1");
      p = make_irreducible(1, 2, kind.n - 1);
      break;
    case CartanType::I:
      if (kind.m < 1) throw std::invalid_argument("type I sizes must be at least 1");
      p = make_irreducible(kind.m, 2, kind.n - kind.m);
      break;
    case CartanType::II:
      if (kind.n < 2) throw std::invalid_argument("type II size must be at least 2");
      p = make_irreducible(kind.n / 2, 4, kind.n % 2 == 0 ? 0 : 2);
      break;
    case CartanType::III:
      if (kind.n < 1) throw std::invalid_argument("type III size must be at least 1");
      p = make_irreducible(kind.n, 1, 0);
      break;
    case CartanType::IV:
      if (kind.n < 3) throw std::invalid_argument("type IV size must be at least 3");
      p = make_irreducible(2, kind.n - 2, 0);
      break;
    case CartanType::V: p = make_irreducible(2, 6, 4); break;
    case CartanType::VI: p = make_irreducible(3, 8, 0); break;
  }
  if (!is_consistent(p)) throw std::logic_error("catalog entry violates the dimension/genus identities");
  return p;
}

std::vector<CatalogEntry> catalog_listing(int max_size) {
  std::vector<CatalogEntry> out;
  auto push = [&out](FactorKind k) { out.push_back({k, cartan_catalog(k)}); };
  for (int n = 1; n <= max_size; ++n) push(FactorKind::ball(n));
  for (int m = 1; m <= max_size; ++m) {
    for (int n = m; n <= max_size; ++n) push(FactorKind::type_one(m, n));
  }
  for (int n = 2; n <= max_size; ++n) push(FactorKind::type_two(n));
  for (int n = 1; n <= max_size; ++n) push(FactorKind::type_three(n));
  for (int n = 3; n <= max_size; ++n) push(FactorKind::type_four(n));
  push(FactorKind::type_five());
  push(FactorKind::type_six());
  return out;
}

UniPoly hua_polynomial(const IrreducibleDomainParams& params) {
  const int r = params.rank;
  const int a = params.mult_a;
  const int b = params.mult_b;
  UniPoly chi = UniPoly::constant(Rational(1));
  for (int j = 1; j <= r; ++j) {
    const Rational shift = Rational(1) + Rational((j - 1) * a, 2);
    chi *= algebra::rising_factorial_poly(shift, static_cast<unsigned>(1 + b + (r - j) * a));
  }
  return chi;
}

bool wallach_contains(const IrreducibleDomainParams& params, const Rational& mu) {
  const Rational half_a(params.mult_a, 2);
  const Rational edge = Rational(params.rank - 1) * half_a;
  if (mu > edge) return true;
  for (int j = 0; j < params.rank; ++j) {
    if (mu == Rational(j) * half_a) return true;
  }
  return false;
}

Partition::Partition(std::vector<unsigned> parts) : parts_(std::move(parts)) {
  for (std::size_t k = 1; k < parts_.size(); ++k) {
    if (parts_[k] > parts_[k - 1]) throw std::invalid_argument("partition parts must be non-increasing");
  }
}

std::size_t Partition::length() const {
  return static_cast<std::size_t>(std::count_if(parts_.begin(), parts_.end(), [](unsigned v) { return v > 0; }));
}

unsigned Partition::weight() const {
  unsigned w = 0;
  for (unsigned v : parts_) w += v;
  return w;
}

Rational generalized_pochhammer(const Rational& s, const Partition& lambda, const Rational& mult_a) {
  Rational product(1);
  const auto& parts = lambda.parts();
  for (std::size_t j = 0; j < parts.size(); ++j) {
    product *= algebra::rising_factorial(s - Rational(static_cast<long>(j)) * mult_a / Rational(2), parts[j]);
  }
  return product;
}

Rational generalized_pochhammer(const Rational& s, const Partition& lambda,
                                const IrreducibleDomainParams& params) {
  if (lambda.length() > static_cast<std::size_t>(params.rank)) {
    throw std::invalid_argument("partition longer than the rank");
  }
  return generalized_pochhammer(s, lambda, Rational(params.mult_a));
}

Factor make_factor(FactorKind kind, const Rational& mu, const Rational& nu) {
  kind = normalize(kind);
  return Factor{kind, cartan_catalog(kind), mu, nu};
}

int DomainSpec::base_dim() const {
  int d = 0;
  for (const auto& f : factors) d += f.params.dim;
  return d;
}

int DomainSpec::total_dim() const { return base_dim() + fiber_dim; }

Rational DomainSpec::mu_power_product() const {
  Rational product(1);
  for (const auto& f : factors) product *= f.mu.pow(static_cast<unsigned>(f.params.dim));
  return product;
}

std::vector<Violation> validate_spec(const DomainSpec& spec) {
  std::vector<Violation> out;
  if (spec.factors.empty()) out.push_back({"factors", "at least one base factor is required"});
  if (spec.fiber_dim < 1) out.push_back({"d0", "d0 must be at least 1"});
  for (std::size_t i = 0; i < spec.factors.size(); ++i) {
    const auto& f = spec.factors[i];
    const std::string prefix = "factors[" + std::to_string(i) + "]";
    if (f.mu.sign() <= 0) out.push_back({prefix + ".mu", "mu must be positive"});
    if (!(f.nu > Rational(-1))) out.push_back({prefix + ".nu", "nu must exceed -1"});
    if (!is_consistent(f.params)) {
      out.push_back({prefix, "dimension and genus inconsistent with rank and multiplicities"});
    }
  }
  return out;
}

Rational alpha_threshold(const DomainSpec& spec) {
  Rational best(spec.total_dim());
  for (const auto& f : spec.factors) {
    const Rational bound = Rational(f.params.genus - 1) / (f.mu * (Rational(1) + f.nu));
    best = std::max(best, bound);
  }
  return best;
}

}  // namespace hartogs::domains
