#pragma once

#include <string>
#include <vector>

#include "hartogs/rational.hpp"
#include "hartogs/uni_poly.hpp"

namespace hartogs::domains {

using algebra::Rational;
using algebra::UniPoly;

/// Rank, characteristic multiplicities, dimension and genus of an
/// irreducible bounded symmetric domain. Always satisfies
///   dim = r(r-1)/2 * a + r*b + r   and   genus = (r-1)*a + b + 2.
struct IrreducibleDomainParams {
  int rank = 1;
  int mult_a = 2;
  int mult_b = 0;
  int dim = 1;
  int genus = 2;

  friend bool operator==(const IrreducibleDomainParams&, const IrreducibleDomainParams&) = default;
};

/// Derives dim and genus from (r, a, b). Throws std::invalid_argument for
/// r < 1 or negative multiplicities.
IrreducibleDomainParams make_irreducible(int rank, int mult_a, int mult_b);

/// True when dim and genus agree with rank and multiplicities.
bool is_consistent(const IrreducibleDomainParams& params);

enum class CartanType { ball, I, II, III, IV, V, VI };

/// One entry of the classification. `ball` uses n for the dimension,
/// I(m, n) both sizes, II/III/IV the single size n, V and VI none.
struct FactorKind {
  CartanType type = CartanType::ball;
  int m = 0;
  int n = 1;

  static FactorKind ball(int dim) { return {CartanType::ball, 1, dim}; }
  static FactorKind type_one(int m, int n) { return {CartanType::I, m, n}; }
  static FactorKind type_two(int n) { return {CartanType::II, 0, n}; }
  static FactorKind type_three(int n) { return {CartanType::III, 0, n}; }
  static FactorKind type_four(int n) { return {CartanType::IV, 0, n}; }
  static FactorKind type_five() { return {CartanType::V, 0, 0}; }
  static FactorKind type_six() { return {CartanType::VI, 0, 0}; }

  /// "ball(3)", "I(2,3)", "IV(5)", "V", ...
  std::string label() const;

  friend bool operator==(const FactorKind&, const FactorKind&) = default;
};

/// Swaps I(m, n) into m <= n; other kinds are returned unchanged.
FactorKind normalize(FactorKind kind);

/// Standard (r, a, b) of a classical or exceptional domain with derived
/// (d, p). Throws std::invalid_argument for sizes outside the family.
IrreducibleDomainParams cartan_catalog(FactorKind kind);

struct CatalogEntry {
  FactorKind kind;
  IrreducibleDomainParams params;
};

/// Every family instantiated for sizes up to max_size, plus V and VI.
std::vector<CatalogEntry> catalog_listing(int max_size);

/// chi(s) = prod_{j=1}^{r} (s + 1 + (j-1) a/2)_{1 + b + (r-j) a}; monic of degree d.
UniPoly hua_polynomial(const IrreducibleDomainParams& params);

/// Membership of mu in {0, a/2, ..., (r-1)a/2} U ((r-1)a/2, inf).
bool wallach_contains(const IrreducibleDomainParams& params, const Rational& mu);

/// Non-increasing sequence of non-negative integers.
class Partition {
 public:
  Partition() = default;
  /// Throws std::invalid_argument if parts increase anywhere.
  explicit Partition(std::vector<unsigned> parts);

  const std::vector<unsigned>& parts() const { return parts_; }
  /// Number of nonzero parts.
  std::size_t length() const;
  unsigned weight() const;

 private:
  std::vector<unsigned> parts_;
};

/// (s)_lambda = prod_j (s - (j-1) a/2)_{lambda_j}.
Rational generalized_pochhammer(const Rational& s, const Partition& lambda, const Rational& mult_a);
/// As above; throws std::invalid_argument when length(lambda) exceeds the rank.
Rational generalized_pochhammer(const Rational& s, const Partition& lambda,
                                const IrreducibleDomainParams& params);

struct Factor {
  FactorKind kind;
  IrreducibleDomainParams params;
  Rational mu;
  Rational nu;
};

/// Builds a factor from a catalog kind.
Factor make_factor(FactorKind kind, const Rational& mu, const Rational& nu);

/// Generalized Cartan-Hartogs datum: base factors with weights mu_i, nu_i
/// and the fiber dimension d0.
struct DomainSpec {
  std::vector<Factor> factors;
  int fiber_dim = 1;

  /// d = sum of the factor dimensions.
  int base_dim() const;
  /// n = d + d0.
  int total_dim() const;
  /// prod_i mu_i^{d_i}.
  Rational mu_power_product() const;
};

struct Violation {
  std::string path;
  std::string message;
};

std::vector<Violation> validate_spec(const DomainSpec& spec);

/// max{n, (p_i - 1) / (mu_i (1 + nu_i))}; callers require alpha strictly above.
Rational alpha_threshold(const DomainSpec& spec);

}  // namespace hartogs::domains
