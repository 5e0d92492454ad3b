#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "hartogs/domains.hpp"
#include "hartogs/rational.hpp"

namespace hartogs::numeric {

using Real = long double;
using Complex = std::complex<Real>;
using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using algebra::Rational;
using domains::DomainSpec;
using domains::FactorKind;

/// The principal branch of a power would be evaluated on its cut.
class BranchCutError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Coordinates of one factor. Ball points are vectors; a type I(m, n)
/// point is an m x n matrix stored row-major.
struct FactorPoint {
  std::vector<Complex> coords;
};

struct FullPoint {
  std::vector<FactorPoint> factors;
  std::vector<Complex> fiber;
};

/// Factor kinds with an implemented generic norm (balls and type I).
bool supports_numeric(const FactorKind& kind);
bool supports_numeric(const DomainSpec& spec);
/// Number of complex coordinates of one factor.
std::size_t factor_dim(const FactorKind& kind);

/// N(z, conj(xi)): 1 - <z, xi> on a ball, det(I - Z Xi^*) on I(m, n).
/// Throws std::invalid_argument for other kinds or wrong sizes.
Complex generic_norm(const FactorKind& kind, const FactorPoint& z, const FactorPoint& xi);

/// Flattening order: factor blocks in order, then the fiber.
std::vector<Complex> flatten(const FullPoint& point);
FullPoint unflatten(const DomainSpec& spec, std::span<const Complex> coords);

/// prod_i N_i(z_i, conj z_i)^{mu_i}
Real norm_power_product(const DomainSpec& spec, const FullPoint& point);
/// s = |w|^2 / prod_i N_i^{mu_i}
Real fiber_ratio(const DomainSpec& spec, const FullPoint& point);
/// Every factor strictly inside its domain and s < 1.
bool contains(const DomainSpec& spec, const FullPoint& point);

/// Phi = -sum_i mu_i nu_i ln N_i - ln(prod_i N_i^{mu_i} - |w|^2).
/// Throws std::domain_error outside the domain.
Real potential_eval(const DomainSpec& spec, const FullPoint& point);

using ScalarField = std::function<Real(std::span<const Complex>)>;

/// H_jk = d^2 f / dz_j d conj(z_k) from central real second differences:
///   H_jk = 1/4 [(f_{x_j x_k} + f_{y_j y_k}) + i (f_{x_j y_k} - f_{y_j x_k})].
ComplexMatrix complex_hessian_fd(const ScalarField& f, std::span<const Complex> at, Real h);

/// Hessian of Phi. Throws std::domain_error unless every point at distance
/// 4h along a real coordinate axis stays inside the domain.
ComplexMatrix complex_hessian_fd(const DomainSpec& spec, const FullPoint& point, Real h);

/// det(-d^2 N / dz dconj(z)) at the origin of one factor. Throws
/// std::invalid_argument for kinds without a generic norm.
Real normalization_constant(const FactorKind& kind);

/// det(Hessian of Phi) in closed form:
///   prod_i mu_i^{d_i} C_i / (1 - s)^{d0+1}
///     * prod_i (nu_i + 1/(1 - s))^{d_i} / N_i^{p_i + mu_i d0}.
Real monge_ampere_closed_form(const DomainSpec& spec, const FullPoint& point);

struct MongeAmpereResult {
  Real fd_determinant = 0;
  Real closed_form = 0;
  Real relative_error = 0;
};
MongeAmpereResult monge_ampere_check(const DomainSpec& spec, const FullPoint& point, Real h);
/// As above with fd_determinant = (4 det H(h/2) - det H(h)) / 3.
MongeAmpereResult monge_ampere_check_extrapolated(const DomainSpec& spec, const FullPoint& point, Real h);

/// The point (0, ..., 0, w / prod_i N_i^{mu_i / 2}) carrying the same s.
FullPoint transported_point(const DomainSpec& spec, const FullPoint& point);

/// |eps(point) - eps(transported point)| / |eps(point)| with eps from the
/// closed form at alpha. Throws like epsilon_coeffs.
Real epsilon_invariance_check(const DomainSpec& spec, const FullPoint& point, const Rational& alpha);

/// K_alpha(point, point) straight from the series
///   (alpha - n)_n / prod_i N_i^{mu_i (1 + nu_i) alpha} * sum_t psi(alpha, t) (alpha)_t / t! s^t.
Real weighted_kernel(const DomainSpec& spec, const Rational& alpha, const FullPoint& point);

/// exp(-D_beta) between two points of a domain whose factors are all balls:
///   prod_i |N_i(z, conj xi)|^{-2 beta mu_i (1 + nu_i)} |X|^{-2 beta}
///   * prod_i (N_i(z) N_i(xi))^{beta mu_i (1 + nu_i)} (1 - s_1)^beta (1 - s_2)^beta,
/// X = 1 - <w, eta> / prod_i N_i(z, conj xi)^{mu_i}.
/// Throws std::invalid_argument for non-ball factors and BranchCutError when
/// Re X <= 0.
Real diastasis_check(const DomainSpec& spec, Real beta, const FullPoint& p1, const FullPoint& p2);

/// Complex cross term <w, eta> / prod_i N_i(z, conj xi)^{mu_i}.
Complex cross_term(const DomainSpec& spec, const FullPoint& p1, const FullPoint& p2);

struct SampleOptions {
  /// Points keep 1 - (largest singular value)^2 >= margin on every factor and s <= 1 - margin.
  Real margin = 1e-3L;
  /// Coordinates are drawn from discs of this radius before rejection.
  Real radius = 1;
  std::size_t max_attempts = 1000000;
};

/// Deterministic point for (seed, index): coordinates uniform in discs,
/// rejected until inside. Throws std::runtime_error after max_attempts.
FullPoint sample_point(const DomainSpec& spec, std::uint64_t seed, std::uint64_t index,
                       const SampleOptions& options = {});

struct BoundednessResult {
  std::size_t samples = 0;
  /// Pairs whose X left the right half-plane.
  std::size_t rejected = 0;
  Real max_cross = 0;
  Real max_abs_x = 0;
  std::optional<Real> max_abs_b;
  std::optional<Real> max_abs_c;
  bool bounded = false;
};

/// Samples point pairs and tracks |cross| < 1, |X| < 2, and when alpha is
/// given and phi is a polynomial there,
///   B = -n(n+1)/2 + D^{d-1} phi(d) / (d-1)! * X
///   C = (eps(X) - alpha^n - B alpha^{n-1}) / alpha^{n-2},
/// where eps(X) is the closed form with 1 - s replaced by X.
BoundednessResult boundedness_sample(const DomainSpec& spec, std::size_t count, std::uint64_t seed,
                                     const std::optional<Rational>& alpha = std::nullopt,
                                     const SampleOptions& options = {});

}  // namespace hartogs::numeric
