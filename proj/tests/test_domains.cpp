#include <doctest.h>

#include <random>

#include "hartogs/domains.hpp"
#include "oracles.hpp"

using namespace hartogs::domains;
using hartogs::algebra::Rational;
using hartogs::algebra::UniPoly;

TEST_CASE("make_irreducible derives dimension and genus") {
  const auto p = make_irreducible(2, 2, 1);  // I(2,3)
  CHECK(p.dim == 6);
  CHECK(p.genus == 5);
  CHECK(is_consistent(p));
  CHECK_THROWS_AS(make_irreducible(0, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_irreducible(1, -1, 0), std::invalid_argument);
  auto broken = p;
  broken.dim = 7;
  CHECK_FALSE(is_consistent(broken));
}

TEST_CASE("catalog matches the classification table") {
  for (const auto& entry : catalog_listing(7)) {
    CAPTURE(entry.kind.label());
    const auto q = oracle::table(entry.kind);
    CHECK(entry.params.rank == q.r);
    CHECK(entry.params.mult_a == q.a);
    CHECK(entry.params.mult_b == q.b);
    CHECK(entry.params.dim == q.d);
    CHECK(entry.params.genus == q.p);
    CHECK(is_consistent(entry.params));
  }
  CHECK(cartan_catalog(FactorKind::type_five()).dim == 16);
  CHECK(cartan_catalog(FactorKind::type_six()).genus == 18);
  CHECK(cartan_catalog(FactorKind::type_one(3, 2)) == cartan_catalog(FactorKind::type_one(2, 3)));
  CHECK(normalize(FactorKind::type_one(3, 2)) == FactorKind::type_one(2, 3));
  CHECK(FactorKind::type_one(2, 3).label() == "I(2,3)");
  CHECK(FactorKind::ball(3).label() == "ball(3)");
  CHECK(FactorKind::type_five().label() == "V");
  CHECK_THROWS_AS(cartan_catalog(FactorKind::ball(0)), std::invalid_argument);
  CHECK_THROWS_AS(cartan_catalog(FactorKind::type_two(1)), std::invalid_argument);
  CHECK_THROWS_AS(cartan_catalog(FactorKind::type_four(2)), std::invalid_argument);
}

TEST_CASE("low-dimensional coincidences") {
  // ball(1) = I(1,1) = III(1); IV(3) and III(2) share (d, p); II(3) = ball(3)
  CHECK(cartan_catalog(FactorKind::ball(1)).genus == cartan_catalog(FactorKind::type_three(1)).genus);
  CHECK(cartan_catalog(FactorKind::type_four(3)).dim == cartan_catalog(FactorKind::type_three(2)).dim);
  CHECK(cartan_catalog(FactorKind::type_four(3)).genus == cartan_catalog(FactorKind::type_three(2)).genus);
  CHECK(cartan_catalog(FactorKind::type_two(3)).dim == 3);
  CHECK(cartan_catalog(FactorKind::type_two(3)).genus == 4);
}

TEST_CASE("Hua polynomial") {
  SUBCASE("disc: chi(s) = s + 1") {
    CHECK(hua_polynomial(cartan_catalog(FactorKind::ball(1))) == UniPoly(std::vector<Rational>{1, 1}));
  }
  SUBCASE("ball(n): chi(s) = (s + 1)_n") {
    for (int n = 1; n <= 5; ++n) {
      CHECK(hua_polynomial(cartan_catalog(FactorKind::ball(n))) ==
            hartogs::algebra::rising_factorial_poly(Rational(1), static_cast<unsigned>(n)));
    }
  }
  SUBCASE("monic of degree d and agrees with the direct product") {
    std::mt19937_64 rng(3);
    for (const auto& entry : catalog_listing(5)) {
      CAPTURE(entry.kind.label());
      const UniPoly chi = hua_polynomial(entry.params);
      CHECK(chi.degree() == entry.params.dim);
      CHECK(chi.leading() == Rational(1));
      const auto q = oracle::table(entry.kind);
      for (int trial = 0; trial < 3; ++trial) {
        const Rational s = oracle::random_rational(rng, -20, 20, 7);
        CHECK(chi(s) == oracle::chi(q, s));
      }
    }
  }
}

TEST_CASE("Wallach set membership") {
  const auto disc = cartan_catalog(FactorKind::ball(1));
  CHECK(wallach_contains(disc, Rational(0)));
  CHECK(wallach_contains(disc, Rational(1, 100)));
  CHECK_FALSE(wallach_contains(disc, Rational(-1)));

  const auto i22 = cartan_catalog(FactorKind::type_one(2, 2));  // a = 2, r = 2: {0, 1} U (1, inf)
  CHECK(wallach_contains(i22, Rational(0)));
  CHECK(wallach_contains(i22, Rational(1)));
  CHECK_FALSE(wallach_contains(i22, Rational(1, 2)));
  CHECK(wallach_contains(i22, Rational(3, 2)));

  const auto iii3 = cartan_catalog(FactorKind::type_three(3));  // a = 1, r = 3: {0, 1/2, 1} U (1, inf)
  CHECK(wallach_contains(iii3, Rational(1, 2)));
  CHECK_FALSE(wallach_contains(iii3, Rational(3, 4)));
  CHECK(wallach_contains(iii3, Rational(5, 4)));
}

TEST_CASE("generalized Pochhammer") {
  const auto i22 = cartan_catalog(FactorKind::type_one(2, 2));
  const Partition lambda({2, 1});
  CHECK(lambda.length() == 2);
  CHECK(lambda.weight() == 3);
  // (s)_2 (s - 1)_1 at s = 3: 3*4*2
  CHECK(generalized_pochhammer(Rational(3), lambda, i22) == Rational(24));
  CHECK(generalized_pochhammer(Rational(3), Partition(), i22) == Rational(1));
  // A single row is the ordinary raising factorial.
  CHECK(generalized_pochhammer(Rational(1, 2), Partition({3}), Rational(2)) == oracle::rising(Rational(1, 2), 3));
  CHECK_THROWS_AS(Partition({1, 2}), std::invalid_argument);
  const auto disc = cartan_catalog(FactorKind::ball(1));
  CHECK_THROWS_AS(generalized_pochhammer(Rational(3), lambda, disc), std::invalid_argument);
  CHECK(generalized_pochhammer(Rational(3), Partition({2, 0}), disc) == Rational(12));
}

TEST_CASE("spec validation and threshold") {
  DomainSpec spec;
  spec.factors.push_back(make_factor(FactorKind::ball(1), Rational(1, 2), Rational(1, 2)));
  spec.fiber_dim = 1;
  CHECK(validate_spec(spec).empty());
  CHECK(spec.base_dim() == 1);
  CHECK(spec.total_dim() == 2);
  CHECK(spec.mu_power_product() == Rational(1, 2));
  // max{2, 1 / (1/2 * 3/2)} = 2
  CHECK(alpha_threshold(spec) == Rational(2));

  DomainSpec heavy;
  heavy.factors.push_back(make_factor(FactorKind::type_one(2, 2), Rational(1, 4), Rational(0)));
  heavy.fiber_dim = 1;
  // p = 4: 3 / (1/4) = 12 beats n = 5
  CHECK(alpha_threshold(heavy) == Rational(12));

  DomainSpec bad;
  bad.factors.push_back(make_factor(FactorKind::ball(1), Rational(0), Rational(-1)));
  bad.fiber_dim = 0;
  const auto issues = validate_spec(bad);
  REQUIRE(issues.size() == 3);
  CHECK(issues[0].path == "d0");
  CHECK(issues[0].message == "d0 must be at least 1");
  CHECK(issues[1].path == "factors[0].mu");
  CHECK(issues[1].message == "mu must be positive");
  CHECK(issues[2].path == "factors[0].nu");
  CHECK(issues[2].message == "nu must exceed -1");

  CHECK_FALSE(validate_spec(DomainSpec{}).empty());
}

TEST_CASE("Wallach set is monotone above the last point") {
  std::mt19937_64 rng(12);
  for (const auto& entry : catalog_listing(4)) {
    const auto& q = entry.params;
    const Rational edge = Rational((q.rank - 1) * q.mult_a, 2);
    for (int trial = 0; trial < 10; ++trial) {
      const Rational mu0 = edge + oracle::random_rational(rng, 1, 20, 7);
      const Rational mu1 = mu0 + oracle::random_rational(rng, 0, 20, 7);
      if (wallach_contains(q, mu0)) CHECK(wallach_contains(q, mu1));
    }
  }
}

TEST_CASE("single-row Pochhammer is the raising factorial") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<unsigned> len(0, 8);
  for (int trial = 0; trial < 50; ++trial) {
    const Rational s = oracle::random_rational(rng, -20, 20, 9);
    const unsigned m = len(rng);
    CHECK(generalized_pochhammer(s, Partition({m}), Rational(2)) == oracle::rising(s, static_cast<int>(m)));
  }
}
