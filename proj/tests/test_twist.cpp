#include <doctest.h>

#include <cmath>
#include <random>

#include "l2alex/error.hpp"
#include "l2alex/twist.hpp"
#include "oracles.hpp"

using namespace l2alex;

TEST_CASE("twist examples") {
  const CohomClass c = CohomClass::from_sigma({1.0});
  CHECK(twist_poly(LaurentPoly::monomial({2}), c, 10.0) == LaurentPoly::monomial({2}, 100.0));
  std::mt19937_64 rng(1);
  const LaurentPoly p = oracle::random_poly(rng, 1, 5, -3, 3, 7);
  CHECK(twist_poly(p, c, 1.0) == p);
  CHECK(twist_poly(p, c, 1.0).integer_certified());
  CHECK_FALSE(twist_poly(p, c, 2.0).integer_certified());
  CHECK_THROWS_AS(twist_poly(p, c, 0.0), InputError);
  CHECK_THROWS_AS(twist_poly(p, c, -1.0), InputError);
}

TEST_CASE("twist composes multiplicatively in t") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const LaurentPoly p = oracle::random_poly(rng, 2, 5, -3, 3, 7);
    const CohomClass c = CohomClass::from_sigma({0.75, -1.25});
    const double t = 1.7, s = 0.6;
    CHECK(twist_poly(twist_poly(p, c, t), c, s).approx_equal(twist_poly(p, c, s * t), 1e-13));
  }
}

TEST_CASE("multivariable twist") {
  const Decomposition dec{{1.0, std::sqrt(2.0)}, {{1, 0}, {0, 1}}};
  const CohomClass c = CohomClass::from_decomposition(dec);
  const LaurentPoly p = LaurentPoly::monomial({1, 1});
  CHECK(twist_poly_multi(p, c, {2.0, 3.0}) == LaurentPoly::monomial({1, 1}, 6.0));
  CHECK(twist_poly_multi(p, c, {1.0, 1.0}) == p);

  std::mt19937_64 rng(4);
  const LaurentPoly q = oracle::random_poly(rng, 2, 6, -3, 3, 7);
  const double t = 3.3;
  const std::vector<double> tvec{std::pow(t, dec.r[0]), std::pow(t, dec.r[1])};
  CHECK(twist_poly_multi(q, c, tvec).approx_equal(twist_poly(q, c, t), 1e-13));
  CHECK_THROWS_AS(twist_poly_multi(q, CohomClass::from_sigma({std::sqrt(3.0), 1.0}), tvec),
                  InputError);
  CHECK_THROWS_AS(twist_poly_multi(q, c, {1.0}), InputError);
}

TEST_CASE("rational classes get an exact rank-one decomposition") {
  const CohomClass c = CohomClass::from_sigma({0.5, -1.0 / 3.0, 2.0});
  REQUIRE(c.has_decomposition());
  const Decomposition& d = *c.decomposition();
  CHECK(d.rank() == 1);
  CHECK(d.r[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(d.phi[0] == std::vector<long long>{3, -2, 12});
  CHECK_FALSE(CohomClass::from_sigma({std::sqrt(2.0), 1.0}).has_decomposition());
  const CohomClass zero = CohomClass::from_sigma({0.0, 0.0});
  REQUIRE(zero.has_decomposition());
  CHECK(zero.decomposition()->phi[0] == std::vector<long long>{0, 0});
}

TEST_CASE("explicit decompositions are validated") {
  CHECK_THROWS_AS(CohomClass::from_decomposition({{-1.0}, {{1}}}), InputError);
  CHECK_THROWS_AS(CohomClass::with_decomposition({1.0}, {{1.0}, {{2}}}), InputError);
  CHECK_NOTHROW(CohomClass::with_decomposition({2.0}, {{1.0}, {{2}}}));
}

TEST_CASE("exponent bound examples") {
  const LaurentPoly z = LaurentPoly::variable(1, 0), one = LaurentPoly::constant(1, 1.0);
  const CohomClass c = CohomClass::from_sigma({1.0});
  CHECK(exponent_bound(LaurentMatrix::from_rows({{one - z}}), c) == 1.0);
  CHECK(exponent_bound(LaurentMatrix::from_rows({{one, one.scaled(3.0)}, {one.scaled(-2.0), one}}),
                       c) == 0.0);
  CHECK_THROWS_AS(exponent_bound(LaurentMatrix(2, 1), c), InputError);

  std::mt19937_64 rng(8);
  const LaurentMatrix a = oracle::random_matrix(rng, 3, 2, 3, -2, 2, 5);
  const CohomClass s = CohomClass::from_sigma({0.5, -1.5});
  CHECK(exponent_bound(a, s.scaled(-2.0)) == doctest::Approx(2.0 * exponent_bound(a, s)));
}

TEST_CASE("exponent bound is subadditive under products") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const LaurentMatrix a = oracle::random_matrix(rng, 2, 2, 3, -2, 2, 5);
    const LaurentMatrix b = oracle::random_matrix(rng, 2, 2, 3, -2, 2, 5);
    const CohomClass c = CohomClass::from_sigma(oracle::random_integer_sigma(rng, 2, 3));
    if (a.is_zero() || b.is_zero() || (a * b).is_zero()) continue;
    CHECK(exponent_bound(a * b, c) <= exponent_bound(a, c) + exponent_bound(b, c) + 1e-12);
  }
}

TEST_CASE("twist anti-commutes with the involution") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    const LaurentPoly p = oracle::random_poly(rng, 2, 6, -3, 3, 7);
    const CohomClass c = CohomClass::from_sigma({1.0, -2.0});
    for (double t : {0.3, 1.0, 7.0}) {
      const LaurentPoly lhs = poly_involution(twist_poly(p, c, t));
      const LaurentPoly rhs = twist_poly(poly_involution(p), c, 1.0 / t);
      CHECK(lhs.approx_equal(rhs, 4e-16 * 8));
    }
  }
}

TEST_CASE("scaling the class is a power of t, bit for bit on representable data") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const LaurentPoly p = oracle::random_poly(rng, 2, 6, -3, 3, 7);
    const std::vector<double> base = oracle::random_integer_sigma(rng, 2, 2);
    const CohomClass c = CohomClass::from_sigma(base);
    CHECK(twist_poly(p, c.scaled(2.0), 3.0) == twist_poly(p, c, std::pow(3.0, 2.0)));
    CHECK(twist_poly(p, c.scaled(-1.0), 2.0) == twist_poly(p, c, std::pow(2.0, -1.0)));
    const CohomClass c3 = CohomClass::from_sigma({3.0 * base[0], 3.0 * base[1]});
    CHECK(twist_poly(p, c3.scaled(1.0 / 3.0), 8.0) == twist_poly(p, c3, std::pow(8.0, 1.0 / 3.0)));
  }
  // Generic data agrees to rounding.
  const LaurentPoly p = oracle::random_poly(rng, 2, 6, -3, 3, 7);
  const CohomClass c = CohomClass::from_sigma({0.37, -1.21});
  for (double k : {2.0, -1.0, 1.0 / 3.0}) {
    CHECK(twist_poly(p, c.scaled(k), 1.9).approx_equal(twist_poly(p, c, std::pow(1.9, k)), 1e-14));
  }
}

TEST_CASE("scaled classes keep their decomposition") {
  const CohomClass c = CohomClass::from_decomposition({{1.0, std::sqrt(2.0)}, {{1, 0}, {0, 1}}});
  const CohomClass n = c.scaled(-2.0);
  REQUIRE(n.has_decomposition());
  CHECK(n.decomposition()->r[1] == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(n.decomposition()->phi[0] == std::vector<long long>{-1, 0});
  CHECK(n.sigma()[1] == doctest::Approx(-2.0 * std::sqrt(2.0)));
}

