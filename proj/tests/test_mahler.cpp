#include <doctest.h>

#include <cmath>
#include <random>

#include "l2alex/error.hpp"
#include "l2alex/mahler.hpp"
#include "oracles.hpp"

using namespace l2alex;

namespace {

LaurentPoly dense1(const std::vector<double>& c, int shift = 0) {
  std::vector<std::pair<ExponentVector, Complex>> t;
  for (std::size_t k = 0; k < c.size(); ++k) t.push_back({{static_cast<int>(k) + shift}, c[k]});
  return LaurentPoly::from_terms(1, t);
}

const LaurentPoly kQuadratic = dense1({1, -3, 1});
const LaurentPoly kLehmer = dense1({1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1});
const double kGolden2 = (3.0 + std::sqrt(5.0)) / 2.0;

LaurentPoly poly2(std::initializer_list<std::pair<ExponentVector, Complex>> t) {
  return LaurentPoly::from_terms(2, t);
}

}  // namespace

TEST_CASE("roots examples") {
  RootData r = roots(kQuadratic);
  CHECK(r.leading == Complex(1.0));
  CHECK(r.power == 0);
  REQUIRE(r.roots.size() == 2);
  std::vector<double> mags{std::abs(r.roots[0]), std::abs(r.roots[1])};
  std::sort(mags.begin(), mags.end());
  CHECK(mags[0] == doctest::Approx((3 - std::sqrt(5.0)) / 2).epsilon(1e-12));
  CHECK(mags[1] == doctest::Approx((3 + std::sqrt(5.0)) / 2).epsilon(1e-12));

  r = roots(LaurentPoly::monomial({3}, 2.0));
  CHECK(r.leading == Complex(2.0));
  CHECK(r.power == 3);
  CHECK(r.roots.empty());

  // z^{-1} (z - 2)(z - 1/2) = z - 5/2 + z^{-1}
  r = roots(dense1({1, -2.5, 1}, -1));
  CHECK(r.power == -1);
  REQUIRE(r.roots.size() == 2);
  CHECK(r.reconstruct().approx_equal(dense1({1, -2.5, 1}, -1), 1e-12));
  CHECK_THROWS_AS(roots(LaurentPoly(1)), InputError);
}

TEST_CASE("roots reconstruct random polynomials") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const LaurentPoly p = oracle::random_poly(rng, 1, 9, -4, 8, 9);
    if (p.is_zero()) continue;
    const RootData r = roots(p);
    CHECK(r.reconstruct().approx_equal(p, 1e-9));
  }
}

TEST_CASE("one-variable Mahler measure") {
  CHECK(mahler_1v(kQuadratic) == doctest::Approx(kGolden2).epsilon(1e-14));
  CHECK(mahler_1v(LaurentPoly::monomial({100})) == 1.0);
  CHECK(mahler_1v(LaurentPoly(1)) == 0.0);
  CHECK(mahler_1v(kLehmer) == doctest::Approx(oracle::kLehmerMeasure).epsilon(1e-13));
}

TEST_CASE("Lehmer oracles agree with the frozen constant") {
  const std::vector<long double> c{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1};
  CHECK(std::exp(static_cast<double>(oracle::durand_kerner_log_mahler(c))) ==
        doctest::Approx(oracle::kLehmerMeasure).epsilon(1e-14));
  QuadratureOptions o;
  o.tol = 1e-11;
  CHECK(mahler_1v_quadrature(kLehmer, o).measure ==
        doctest::Approx(oracle::kLehmerMeasure).epsilon(1e-9));
}

TEST_CASE("scaled measure and profiles") {
  const LaurentPoly p = dense1({-2, 1});
  CHECK(scaled_mahler_1v(p, 1.0) == doctest::Approx(2.0));
  CHECK(scaled_mahler_1v(p, 3.0) == doctest::Approx(3.0));
  CHECK(scaled_mahler_1v(kQuadratic, 1.0) == doctest::Approx(kGolden2).epsilon(1e-14));
  CHECK(scaled_mahler_1v(kQuadratic, 1e-9) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(scaled_mahler_1v(LaurentPoly(1), 2.0), InputError);

  const auto pieces = monomial_profile(kQuadratic, 1.0);
  REQUIRE(pieces.size() == 3);
  CHECK(pieces[0].t_lo == 0.0);
  CHECK(pieces[0].t_hi == doctest::Approx(0.3819660113));
  CHECK(pieces[0].coeff == doctest::Approx(1.0));
  CHECK(pieces[0].exponent == 0.0);
  CHECK(pieces[1].t_hi == doctest::Approx(2.6180339887));
  CHECK(pieces[1].coeff == doctest::Approx(2.6180339887));
  CHECK(pieces[1].exponent == 1.0);
  CHECK(std::isinf(pieces[2].t_hi));
  CHECK(pieces[2].coeff == doctest::Approx(1.0));
  CHECK(pieces[2].exponent == 2.0);

  const auto z = monomial_profile(LaurentPoly::monomial({1}), 1.7);
  REQUIRE(z.size() == 1);
  CHECK(z[0].coeff == 1.0);
  CHECK(z[0].exponent == doctest::Approx(1.7));
  const auto c = monomial_profile(LaurentPoly::constant(1, 3.0), 2.0);
  REQUIRE(c.size() == 1);
  CHECK(c[0].coeff == 3.0);
  CHECK(c[0].exponent == 0.0);
  const auto flat = monomial_profile(kQuadratic, 0.0);
  REQUIRE(flat.size() == 1);
  CHECK(flat[0].coeff == doctest::Approx(kGolden2));
}

TEST_CASE("profiles agree with the closed form") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> logt(-6.0, 6.0);
  for (double sigma1 : {1.0, -0.5, 2.5}) {
    const LaurentPoly p = oracle::random_poly(rng, 1, 6, -2, 5, 9);
    const auto prof = monomial_profile(p, sigma1);
    for (std::size_t k = 1; k < prof.size(); ++k) {
      if (sigma1 > 0) CHECK(prof[k].exponent >= prof[k - 1].exponent);
      CHECK(prof[k].t_lo == prof[k - 1].t_hi);
    }
    for (int i = 0; i < 50; ++i) {
      const double t = std::exp(logt(rng));
      CHECK(eval_profile(prof, t) ==
            doctest::Approx(scaled_mahler_1v(p, std::pow(t, sigma1))).epsilon(1e-12));
    }
  }
}

TEST_CASE("multivariable Mahler measure examples") {
  const LaurentPoly p = poly2({{{0, 0}, 1.0}, {{1, 0}, 1.0}, {{0, 1}, 1.0}});
  const MahlerResult r = mahler_mv(p, 1e-8);
  CHECK(r.measure == doctest::Approx(oracle::kOnePlusXPlusY).epsilon(1e-8));
  CHECK(r.achieved_tol <= 1e-8);
  CHECK(mahler_mv(poly2({{{1, 1}, 1.0}})).measure == 1.0);
  const LaurentPoly q = poly2({{{1, 0}, 1.0}, {{0, 0}, -2.0}}) * poly2({{{0, 1}, 1.0}, {{0, 0}, -3.0}});
  CHECK(mahler_mv(q).measure == doctest::Approx(6.0).epsilon(1e-10));
  CHECK(mahler_mv(LaurentPoly(2)).measure == 0.0);
}

TEST_CASE("1 + z1 + z2 against the L-value and trapezoid oracles") {
  const long double l = oracle::l_chi3_2();
  CHECK(static_cast<double>(l) == doctest::Approx(oracle::kLChi3At2).epsilon(1e-13));
  const double from_l = std::exp(3.0 * std::sqrt(3.0) / (4.0 * M_PI) * static_cast<double>(l));
  CHECK(from_l == doctest::Approx(oracle::kOnePlusXPlusY).epsilon(1e-13));
  const LaurentPoly p = poly2({{{0, 0}, 1.0}, {{1, 0}, 1.0}, {{0, 1}, 1.0}});
  const double trap = std::exp(oracle::trapezoid_log_mahler_2d(p, 512));
  CHECK(trap == doctest::Approx(oracle::kOnePlusXPlusY).epsilon(1e-5));
}

TEST_CASE("multiplicativity of the measure") {
  std::mt19937_64 rng(41);
  const double tol = 1e-8;
  for (int trial = 0; trial < 8; ++trial) {
    const LaurentPoly a = oracle::random_poly(rng, 2, 4, 0, 3, 4);
    const LaurentPoly b = oracle::random_poly(rng, 2, 4, 0, 3, 4);
    if (a.is_zero() || b.is_zero()) continue;
    const double ma = mahler_mv(a, tol).log_measure, mb = mahler_mv(b, tol).log_measure;
    CHECK(std::abs(mahler_mv(a * b, tol).log_measure - (ma + mb)) <= 3 * tol);
  }
}

TEST_CASE("monomial and inversion invariance") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 6; ++trial) {
    const LaurentPoly p1 = oracle::random_poly(rng, 1, 5, -2, 4, 6);
    if (p1.is_zero()) continue;
    CHECK(mahler_1v(p1 * LaurentPoly::monomial({7})) == mahler_1v(p1));
    const LaurentPoly p = oracle::random_poly(rng, 2, 5, -2, 3, 6);
    if (p.is_zero()) continue;
    const double m = mahler_mv(p, 1e-9).log_measure;
    CHECK(std::abs(mahler_mv(p * LaurentPoly::monomial({3, -2}), 1e-9).log_measure - m) <= 1e-8);
    const LaurentPoly inv = poly_monomial_transform(p, {{-1, 0}, {0, -1}});
    CHECK(std::abs(mahler_mv(inv, 1e-9).log_measure - m) <= 1e-8);
  }
}

TEST_CASE("integer polynomials have measure at least one") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t l = 1 + trial % 2;
    const LaurentPoly p = oracle::random_poly(rng, l, 4, -2, 2, 3);
    if (p.is_zero()) continue;
    CHECK(mahler_mv(p, 1e-8).log_measure >= -1e-8);
  }
}

TEST_CASE("three-variable measure of 1 + x + y + z") {
  const LaurentPoly p = LaurentPoly::from_terms(
      3, {{{0, 0, 0}, 1.0}, {{1, 0, 0}, 1.0}, {{0, 1, 0}, 1.0}, {{0, 0, 1}, 1.0}});
  const MahlerResult r = mahler_mv(p, 1e-7);
  CHECK(std::abs(r.log_measure - oracle::kLogOnePlusXPlusYPlusZ) < 1e-7);
}

TEST_CASE("Jensen and direct quadrature agree on random polynomials") {
  std::mt19937_64 rng(53);
  std::uniform_int_distribution<int> deg(1, 8), coef(-9, 9);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : c) x = coef(rng);
    if (c.back() == 0) c.back() = 1;
    const LaurentPoly p = dense1(c);
    const double jensen = mahler_1v(p);
    const double quad = mahler_1v_quadrature(p, {1e-8}).measure;
    CHECK(std::abs(jensen - quad) / jensen < 1e-6);
  }
}

TEST_CASE("scaled inner variable matches explicit scaling") {
  const LaurentPoly p = poly2({{{0, 0}, 1.0}, {{1, 0}, 1.0}, {{0, 1}, 1.0}, {{1, 2}, -2.0}});
  for (double s : {0.25, 1.0, 3.0}) {
    LaurentPoly::TermMap t;
    for (const auto& [e, c] : p.terms()) t.emplace(e, c * std::pow(s, e[1]));
    const double direct = mahler_mv(LaurentPoly::from_map(2, t, false), 1e-10).log_measure;
    CHECK(std::abs(log_mahler_inner_scaled(p, 1, std::log(s), {1e-10}).log_measure - direct) <= 1e-9);
  }
}

TEST_CASE("three variables") {
  // (1 + z1)(2 + z2 + z3) with measure 1 * M(2 + z2 + z3).
  const LaurentPoly a = LaurentPoly::from_terms(3, {{{0, 0, 0}, 1.0}, {{1, 0, 0}, 1.0}});
  const LaurentPoly b =
      LaurentPoly::from_terms(3, {{{0, 0, 0}, 2.0}, {{0, 1, 0}, 1.0}, {{0, 0, 1}, 1.0}});
  const double mb = mahler_mv(b, 1e-9).log_measure;
  CHECK(std::abs(mahler_mv(a * b, 1e-8).log_measure - mb) <= 3e-8);
  // 2 + z2 + z3: the slice in z3 has constant 2 + z2 with |2 + z2| >= 1, so
  // M = exp(mean log max(|2 + z2|, 1)) = M(2 + z2) = 2.
  CHECK(std::exp(mb) == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("budget exhaustion reports the best estimate") {
  const LaurentPoly p = poly2({{{0, 0}, 1.0}, {{1, 0}, 1.0}, {{0, 1}, 1.0}});
  QuadratureOptions o;
  o.tol = 1e-14;
  o.panel_budget = 40;
  try {
    (void)mahler_mv(p, o);
    FAIL("expected a budget error");
  } catch (const BudgetError& e) {
    CHECK(e.best_estimate() == doctest::Approx(oracle::kOnePlusXPlusY).epsilon(1e-3));
    CHECK(e.achieved_tolerance() > 0.0);
  }
}

TEST_CASE("results do not depend on the thread count") {
  const LaurentPoly p = poly2({{{0, 0}, 1.0}, {{1, 0}, 1.0}, {{0, 1}, 1.0}, {{2, 1}, 3.0}});
  QuadratureOptions one, many;
  one.threads = 1;
  many.threads = 4;
  CHECK(mahler_mv(p, one).log_measure == mahler_mv(p, many).log_measure);
}
