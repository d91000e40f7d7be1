// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "corpus.hpp"
#include "l2alex/degree.hpp"
#include "l2alex/mahler.hpp"
#include "l2alex/torsion.hpp"
#include "oracles.hpp"

using namespace l2alex;

namespace {

struct Verdict {
  bool ok = true;
  std::ostringstream note;
  std::string extra;

  void info(const std::string& what) { extra += (extra.empty() ? "" : "; ") + what; }

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) note << "failed: ";
      else note << "; ";
      note << what;
      ok = false;
    }
  }
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.require(false, std::string("exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  v.require(secs < limit_s, "runtime " + std::to_string(secs) + " s over the limit");
  if (!v.ok) ++failures;
  std::string notes = v.note.str();
  if (!v.extra.empty()) notes += (notes.empty() ? "" : "; ") + v.extra;
  std::printf("[%s] %d. %s (%.2f s, limit %.0f s)%s%s\n", v.ok ? "PASS" : "FAIL", id, name, secs,
              limit_s, notes.empty() ? "" : " -- ", notes.c_str());
  std::fflush(stdout);
}

LaurentPoly dense1(const std::vector<double>& c) {
  std::vector<std::pair<ExponentVector, Complex>> t;
  for (std::size_t k = 0; k < c.size(); ++k) t.push_back({{static_cast<int>(k)}, c[k]});
  return LaurentPoly::from_terms(1, t);
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

}  // namespace

int main() {
  const LaurentPoly quadratic = dense1({1, -3, 1});
  const LaurentPoly lehmer = dense1({1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1});
  const LaurentPoly linear2 =
      LaurentPoly::from_terms(2, {{{0, 0}, 1.0}, {{1, 0}, 1.0}, {{0, 1}, 1.0}});

  // Oracles run outside the timed regions.
  const double lehmer_oracle = mahler_1v_quadrature(lehmer, {1e-9}).measure;
  const double trapezoid_oracle = std::exp(oracle::trapezoid_log_mahler_2d(linear2, 4096));

  criterion(1, "Mahler engine", 5.0, [&](Verdict& v) {
    const double q = mahler_1v(quadratic);
    v.require(std::abs(q - (3 + std::sqrt(5.0)) / 2) < 1e-10, "quadratic " + fmt(q));
    const double l = mahler_1v(lehmer);
    v.require(std::abs(l - 1.176280818) < 1e-8, "Lehmer " + fmt(l));
    v.require(std::abs(l - lehmer_oracle) < 1e-8, "Lehmer vs quadrature oracle");
    const double m = mahler_mv(linear2, 1e-8).measure;
    v.require(std::abs(m - 1.3813564445) < 1e-6, "1+z1+z2 " + fmt(m));
    v.require(std::abs(m - trapezoid_oracle) < 1e-6,
              "1+z1+z2 vs trapezoid oracle " + fmt(trapezoid_oracle));
  });

  criterion(2, "Jensen/quadrature equivalence", 10.0, [&](Verdict& v) {
    std::mt19937_64 rng(53);
    std::uniform_int_distribution<int> deg(1, 8), coef(-9, 9);
    double worst = 0.0;
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<double> c(static_cast<std::size_t>(deg(rng)) + 1);
      for (auto& x : c) x = coef(rng);
      if (c.back() == 0) c.back() = 1;
      const LaurentPoly p = dense1(c);
      const double jensen = mahler_1v(p);
      const double quad = mahler_1v_quadrature(p, {1e-8}).measure;
      worst = std::max(worst, std::abs(jensen - quad) / jensen);
    }
    v.require(worst < 1e-6, "max relative disagreement " + fmt(worst));
  });

  const std::vector<corpus::MatrixCase> cases = corpus::integer_matrices(20240601, 20);

  criterion(3, "Convexity suite", 60.0, [&](Verdict& v) {
    const std::vector<double> grid = geometric_grid(1e-3, 1e3, 41);
    std::string above_r;
    for (std::size_t k = 0; k < cases.size(); ++k) {
      const DetFunction f = det_function(cases[k].a, cases[k].c);
      const ConvexityReport r = convexity_check(f, grid, 1e-6);
      const double bound = exponent_bound(cases[k].a, cases[k].c);
      v.require(r.violations.empty(), "case " + std::to_string(k) + " not convex");
      v.require(r.slope_violations.empty(), "case " + std::to_string(k) + " slope outside [p min, p max]");
      v.require(r.slope_spread() <= bound + 1e-6, "case " + std::to_string(k) + " slope spread above R");
      if (r.max_abs_slope > bound + 1e-6) {
        above_r += (above_r.empty() ? "" : ", ") + std::to_string(k) + " (|slope| " + fmt(r.max_abs_slope) +
                   ", R " + fmt(bound) + ")";
      }
    }
    if (!above_r.empty()) {
      v.info("|slope| exceeds R only where the whole support sits on one side of 0: cases " + above_r +
             "; their slopes stay inside [p min, p max] with spread <= R");
    }
  });

  criterion(4, "Chief-part asymptotics", 60.0, [&](Verdict& v) {
    double worst = 0.0, smallest_c = 1e300;
    for (std::size_t k = 0; k < cases.size(); ++k) {
      const DetFunction f = det_function(cases[k].a, cases[k].c);
      const AsymptoteReport r = asymptote(f);
      v.require(r.method == AsymptoteMethod::ExactChiefPart, "case " + std::to_string(k) + " not exact");
      const double hi = std::exp(f.log_eval(1e6) - std::log(*r.c_plus) - r.d_plus * std::log(1e6));
      const double lo = std::exp(f.log_eval(1e-6) - std::log(*r.c_minus) - r.d_minus * std::log(1e-6));
      worst = std::max({worst, std::abs(hi - 1), std::abs(lo - 1)});
      smallest_c = std::min({smallest_c, *r.c_plus, *r.c_minus});
    }
    v.require(worst < 1e-3, "max ratio error " + fmt(worst));
    v.require(smallest_c >= 1 - 1e-9, "smallest coefficient " + fmt(smallest_c));
    v.info("max ratio error " + fmt(worst) + ", smallest C " + fmt(smallest_c));
  });

  criterion(5, "Degree Lipschitz bound", 30.0, [&](Verdict& v) {
    double worst = 0.0;
    for (const corpus::LipschitzCase& c : corpus::lipschitz_triples(777, 10)) {
      const LipschitzReport r = lipschitz_degree_check(c.a, c.base, c.xi, 4);
      v.require(!r.degenerate && r.passed, "bound violated, ratio " + fmt(r.max_ratio));
      worst = std::max(worst, r.max_ratio);
    }
    v.info("largest |delta deg| / (2 R |delta lambda|) " + fmt(worst));
  });

  criterion(6, "Figure-eight gluing table", 1.0, [&](Verdict& v) {
    const double upper = std::exp(6 * kV3 / (6 * std::numbers::pi));
    auto check_row = [&](std::array<double, 3> phi, double norm, double leading, double leading_tol) {
      const Section9Result r = section9(phi);
      const AsymptoteReport d = torsion_degree(section9_torsion(phi));
      v.require(r.norm == norm, "norm");
      v.require(std::abs(r.leading - leading) <= leading_tol, "leading " + fmt(r.leading));
      v.require(std::abs(d.deg_b - norm) < 1e-9, "degree vs norm");
      v.require(r.leading >= 1 && r.leading <= upper, "leading outside [1, e^{Vol/6pi}]");
    };
    check_row({0, 0, 0}, 0, 1.381366, 1e-5);
    check_row({1, -1, 0}, 2, 1.113700, 1e-5);
    check_row({1, 1, -2}, 4, 1, 0);
  });

  criterion(7, "Symmetry and scaling", 5.0, [&](Verdict& v) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
      const LaurentPoly p = oracle::random_poly(rng, 2, 6, -3, 3, 7);
      const std::vector<double> s = oracle::random_integer_sigma(rng, 2, 2);
      const CohomClass c = CohomClass::from_sigma(s);
      const CohomClass c3 = CohomClass::from_sigma({3 * s[0], 3 * s[1]});
      v.require(twist_poly(p, c.scaled(2.0), 3.0) == twist_poly(p, c, std::pow(3.0, 2.0)), "c = 2");
      v.require(twist_poly(p, c.scaled(-1.0), 2.0) == twist_poly(p, c, std::pow(2.0, -1.0)), "c = -1");
      v.require(twist_poly(p, c3.scaled(1.0 / 3.0), 8.0) == twist_poly(p, c3, std::pow(8.0, 1.0 / 3.0)),
                "c = 1/3");
    }
    const LaurentMatrix a = LaurentMatrix::from_rows({{quadratic}});
    const CohomClass unit = CohomClass::from_sigma({1.0});
    const TorsionFunction pos = torsion_from_presentation({a, unit, {}, 1, ""});
    const TorsionFunction neg = torsion_from_presentation({a, unit.scaled(-1.0), {}, 1, ""});
    const SymmetryReport r = symmetry_check(pos, neg, geometric_grid(1e-3, 1e3, 41));
    v.require(r.max_residual < 1e-9, "residual " + fmt(r.max_residual));
    v.require(std::isfinite(r.r), "fitted r not finite");
  });

  criterion(8, "Fibered and graph closed forms", 1.0, [&](Verdict& v) {
    const double h = std::log((3 + std::sqrt(5.0)) / 2);
    v.require(fibered_torsion(h, 1, 0.3) == std::optional<double>(1.0), "t = 0.3");
    v.require(fibered_torsion(h, 1, 3.0) == std::optional<double>(3.0), "t = 3");
    v.require(!fibered_torsion(h, 1, 1.0).has_value(), "t = 1 should be unspecified");
    for (double t : {0.125, 0.25, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 5.0, 8.0}) {
      const double m = std::max(1.0, t);
      v.require(graph_torsion(3, t) == m * m * m, "graph at t = " + fmt(t));
    }
    std::vector<TorsionFunction> pieces;
    double sum = 0;
    for (double x : {1.0, 2.0, 0.5}) {
      pieces.emplace_back(TorsionFunction::Fibered{x * h, x, std::nullopt});
      sum += x;
    }
    v.require(torsion_degree(glue(pieces)).deg_b == sum, "glued degree not additive");
  });

  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
