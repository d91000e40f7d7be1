#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "l2alex/error.hpp"
#include "l2alex/torsion.hpp"

namespace l2alex {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw InputError(std::string(what) + " must be finite");
}

}  // namespace

TorsionFunction::TorsionFunction(Variant v) : form_(std::move(v)) {
  std::visit(Overloaded{
                 [](const Presentation& p) {
                   if (p.index < 1) throw InputError("index divisor must be a positive integer");
                   for (const auto& [a, b] : p.pairs) {
                     require_finite(a, "pair entry");
                     require_finite(b, "pair entry");
                   }
                 },
                 [](const Fibered& f) {
                   if (!(f.h >= 0.0) || !std::isfinite(f.h)) throw InputError("entropy must be >= 0");
                   if (!(f.x >= 0.0) || !std::isfinite(f.x)) throw InputError("norm must be >= 0");
                 },
                 [](const Graph& g) {
                   if (!(g.x >= 0.0) || !std::isfinite(g.x)) throw InputError("norm must be >= 0");
                 },
                 [](const Monomial& m) {
                   if (!(m.c > 0.0) || !std::isfinite(m.c)) throw InputError("coefficient must be > 0");
                   require_finite(m.e, "exponent");
                 },
                 [](const Product& p) {
                   if (p.factors.empty()) throw InputError("product of no pieces");
                 },
             },
             form_);
}

bool TorsionFunction::is_zero() const {
  return std::visit(Overloaded{
                        [](const Presentation& p) { return p.numerator.is_zero(); },
                        [](const Product& p) {
                          return std::any_of(p.factors.begin(), p.factors.end(),
                                             [](const TorsionFunction& f) { return f.is_zero(); });
                        },
                        [](const auto&) { return false; },
                    },
                    form_);
}

std::optional<double> TorsionFunction::log_eval(double t, double tol) const {
  if (!(t > 0.0) || !std::isfinite(t)) throw InputError("evaluation point must be positive");
  const double lt = std::log(t);
  return std::visit(
      Overloaded{
          [&](const Presentation& p) -> std::optional<double> {
            if (p.numerator.is_zero()) return kNegInf;
            QuadratureOptions o;
            o.tol = tol;
            double v = p.numerator.log_eval(t, o);
            for (const auto& [a, b] : p.pairs) v -= std::max(a * lt, b * lt);
            return v / static_cast<double>(p.index);
          },
          [&](const Fibered& f) -> std::optional<double> {
            if (lt < -f.h) return 0.0;
            if (lt > f.h) return f.x * lt;
            if (t == 1.0 && f.volume) return *f.volume / (6.0 * std::numbers::pi);
            return std::nullopt;
          },
          [&](const Graph& g) -> std::optional<double> { return g.x * std::max(0.0, lt); },
          [&](const Monomial& m) -> std::optional<double> { return std::log(m.c) + m.e * lt; },
          [&](const Product& p) -> std::optional<double> {
            double s = 0.0;
            for (const TorsionFunction& f : p.factors) {
              const std::optional<double> v = f.log_eval(t, tol);
              if (!v) return std::nullopt;
              s += *v;
            }
            return s;
          },
      },
      form_);
}

std::optional<double> TorsionFunction::eval(double t, double tol) const {
  if (!(t > 0.0) || !std::isfinite(t)) throw InputError("evaluation point must be positive");
  // Closed forms are evaluated directly so that exact inputs give exact
  // outputs; only presentations go through the logarithm.
  return std::visit(
      Overloaded{
          [&](const Presentation&) -> std::optional<double> {
            const std::optional<double> v = log_eval(t, tol);
            if (!v) return std::nullopt;
            return std::exp(*v);
          },
          [&](const Fibered& f) -> std::optional<double> {
            const double lt = std::log(t);
            if (lt < -f.h) return 1.0;
            if (lt > f.h) return std::pow(t, f.x);
            if (t == 1.0 && f.volume) return std::exp(*f.volume / (6.0 * std::numbers::pi));
            return std::nullopt;
          },
          [&](const Graph& g) -> std::optional<double> { return t <= 1.0 ? 1.0 : std::pow(t, g.x); },
          [&](const Monomial& m) -> std::optional<double> { return m.c * std::pow(t, m.e); },
          [&](const Product& p) -> std::optional<double> {
            double prod = 1.0;
            for (const TorsionFunction& f : p.factors) {
              const std::optional<double> v = f.eval(t, tol);
              if (!v) return std::nullopt;
              prod *= *v;
            }
            return prod;
          },
      },
      form_);
}

TorsionFunction torsion_from_presentation(const TorsionSpec& spec) {
  return TorsionFunction(TorsionFunction::Presentation{det_function(spec.a, spec.cls), spec.pairs,
                                                       spec.index_divisor});
}

std::optional<double> fibered_torsion(double h, double x, double t) {
  return TorsionFunction(TorsionFunction::Fibered{h, x, std::nullopt}).eval(t);
}

double graph_torsion(double x, double t) {
  if (!(x >= 0.0)) throw InputError("norm must be >= 0");
  if (!(t > 0.0)) throw InputError("evaluation point must be positive");
  return t <= 1.0 ? 1.0 : std::pow(t, x);
}

TorsionFunction glue(std::vector<TorsionFunction> pieces) {
  if (pieces.empty()) throw InputError("glue needs at least one piece");
  if (pieces.size() == 1) return std::move(pieces.front());
  return TorsionFunction(TorsionFunction::Product{std::move(pieces)});
}

AsymptoteReport torsion_degree(const TorsionFunction& tau, double tol) {
  if (tau.is_zero()) throw DegeneracyError("torsion is the zero function");
  auto monomial_tails = [](double d_plus, double d_minus, double c_plus, double c_minus) {
    AsymptoteReport r;
    r.d_plus = d_plus;
    r.d_minus = d_minus;
    r.deg_b = d_plus - d_minus;
    r.c_plus = c_plus;
    r.c_minus = c_minus;
    return r;
  };
  return std::visit(
      Overloaded{
          [&](const TorsionFunction::Presentation& p) {
            AsymptoteReport r = asymptote(p.numerator, tol);
            for (const auto& [a, b] : p.pairs) {
              r.d_plus -= std::max(a, b);
              r.d_minus -= std::min(a, b);
            }
            const double k = static_cast<double>(p.index);
            r.d_plus /= k;
            r.d_minus /= k;
            if (r.c_plus) r.c_plus = std::pow(*r.c_plus, 1.0 / k);
            if (r.c_minus) r.c_minus = std::pow(*r.c_minus, 1.0 / k);
            r.deg_b = r.d_plus - r.d_minus;
            return r;
          },
          [&](const TorsionFunction::Fibered& f) { return monomial_tails(f.x, 0.0, 1.0, 1.0); },
          [&](const TorsionFunction::Graph& g) { return monomial_tails(g.x, 0.0, 1.0, 1.0); },
          [&](const TorsionFunction::Monomial& m) { return monomial_tails(m.e, m.e, m.c, m.c); },
          [&](const TorsionFunction::Product& p) {
            AsymptoteReport r = monomial_tails(0.0, 0.0, 1.0, 1.0);
            for (const TorsionFunction& f : p.factors) {
              const AsymptoteReport s = torsion_degree(f, tol);
              r.d_plus += s.d_plus;
              r.d_minus += s.d_minus;
              r.c_plus = (r.c_plus && s.c_plus) ? std::optional(*r.c_plus * *s.c_plus) : std::nullopt;
              r.c_minus =
                  (r.c_minus && s.c_minus) ? std::optional(*r.c_minus * *s.c_minus) : std::nullopt;
              if (s.method == AsymptoteMethod::NumericFit) r.method = AsymptoteMethod::NumericFit;
            }
            r.deg_b = r.d_plus - r.d_minus;
            return r;
          },
      },
      tau.form());
}

TorsionFunction symmetric_representative(const TorsionFunction& tau, double tol) {
  const AsymptoteReport r = torsion_degree(tau, tol);
  return glue({tau, TorsionFunction(TorsionFunction::Monomial{1.0, -(r.d_plus + r.d_minus) / 2})});
}

SymmetryReport symmetry_check(const TorsionFunction& tau, const TorsionFunction& tau_neg,
                              const std::vector<double>& grid, double tol, double quad_tol) {
  if (grid.size() < 2) throw InputError("symmetry check needs at least 2 grid points");
  if (tau.is_zero() || tau_neg.is_zero()) throw DegeneracyError("torsion is the zero function");
  std::vector<double> xs, ys;
  for (double t : grid) {
    const std::optional<double> a = tau.log_eval(t, quad_tol);
    const std::optional<double> b = tau_neg.log_eval(t, quad_tol);
    if (!a || !b) throw InputError("torsion is unspecified at a grid point");
    xs.push_back(std::log(t));
    ys.push_back(*a - *b);
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) mx += xs[k], my += ys[k];
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
  }
  if (sxx == 0.0) throw InputError("symmetry check needs distinct grid points");
  SymmetryReport rep;
  rep.r = sxy / sxx;
  rep.intercept = my - rep.r * mx;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    rep.max_residual =
        std::max(rep.max_residual, std::abs(ys[k] - rep.intercept - rep.r * xs[k]));
  }
  rep.passed = std::isfinite(rep.r) && rep.max_residual < tol;
  return rep;
}

namespace {

struct CleanPhi {
  std::array<double, 3> phi;
  std::vector<std::string> warnings;
};

CleanPhi validate_phi(const std::array<double, 3>& phi) {
  double scale = 1.0;
  for (double x : phi) {
    require_finite(x, "phi entry");
    scale = std::max(scale, std::abs(x));
  }
  if (std::abs(phi[0] + phi[1] + phi[2]) > 1e-12 * scale) {
    throw InputError("phi must satisfy phi_0 + phi_1 + phi_2 = 0");
  }
  CleanPhi out{phi, {}};
  for (std::size_t i = 0; i < 3; ++i) {
    if (phi[i] != 0.0 && std::abs(phi[i]) <= 1e-12) {
      out.phi[i] = 0.0;
      out.warnings.push_back("phi_" + std::to_string(i) + " = " + std::to_string(phi[i]) +
                             " treated as zero");
    }
  }
  return out;
}

}  // namespace

TorsionFunction section9_torsion(const std::array<double, 3>& phi) {
  const CleanPhi clean = validate_phi(phi);
  const double log_dilatation = std::log((3.0 + std::sqrt(5.0)) / 2.0);
  const double knot_volume = 2.0 * kV3;
  std::vector<TorsionFunction> pieces;
  for (double p : clean.phi) {
    if (p == 0.0) {
      pieces.emplace_back(
          TorsionFunction::Monomial{std::exp(knot_volume / (6.0 * std::numbers::pi)), 0.0});
    } else {
      pieces.emplace_back(
          TorsionFunction::Fibered{std::abs(p) * log_dilatation, std::abs(p), knot_volume});
    }
  }
  pieces.emplace_back(TorsionFunction::Graph{0.0});
  return glue(std::move(pieces));
}

Section9Result section9(const std::array<double, 3>& phi) {
  const CleanPhi clean = validate_phi(phi);
  Section9Result out;
  out.phi = phi;
  out.warnings = clean.warnings;
  for (double p : clean.phi) {
    out.norm += std::abs(p);
    if (p == 0.0) ++out.delta;
  }
  out.leading = std::exp(out.delta * kV3 / (3.0 * std::numbers::pi));
  out.vol_check = std::exp(6.0 * kV3 / (6.0 * std::numbers::pi));
  out.deg_b = torsion_degree(section9_torsion(clean.phi)).deg_b;
  return out;
}

bool in_unit_hexagon(const std::array<double, 3>& phi) {
  validate_phi(phi);
  // Coordinates in the plane sum = 0.
  auto project = [](const std::array<double, 3>& v) {
    return std::pair{(v[0] - v[1]) / std::sqrt(2.0), (v[0] + v[1] - 2.0 * v[2]) / std::sqrt(6.0)};
  };
  std::vector<std::pair<double, double>> hull;
  for (const std::array<double, 3>& v : std::array<std::array<double, 3>, 6>{{
           {0.5, -0.5, 0.0},
           {-0.5, 0.5, 0.0},
           {0.0, 0.5, -0.5},
           {0.0, -0.5, 0.5},
           {-0.5, 0.0, 0.5},
           {0.5, 0.0, -0.5},
       }}) {
    hull.push_back(project(v));
  }
  std::sort(hull.begin(), hull.end(), [](const auto& a, const auto& b) {
    return std::atan2(a.second, a.first) < std::atan2(b.second, b.first);
  });
  const auto [px, py] = project(phi);
  for (std::size_t k = 0; k < hull.size(); ++k) {
    const auto [ax, ay] = hull[k];
    const auto [bx, by] = hull[(k + 1) % hull.size()];
    if ((bx - ax) * (py - ay) - (by - ay) * (px - ax) < -1e-12) return false;
  }
  return true;
}

bool hexagon_norm_check(const std::array<double, 3>& phi) {
  const double norm = std::abs(phi[0]) + std::abs(phi[1]) + std::abs(phi[2]);
  return (norm <= 1.0 + 1e-12) == in_unit_hexagon(phi);
}

}  // namespace l2alex
