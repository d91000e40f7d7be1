#pragma once

// L^2-Alexander torsion functions of 3-manifolds: assembly from a cellular
// presentation, closed forms for fibered and graph-manifold classes, gluing,
// and the three figure-eight scenario.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "l2alex/degree.hpp"
#include "l2alex/laurent.hpp"
#include "l2alex/twist.hpp"

namespace l2alex {

/// Values (phi(u_i), phi(v_i)) of the max-pair divisors.
using MaxPair = std::pair<double, double>;

struct TorsionSpec {
  LaurentMatrix a;
  CohomClass cls;
  std::vector<MaxPair> pairs;
  int index_divisor = 1;
  std::string label;
};

/// A torsion function t -> tau(t), defined up to a factor t^r. Evaluation
/// returns nullopt where the value is not determined (the interior window
/// of a fibered class).
class TorsionFunction {
 public:
  /// (V(t) * prod max(t^a, t^b)^{-1})^{1/index}.
  struct Presentation {
    DetFunction numerator;
    std::vector<MaxPair> pairs;
    int index = 1;
  };
  /// 1 below e^{-h}, t^x above e^{h}; exp(volume / 6 pi) at t = 1 if given.
  struct Fibered {
    double h = 0.0;
    double x = 0.0;
    std::optional<double> volume;
  };
  /// max(1, t)^x.
  struct Graph {
    double x = 0.0;
  };
  /// c * t^e with c > 0.
  struct Monomial {
    double c = 1.0;
    double e = 0.0;
  };
  struct Product {
    std::vector<TorsionFunction> factors;
  };
  using Variant = std::variant<Presentation, Fibered, Graph, Monomial, Product>;

  explicit TorsionFunction(Variant v);

  const Variant& form() const noexcept { return form_; }

  /// True when some factor has a constantly zero determinant.
  bool is_zero() const;

  /// log tau(t); -inf for the zero function, nullopt where unspecified.
  std::optional<double> log_eval(double t, double tol = 1e-8) const;
  std::optional<double> eval(double t, double tol = 1e-8) const;

 private:
  Variant form_;
};

TorsionFunction torsion_from_presentation(const TorsionSpec& spec);

/// Closed form for a fibered class; nullopt on [e^{-h}, e^{h}].
std::optional<double> fibered_torsion(double h, double x, double t);

/// max(1, t)^x.
double graph_torsion(double x, double t);

/// Pointwise product. Throws InputError on an empty list.
TorsionFunction glue(std::vector<TorsionFunction> pieces);

/// End exponents and coefficients; pair divisors subtract
/// max(a, b) at +inf and min(a, b) at 0+.
AsymptoteReport torsion_degree(const TorsionFunction& tau, double tol = 1e-8);

/// tau * t^{-(d_plus + d_minus)/2}, the representative symmetric under t -> 1/t
/// in its end exponents.
TorsionFunction symmetric_representative(const TorsionFunction& tau, double tol = 1e-8);

struct SymmetryReport {
  double r = 0.0;          // fitted slope of log tau - log tau_neg against log t
  double intercept = 0.0;
  double max_residual = 0.0;
  bool passed = false;
};

/// Least-squares fit of log tau(t) - log tau_neg(t) = r log t + b on the grid.
SymmetryReport symmetry_check(const TorsionFunction& tau, const TorsionFunction& tau_neg,
                              const std::vector<double>& grid, double tol = 1e-9,
                              double quad_tol = 1e-8);

/// Volume of the regular ideal hyperbolic tetrahedron.
inline constexpr double kV3 = 1.0149416064096536;

struct Section9Result {
  std::array<double, 3> phi{};
  double norm = 0.0;
  int delta = 0;
  double leading = 1.0;
  double vol_check = 0.0;
  double deg_b = 0.0;
  std::vector<std::string> warnings;
};

/// The graph manifold built from three figure-eight knot complements glued
/// to a product piece; phi restricts to phi_i on the i-th knot complement.
TorsionFunction section9_torsion(const std::array<double, 3>& phi);

/// Thurston norm, zero count and leading coefficient for the scenario.
/// Throws InputError unless phi_0 + phi_1 + phi_2 = 0 to 1e-12.
Section9Result section9(const std::array<double, 3>& phi);

/// Membership in the hexagon with vertices (+-1/2, -+1/2, 0), (0, +-1/2, -+1/2),
/// (-+1/2, 0, +-1/2), computed as a convex hull in the plane sum = 0.
bool in_unit_hexagon(const std::array<double, 3>& phi);

/// True iff (norm <= 1) agrees with hexagon membership.
bool hexagon_norm_check(const std::array<double, 3>& phi);

}  // namespace l2alex
