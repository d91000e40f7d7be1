#pragma once

// Determinant functions V(t) = M(p_A(t^sigma z)) and their asymptotic
// analysis: convexity checks, growth-bound degrees, and the exact chief-part
// asymptotes for integer matrices.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "l2alex/laurent.hpp"
#include "l2alex/mahler.hpp"
#include "l2alex/twist.hpp"

namespace l2alex {

class DetFunction {
 public:
  /// index_divisor rescales V to V^{1/index}; window, if known, is the
  /// slope window of the matrix p_A came from (already divided by the index).
  DetFunction(LaurentPoly det_poly, CohomClass cls, int index_divisor = 1,
              std::optional<SlopeWindow> window = std::nullopt);

  const LaurentPoly& det_poly() const noexcept { return det_poly_; }
  const CohomClass& cohom_class() const noexcept { return class_; }
  int index_divisor() const noexcept { return index_divisor_; }
  std::optional<SlopeWindow> slope_window() const noexcept { return window_; }
  /// R(A, sigma) / index, when the matrix is known.
  std::optional<double> exponent_bound() const noexcept {
    if (!window_) return std::nullopt;
    return window_->width();
  }
  /// The constantly-zero function (p_A = 0).
  bool is_zero() const noexcept { return det_poly_.is_zero(); }

  /// log V(t); -inf for the zero function.
  double log_eval(double t, const QuadratureOptions& opts = {}) const;

  /// Same determinant, different class (cached evaluators are rebuilt).
  DetFunction with_class(CohomClass cls) const;

 private:
  struct Evaluator;
  LaurentPoly det_poly_;
  CohomClass class_;
  int index_divisor_ = 1;
  std::optional<SlopeWindow> window_;
  std::shared_ptr<const Evaluator> evaluator_;
};

/// Caches p_A = det(A) together with its slope window (when A is nonzero).
DetFunction det_function(const LaurentMatrix& a, const CohomClass& c);

/// V(t). Exact for one variable; Mahler quadrature at tolerance tol otherwise.
double eval(const DetFunction& v, double t, double tol = 1e-8);

struct ConvexityViolation {
  double t_lo, t_mid, t_hi;
  double excess;  // log V(t_mid) minus the chord value
};

struct SlopeViolation {
  double t0, t1;
  double slope;
};

struct ConvexityReport {
  bool zero_function = false;
  std::vector<ConvexityViolation> violations;
  /// Pairs whose slope leaves the slope window by more than tol.
  std::vector<SlopeViolation> slope_violations;
  std::optional<SlopeWindow> slope_window;
  /// Width of the window, R(A, sigma).
  std::optional<double> slope_bound;
  double min_slope = 0.0;
  double max_slope = 0.0;
  double max_abs_slope = 0.0;

  /// max_slope - min_slope; bounded by R for a determinant function.
  double slope_spread() const { return max_slope - min_slope; }
  bool passed() const { return violations.empty() && slope_violations.empty(); }
};

/// Geometric grid lo * (hi/lo)^{k/(n-1)}, k = 0..n-1.
std::vector<double> geometric_grid(double lo, double hi, std::size_t n);

/// Checks log-log convexity on every adjacent triple of the grid and, when
/// the window is known, lo - tol <= slope <= hi + tol for every pair of
/// points. The window has width R, so the slope spread is at most R.
ConvexityReport convexity_check(const DetFunction& v, const std::vector<double>& grid,
                                double tol, double quad_tol = 1e-8);

/// The same check on sampled values (t_k, f(t_k)), f > 0.
ConvexityReport convexity_check_samples(const std::vector<double>& ts,
                                        const std::vector<double>& values, double tol,
                                        std::optional<SlopeWindow> window = std::nullopt);

enum class End { PlusInfinity, ZeroPlus };

struct ChiefPart {
  std::vector<long long> w;  // weight Phi v of the extremal group
  double pairing = 0.0;      // <r, w>
  LaurentPoly q;             // sum of the terms of p in that group
};

/// Groups the monomials of p by w = Phi v and returns the group maximizing
/// (PlusInfinity) or minimizing (ZeroPlus) <r, w>. Throws DegeneracyError on
/// a tie within 1e-9 between distinct groups.
ChiefPart chief_part(const LaurentPoly& p, const CohomClass& c, End end);

inline constexpr double kTieTolerance = 1e-9;

enum class AsymptoteMethod { ExactChiefPart, NumericFit };

struct AsymptoteReport {
  double d_plus = 0.0;
  double d_minus = 0.0;
  double deg_b = 0.0;
  std::optional<double> c_plus;
  std::optional<double> c_minus;
  AsymptoteMethod method = AsymptoteMethod::ExactChiefPart;
};

std::string to_string(AsymptoteMethod m);

/// End exponents and leading coefficients of V. Exact from the chief parts
/// when the class has a decomposition; otherwise a two-point log-log fit
/// at t = 10^{+-4}, 10^{+-6}.
AsymptoteReport asymptote(const DetFunction& v, double tol = 1e-8);

struct LipschitzReport {
  bool degenerate = false;  // determinant constantly zero; check skipped
  std::vector<double> lambdas;
  std::vector<double> degrees;
  double bound_r = 0.0;    // R(A, xi)
  double max_ratio = 0.0;  // max |deg_i - deg_j| / (2 R(A, xi) |lambda_i - lambda_j|)
  bool passed = true;
};

/// Samples sigma_lambda = base + lambda * xi for lambda = k/steps and checks
/// |deg_b(lambda_i) - deg_b(lambda_j)| <= 2 R(A, (lambda_i - lambda_j) xi).
LipschitzReport lipschitz_degree_check(const LaurentMatrix& a, const CohomClass& base,
                                       const CohomClass& xi, int steps, double tol = 1e-8);

/// base + lambda * xi, keeping an exact decomposition whenever possible.
CohomClass affine_class(const CohomClass& base, const CohomClass& xi, double lambda);

}  // namespace l2alex
