#pragma once

// Mahler measures of Laurent polynomials.
//
// One variable: Jensen's formula on the roots, M(q) = |D| prod max(1, |b_i|).
// Several variables: the innermost variable is integrated exactly by Jensen
// on the slice polynomial; the remaining torus directions use nested
// adaptive Gauss-Kronrod quadrature on log M(slice).

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "l2alex/laurent.hpp"

namespace l2alex {

/// q = leading * z^power * prod (z - roots_i), roots nonzero.
struct RootData {
  Complex leading = 0.0;
  int power = 0;
  std::vector<Complex> roots;

  /// Expands the factorization back into a one-variable polynomial.
  LaurentPoly reconstruct() const;
};

/// Roots of a nonzero one-variable Laurent polynomial: the monomial factor
/// is stripped, the residual polynomial is solved through the eigenvalues of
/// its balanced companion matrix, eigenvalues whose inclusion disks overlap
/// are replaced by their centroid, and each isolated root gets one Newton
/// polish.
RootData roots(const LaurentPoly& q);

/// Same, from dense ascending coefficients c_0 + c_1 z + ... (trailing and
/// leading zeros allowed; power counts stripped low-order zeros).
RootData roots_dense(const std::vector<Complex>& coeffs);

/// Jensen's formula. 0 for the zero polynomial.
double mahler_1v(const LaurentPoly& q);
/// log M(q); -inf for the zero polynomial.
double log_mahler_1v(const RootData& r);

/// M(p(c z)) = |D| c^n prod max(c, |b_i|).
double scaled_mahler_1v(const LaurentPoly& p, double c);
/// log M(p(c z)) given roots and log c.
double log_scaled_mahler(const RootData& r, double log_c);

/// C t^e on (t_lo, t_hi]. t_lo = 0 for the first piece and t_hi = +inf for
/// the last.
struct MonomialPiece {
  double t_lo = 0.0;
  double t_hi = std::numeric_limits<double>::infinity();
  double coeff = 1.0;
  double exponent = 0.0;
};

/// t -> M(p(t^sigma1 z)) as an exact piecewise-monomial profile. For
/// sigma1 = 0 the profile is the single constant piece M(p).
std::vector<MonomialPiece> monomial_profile(const LaurentPoly& p, double sigma1);

/// Evaluates a profile at t (pieces must tile (0, inf)).
double eval_profile(const std::vector<MonomialPiece>& pieces, double t);

struct QuadratureOptions {
  double tol = 1e-8;
  /// Total Gauss-Kronrod panel evaluations allowed per outer dimension.
  std::size_t panel_budget = 200000;
  /// Initial uniform panels on [0, 2 pi].
  std::size_t initial_panels = 16;
  /// 0 = hardware concurrency (or the L2ALEX_THREADS environment variable).
  unsigned threads = 0;
};

struct MahlerResult {
  double measure = 0.0;
  double log_measure = -std::numeric_limits<double>::infinity();
  /// Estimated absolute error of log_measure (0 when computed in closed form).
  double achieved_tol = 0.0;
};

/// Multivariable Mahler measure. Throws BudgetError if the tolerance is not
/// met within the panel budget and DegeneracyError on an identically zero
/// slice of a nonzero polynomial.
MahlerResult mahler_mv(const LaurentPoly& p, const QuadratureOptions& opts = {});
inline MahlerResult mahler_mv(const LaurentPoly& p, double tol) {
  QuadratureOptions o;
  o.tol = tol;
  return mahler_mv(p, o);
}

/// log M(p(z_1, ..., s z_inner, ...)) with log s given: the inner variable
/// carries a closed-form scaling handled by Jensen; all others are
/// integrated numerically (they must be unscaled).
MahlerResult log_mahler_inner_scaled(const LaurentPoly& p, std::size_t inner,
                                     double log_scale, const QuadratureOptions& opts = {});

/// One-variable measure by direct adaptive quadrature of log|q| on the
/// circle, bypassing the roots. Slow; meant as a cross-check of Jensen.
MahlerResult mahler_1v_quadrature(const LaurentPoly& q, const QuadratureOptions& opts = {});

/// Worker count used by the quadrature (respects L2ALEX_THREADS).
unsigned default_threads();

}  // namespace l2alex
