#pragma once

// Real cohomology classes on a free abelian target Z^l and the L^2-Alexander
// twist z^v -> t^{<sigma, v>} z^v.

#include <optional>
#include <vector>

#include "l2alex/laurent.hpp"

namespace l2alex {

/// sigma = sum_i r_i * Phi_i with r_i > 0 and integer rows Phi_i.
struct Decomposition {
  std::vector<double> r;
  std::vector<std::vector<long long>> phi;  // d x l

  std::size_t rank() const noexcept { return r.size(); }
};

class CohomClass {
 public:
  CohomClass() = default;

  /// Class with the given values sigma_j = phi(z_j). When every entry is
  /// rational (denominator <= 10^6) a rank-one decomposition is built.
  static CohomClass from_sigma(std::vector<double> sigma);

  /// Class given by an explicit decomposition; sigma = Phi^T r.
  /// Throws InputError on nonpositive r or shape mismatch.
  static CohomClass from_decomposition(Decomposition dec);

  /// sigma together with a user-asserted decomposition; checks consistency
  /// to 1e-12 relative.
  static CohomClass with_decomposition(std::vector<double> sigma, Decomposition dec);

  std::size_t num_vars() const noexcept { return sigma_.size(); }
  const std::vector<double>& sigma() const noexcept { return sigma_; }
  const std::optional<Decomposition>& decomposition() const noexcept {
    return decomposition_;
  }
  bool has_decomposition() const noexcept { return decomposition_.has_value(); }

  /// <sigma, v>.
  double pair(const ExponentVector& v) const;

  /// c * sigma, keeping the decomposition (r scaled by |c|, Phi negated
  /// for c < 0).
  CohomClass scaled(double c) const;

  friend bool operator==(const CohomClass& a, const CohomClass& b);

 private:
  std::vector<double> sigma_;
  std::optional<Decomposition> decomposition_;
};

bool operator==(const Decomposition& a, const Decomposition& b);

/// Rank-one decomposition of a rational vector: sigma = r * phi with phi
/// primitive. Empty if some entry is not a rational with denominator
/// <= max_denominator.
std::optional<Decomposition> rational_decomposition(const std::vector<double>& sigma,
                                                    long long max_denominator = 1000000);

/// a z^v -> a t^{<sigma, v>} z^v.
LaurentPoly twist_poly(const LaurentPoly& p, const CohomClass& c, double t);

/// a z^v -> a prod_i t_i^{(Phi v)_i} z^v.
LaurentPoly twist_poly_multi(const LaurentPoly& p, const CohomClass& c,
                             const std::vector<double>& tvec);

/// [p * min, p * max] of <sigma, v> over the monomial support of A. Every
/// two-point log-log slope of V lies in this window.
struct SlopeWindow {
  double lo = 0.0;
  double hi = 0.0;

  double width() const noexcept { return hi - lo; }
  friend bool operator==(const SlopeWindow&, const SlopeWindow&) = default;
};

SlopeWindow slope_window(const LaurentMatrix& a, const CohomClass& c);

/// R(A, sigma) = p * (max - min) of <sigma, v> over the monomial support of A.
double exponent_bound(const LaurentMatrix& a, const CohomClass& c);

class DetFunction;

/// V(t) -> V(t)^{1/index} for a finite-index free abelian subgroup.
/// Defined in det_function.cpp next to the type it rescales.
DetFunction index_rescale(const DetFunction& v, int index);

}  // namespace l2alex
