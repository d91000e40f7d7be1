#include <algorithm>
#include <cmath>
#include <limits>

#include "l2alex/degree.hpp"
#include "l2alex/error.hpp"

namespace l2alex {

// Evaluation strategy chosen once per (p_A, sigma).
//  - one variable: closed form from the roots of p_A;
//  - otherwise: twist the coefficients and take the Mahler measure, with the
//    innermost variable of the original polynomial handled by Jensen.
// Confining a rank-one twist to one variable by a unimodular change of
// coordinates is not used: it multiplies that variable's degree by up to |phi|.
struct DetFunction::Evaluator {
  enum class Kind { Zero, OneVariable, General } kind = Kind::General;
  RootData roots;
  double log_scale_per_log_t = 0.0;
};

DetFunction::DetFunction(LaurentPoly det_poly, CohomClass cls, int index_divisor,
                         std::optional<SlopeWindow> window)
    : det_poly_(std::move(det_poly)),
      class_(std::move(cls)),
      index_divisor_(index_divisor),
      window_(window) {
  if (index_divisor_ < 1) throw InputError("index divisor must be a positive integer");
  if (class_.num_vars() != det_poly_.num_vars()) {
    throw InputError("determinant function: class has " + std::to_string(class_.num_vars()) +
                     " entries for " + std::to_string(det_poly_.num_vars()) + " variables");
  }
  auto ev = std::make_shared<Evaluator>();
  if (det_poly_.is_zero()) {
    ev->kind = Evaluator::Kind::Zero;
  } else if (det_poly_.num_vars() == 1) {
    ev->kind = Evaluator::Kind::OneVariable;
    ev->roots = roots(det_poly_);
    ev->log_scale_per_log_t = class_.sigma()[0];
  }
  evaluator_ = std::move(ev);
}

DetFunction DetFunction::with_class(CohomClass cls) const {
  return DetFunction(det_poly_, std::move(cls), index_divisor_, std::nullopt);
}

double DetFunction::log_eval(double t, const QuadratureOptions& opts) const {
  if (!(t > 0.0) || !std::isfinite(t)) throw InputError("evaluation point must be positive");
  const double log_t = std::log(t);
  double value = 0.0;
  switch (evaluator_->kind) {
    case Evaluator::Kind::Zero:
      return -std::numeric_limits<double>::infinity();
    case Evaluator::Kind::OneVariable:
      value = log_scaled_mahler(evaluator_->roots, evaluator_->log_scale_per_log_t * log_t);
      break;
    case Evaluator::Kind::General: {
      // Twist with the largest factor pulled out so that t^{<sigma,v>}
      // cannot overflow at extreme t.
      double top = -std::numeric_limits<double>::infinity();
      for (const auto& [e, c] : det_poly_.terms()) top = std::max(top, class_.pair(e) * log_t);
      LaurentPoly::TermMap scaled;
      for (const auto& [e, c] : det_poly_.terms()) {
        const Complex z = c * std::exp(class_.pair(e) * log_t - top);
        if (z != 0.0) scaled.emplace(e, z);
      }
      const LaurentPoly q = LaurentPoly::from_map(det_poly_.num_vars(), std::move(scaled), false);
      value = mahler_mv(q, opts).log_measure + top;
      break;
    }
  }
  return value / static_cast<double>(index_divisor_);
}

DetFunction det_function(const LaurentMatrix& a, const CohomClass& c) {
  if (a.num_vars() != c.num_vars()) {
    throw InputError("determinant function: matrix and class disagree on the variable count");
  }
  std::optional<SlopeWindow> window;
  if (!a.is_zero() && a.size() > 0) window = slope_window(a, c);
  if (a.size() == 0) window = SlopeWindow{};
  return DetFunction(matrix_determinant(a), c, 1, window);
}

double eval(const DetFunction& v, double t, double tol) {
  QuadratureOptions o;
  o.tol = tol;
  return std::exp(v.log_eval(t, o));
}

DetFunction index_rescale(const DetFunction& v, int index) {
  if (index < 1) throw InputError("index must be a positive integer");
  std::optional<SlopeWindow> window = v.slope_window();
  if (window) window->lo /= index, window->hi /= index;
  return DetFunction(v.det_poly(), v.cohom_class(), v.index_divisor() * index, window);
}

}  // namespace l2alex
