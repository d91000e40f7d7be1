#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "l2alex/degree.hpp"
#include "l2alex/error.hpp"

namespace l2alex {

std::vector<double> geometric_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi)) {
    throw InputError("geometric grid needs 0 < lo < hi");
  }
  if (n < 2) throw InputError("geometric grid needs at least 2 points");
  std::vector<double> out(n);
  const double llo = std::log(lo), span = std::log(hi) - std::log(lo);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = std::exp(llo + span * static_cast<double>(k) / static_cast<double>(n - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

namespace {

void check_grid(const std::vector<double>& ts) {
  if (ts.size() < 3) throw InputError("convexity check needs at least 3 grid points");
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (!(ts[k] > 0.0) || !std::isfinite(ts[k])) throw InputError("grid points must be positive");
    if (k > 0 && !(ts[k] > ts[k - 1])) throw InputError("grid must be strictly increasing");
  }
}

ConvexityReport check_log_samples(const std::vector<double>& ts, const std::vector<double>& logs,
                                  double tol, std::optional<SlopeWindow> window) {
  ConvexityReport rep;
  rep.slope_window = window;
  if (window) rep.slope_bound = window->width();
  std::vector<double> x(ts.size());
  std::transform(ts.begin(), ts.end(), x.begin(), [](double t) { return std::log(t); });

  // Chord test in log-log coordinates; with a geometric grid the weights
  // are 1/2 and this is the midpoint inequality.
  for (std::size_t k = 1; k + 1 < ts.size(); ++k) {
    const double lam = (x[k + 1] - x[k]) / (x[k + 1] - x[k - 1]);
    const double chord = lam * logs[k - 1] + (1.0 - lam) * logs[k + 1];
    const double excess = logs[k] - chord;
    if (excess > tol) rep.violations.push_back({ts[k - 1], ts[k], ts[k + 1], excess});
  }
  rep.min_slope = std::numeric_limits<double>::infinity();
  rep.max_slope = -rep.min_slope;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (std::size_t j = i + 1; j < ts.size(); ++j) {
      const double slope = (logs[j] - logs[i]) / (x[j] - x[i]);
      rep.min_slope = std::min(rep.min_slope, slope);
      rep.max_slope = std::max(rep.max_slope, slope);
      rep.max_abs_slope = std::max(rep.max_abs_slope, std::abs(slope));
      if (window && (slope < window->lo - tol || slope > window->hi + tol)) {
        rep.slope_violations.push_back({ts[i], ts[j], slope});
      }
    }
  }
  return rep;
}

}  // namespace

ConvexityReport convexity_check(const DetFunction& v, const std::vector<double>& grid, double tol,
                                double quad_tol) {
  check_grid(grid);
  if (v.is_zero()) {
    ConvexityReport rep;
    rep.zero_function = true;
    return rep;
  }
  QuadratureOptions opts;
  opts.tol = quad_tol;
  std::vector<double> logs;
  logs.reserve(grid.size());
  for (double t : grid) logs.push_back(v.log_eval(t, opts));
  return check_log_samples(grid, logs, tol, v.slope_window());
}

ConvexityReport convexity_check_samples(const std::vector<double>& ts,
                                        const std::vector<double>& values, double tol,
                                        std::optional<SlopeWindow> window) {
  check_grid(ts);
  if (values.size() != ts.size()) throw InputError("sample count does not match grid");
  if (std::all_of(values.begin(), values.end(), [](double f) { return f == 0.0; })) {
    ConvexityReport rep;
    rep.zero_function = true;
    return rep;
  }
  std::vector<double> logs;
  logs.reserve(values.size());
  for (double f : values) {
    if (!(f > 0.0)) throw InputError("samples must be positive (or all zero)");
    logs.push_back(std::log(f));
  }
  return check_log_samples(ts, logs, tol, window);
}

ChiefPart chief_part(const LaurentPoly& p, const CohomClass& c, End end) {
  if (p.is_zero()) throw InputError("chief part of the zero polynomial");
  if (!c.has_decomposition()) throw InputError("chief part needs a decomposition (r, Phi)");
  if (c.num_vars() != p.num_vars()) throw InputError("chief part: variable count mismatch");
  const Decomposition& dec = *c.decomposition();

  std::map<std::vector<long long>, LaurentPoly::TermMap> groups;
  for (const auto& [e, coeff] : p.terms()) {
    std::vector<long long> w(dec.rank(), 0);
    for (std::size_t i = 0; i < dec.rank(); ++i) {
      for (std::size_t j = 0; j < e.size(); ++j) w[i] += dec.phi[i][j] * e[j];
    }
    groups[w].emplace(e, coeff);
  }
  // Terms of p are distinct monomials, so every group is a nonzero
  // polynomial; this is where a coefficient-sum test would go wrong.
  const bool sign = end == End::PlusInfinity;
  auto pairing = [&](const std::vector<long long>& w) {
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += dec.r[i] * static_cast<double>(w[i]);
    return s;
  };

  auto best = groups.begin();
  for (auto it = std::next(groups.begin()); it != groups.end(); ++it) {
    bool better;
    if (dec.rank() == 1) {
      better = sign ? it->first[0] > best->first[0] : it->first[0] < best->first[0];
    } else {
      better = sign ? pairing(it->first) > pairing(best->first)
                    : pairing(it->first) < pairing(best->first);
    }
    if (better) best = it;
  }
  if (dec.rank() > 1) {
    const double top = pairing(best->first);
    for (auto it = groups.begin(); it != groups.end(); ++it) {
      if (it != best && std::abs(pairing(it->first) - top) < kTieTolerance) {
        throw DegeneracyError("tie: r-independence assertion violated");
      }
    }
  }
  const bool cert = p.integer_certified();
  return ChiefPart{best->first, pairing(best->first),
                   LaurentPoly::from_map(p.num_vars(), best->second, cert)};
}

std::string to_string(AsymptoteMethod m) {
  return m == AsymptoteMethod::ExactChiefPart ? "exact-chief-part" : "numeric-fit";
}

AsymptoteReport asymptote(const DetFunction& v, double tol) {
  if (v.is_zero()) throw DegeneracyError("constantly zero function has no asymptotes");
  const double index = static_cast<double>(v.index_divisor());
  QuadratureOptions opts;
  opts.tol = tol;
  AsymptoteReport rep;

  if (v.cohom_class().has_decomposition()) {
    const ChiefPart top = chief_part(v.det_poly(), v.cohom_class(), End::PlusInfinity);
    const ChiefPart bot = chief_part(v.det_poly(), v.cohom_class(), End::ZeroPlus);
    rep.method = AsymptoteMethod::ExactChiefPart;
    rep.d_plus = top.pairing / index;
    rep.d_minus = bot.pairing / index;
    rep.c_plus = std::exp(mahler_mv(top.q, opts).log_measure / index);
    rep.c_minus = std::exp(mahler_mv(bot.q, opts).log_measure / index);
  } else {
    rep.method = AsymptoteMethod::NumericFit;
    const double l4 = std::log(1e4), l6 = std::log(1e6);
    const double p4 = v.log_eval(1e4, opts), p6 = v.log_eval(1e6, opts);
    const double m4 = v.log_eval(1e-4, opts), m6 = v.log_eval(1e-6, opts);
    rep.d_plus = (p6 - p4) / (l6 - l4);
    rep.d_minus = (m6 - m4) / (l4 - l6);
    rep.c_plus = std::exp(p6 - rep.d_plus * l6);
    rep.c_minus = std::exp(m6 + rep.d_minus * l6);
  }
  rep.deg_b = rep.d_plus - rep.d_minus;
  return rep;
}

CohomClass affine_class(const CohomClass& base, const CohomClass& xi, double lambda) {
  if (base.num_vars() != xi.num_vars()) throw InputError("classes disagree on the variable count");
  if (lambda == 0.0) return base;
  std::vector<double> sigma(base.num_vars());
  for (std::size_t j = 0; j < sigma.size(); ++j) {
    sigma[j] = base.sigma()[j] + lambda * xi.sigma()[j];
  }
  CohomClass out = CohomClass::from_sigma(sigma);
  if (out.has_decomposition() || !base.has_decomposition() || !xi.has_decomposition()) {
    return out;
  }
  Decomposition dec = *base.decomposition();
  const Decomposition& dx = *xi.decomposition();
  for (std::size_t i = 0; i < dx.rank(); ++i) {
    dec.r.push_back(std::abs(lambda) * dx.r[i]);
    std::vector<long long> row = dx.phi[i];
    if (lambda < 0) {
      for (auto& x : row) x = -x;
    }
    dec.phi.push_back(std::move(row));
  }
  return CohomClass::with_decomposition(std::move(sigma), std::move(dec));
}

LipschitzReport lipschitz_degree_check(const LaurentMatrix& a, const CohomClass& base,
                                       const CohomClass& xi, int steps, double tol) {
  if (steps < 1) throw InputError("steps must be a positive integer");
  if (a.num_vars() != base.num_vars() || a.num_vars() != xi.num_vars()) {
    throw InputError("matrix and classes disagree on the variable count");
  }
  LipschitzReport rep;
  const LaurentPoly det = matrix_determinant(a);
  if (det.is_zero()) {
    rep.degenerate = true;
    return rep;
  }
  rep.bound_r = exponent_bound(a, xi);
  for (int k = 0; k <= steps; ++k) {
    const double lambda = static_cast<double>(k) / steps;
    const DetFunction v(det, affine_class(base, xi, lambda));
    rep.lambdas.push_back(lambda);
    rep.degrees.push_back(asymptote(v, tol).deg_b);
  }
  for (std::size_t i = 0; i < rep.lambdas.size(); ++i) {
    for (std::size_t j = i + 1; j < rep.lambdas.size(); ++j) {
      const double diff = std::abs(rep.degrees[i] - rep.degrees[j]);
      const double allowed = 2.0 * rep.bound_r * std::abs(rep.lambdas[i] - rep.lambdas[j]);
      if (diff > allowed + 1e-9) rep.passed = false;
      if (allowed > 0.0) rep.max_ratio = std::max(rep.max_ratio, diff / allowed);
    }
  }
  return rep;
}

}  // namespace l2alex
