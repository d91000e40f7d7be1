#include "l2alex/mahler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <numbers>
#include <queue>
#include <string>
#include <thread>

#include "l2alex/error.hpp"

namespace l2alex {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// 7-point Gauss / 15-point Kronrod on [-1, 1] (QUADPACK qk15).
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a = 0.0, b = 0.0;
  double integral = 0.0;
  double error = 0.0;
};

using Integrand = std::function<double(double)>;

Panel gauss_kronrod(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  Panel p;
  p.a = a, p.b = b;
  p.integral = resk * half;
  p.error = std::abs((resk - resg) * half);
  return p;
}

struct AdaptiveResult {
  double integral = 0.0;
  double error = 0.0;
  std::size_t panels = 0;
};

// Global adaptive bisection on [a, b]: always splits the panel with the
// largest error estimate until the summed estimate meets tol.
AdaptiveResult adaptive(const Integrand& f, double a, double b, double tol, std::size_t budget) {
  auto worse = [](const Panel& x, const Panel& y) { return x.error < y.error; };
  std::priority_queue<Panel, std::vector<Panel>, decltype(worse)> heap(worse);
  std::vector<Panel> done;
  Panel first = gauss_kronrod(f, a, b);
  double total_err = first.error;
  heap.push(first);
  std::size_t used = 1;
  const double min_width = 1e-13 * (b - a);
  while (!heap.empty() && total_err > tol && used + 2 <= budget) {
    Panel worst = heap.top();
    heap.pop();
    if (worst.b - worst.a < min_width) {
      done.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = gauss_kronrod(f, worst.a, mid);
    Panel right = gauss_kronrod(f, mid, worst.b);
    used += 2;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  while (!heap.empty()) done.push_back(heap.top()), heap.pop();
  std::sort(done.begin(), done.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  AdaptiveResult r;
  r.panels = used;
  for (const Panel& p : done) r.integral += p.integral, r.error += p.error;
  return r;
}

// Coefficients of the innermost variable as trigonometric polynomials in
// the outer angles.
class SliceModel {
 public:
  SliceModel(const LaurentPoly& p, std::size_t inner, std::vector<std::size_t> outer)
      : outer_(std::move(outer)) {
    const auto [lo, hi] = p.exponent_range();
    k_min_ = lo[inner];
    k_max_ = hi[inner];
    for (const auto& [e, a] : p.terms()) {
      Term t;
      t.k = e[inner] - k_min_;
      t.a = a;
      t.outer_exp.reserve(outer_.size());
      for (std::size_t v : outer_) t.outer_exp.push_back(e[v]);
      terms_.push_back(std::move(t));
      scale_ += std::abs(a);
    }
  }

  std::size_t outer_dims() const { return outer_.size(); }

  double log_value(const std::vector<double>& theta, double log_scale) const {
    std::vector<Complex> c(static_cast<std::size_t>(k_max_ - k_min_) + 1, 0.0);
    for (const Term& t : terms_) {
      double phase = 0.0;
      for (std::size_t m = 0; m < t.outer_exp.size(); ++m) phase += theta[m] * t.outer_exp[m];
      c[static_cast<std::size_t>(t.k)] += t.a * std::polar(1.0, phase);
    }
    double cmax = 0.0;
    for (const Complex& x : c) cmax = std::max(cmax, std::abs(x));
    if (cmax <= 1e-13 * scale_) {
      throw DegeneracyError("Mahler quadrature: slice polynomial vanishes identically "
                            "at a quadrature node");
    }
    // Round-off dust at the ends would otherwise become spurious huge or
    // tiny roots.
    const double dust = 1e-15 * cmax;
    for (auto& x : c) {
      if (std::abs(x) <= dust) x = 0.0;
    }
    RootData r = roots_dense(c);
    r.power += k_min_;
    return log_scaled_mahler(r, log_scale);
  }

 private:
  struct Term {
    int k = 0;
    Complex a;
    std::vector<int> outer_exp;
  };
  std::vector<std::size_t> outer_;
  std::vector<Term> terms_;
  int k_min_ = 0, k_max_ = 0;
  double scale_ = 0.0;
};

struct Integration {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

// Normalized integral over the outer torus of log M(slice), dimensions
// dim .. outer_dims-1 with theta[0 .. dim-1] fixed.
Integration integrate_level(const SliceModel& model, std::vector<double>& theta,
                            std::size_t dim, double log_scale, double tol,
                            std::size_t budget, std::size_t initial) {
  const std::size_t dims = model.outer_dims();
  const bool innermost = dim + 1 == dims;
  const double inner_tol = innermost ? 0.0 : 0.25 * tol;
  const double own_tol = innermost ? tol : 0.75 * tol;
  double inner_err = 0.0;
  bool inner_ok = true;
  Integrand f = [&](double x) {
    theta[dim] = x;
    if (innermost) return model.log_value(theta, log_scale);
    Integration in = integrate_level(model, theta, dim + 1, log_scale, inner_tol, budget, initial);
    inner_err = std::max(inner_err, in.error);
    inner_ok = inner_ok && in.converged;
    return in.value;
  };
  Integration out;
  const double width = kTwoPi / static_cast<double>(initial);
  for (std::size_t i = 0; i < initial; ++i) {
    AdaptiveResult r = adaptive(f, i * width, (i + 1) * width,
                                own_tol * kTwoPi / static_cast<double>(initial),
                                budget / initial);
    out.value += r.integral;
    out.error += r.error;
  }
  out.value /= kTwoPi;
  out.error /= kTwoPi;
  out.converged = inner_ok && out.error <= own_tol;
  out.error += inner_err;
  return out;
}

// Top level: initial panels distributed over worker threads; each panel is
// refined independently and the sum is taken in panel order, so the result
// does not depend on the thread count.
Integration integrate_outer(const SliceModel& model, double log_scale,
                            const QuadratureOptions& opts) {
  const std::size_t initial = std::max<std::size_t>(1, opts.initial_panels);
  const std::size_t dims = model.outer_dims();
  const double share_tol = (dims == 1 ? 1.0 : 0.75) * opts.tol * kTwoPi /
                           static_cast<double>(initial);
  const std::size_t share_budget = std::max<std::size_t>(4, opts.panel_budget / initial);
  const double width = kTwoPi / static_cast<double>(initial);

  std::vector<AdaptiveResult> results(initial);
  std::vector<double> inner_errs(initial, 0.0);
  std::vector<char> inner_ok(initial, 1);
  std::vector<std::exception_ptr> failures(initial);

  auto work = [&](std::size_t i) {
    try {
      std::vector<double> theta(dims, 0.0);
      Integrand f = [&](double x) {
        theta[0] = x;
        if (dims == 1) return model.log_value(theta, log_scale);
        Integration in = integrate_level(model, theta, 1, log_scale, 0.25 * opts.tol,
                                         opts.panel_budget, initial);
        inner_errs[i] = std::max(inner_errs[i], in.error);
        if (!in.converged) inner_ok[i] = 0;
        return in.value;
      };
      results[i] = adaptive(f, i * width, (i + 1) * width, share_tol, share_budget);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  };

  const unsigned threads =
      std::min<unsigned>(opts.threads == 0 ? default_threads() : opts.threads,
                         static_cast<unsigned>(initial));
  if (threads <= 1) {
    for (std::size_t i = 0; i < initial; ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < initial; i += threads) work(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& e : failures) {
    if (e) std::rethrow_exception(e);
  }

  Integration out;
  double inner_err = 0.0;
  bool ok = true;
  for (std::size_t i = 0; i < initial; ++i) {
    out.value += results[i].integral;
    out.error += results[i].error;
    inner_err = std::max(inner_err, inner_errs[i]);
    ok = ok && inner_ok[i];
  }
  out.value /= kTwoPi;
  out.error /= kTwoPi;
  out.converged = ok && out.error <= (dims == 1 ? 1.0 : 0.75) * opts.tol;
  out.error += inner_err;
  return out;
}

struct Reduced {
  LaurentPoly poly;                // active variables only
  std::vector<std::size_t> active; // original indices
  ExponentVector offset;           // exponents of inactive variables
};

Reduced reduce_inactive(const LaurentPoly& p) {
  const auto [lo, hi] = p.exponent_range();
  Reduced r;
  r.offset = lo;
  for (std::size_t v = 0; v < p.num_vars(); ++v) {
    if (lo[v] != hi[v]) r.active.push_back(v);
  }
  std::vector<std::pair<ExponentVector, Complex>> terms;
  for (const auto& [e, c] : p.terms()) {
    ExponentVector ne;
    for (std::size_t v : r.active) ne.push_back(e[v]);
    terms.emplace_back(std::move(ne), c);
  }
  r.poly = LaurentPoly::from_terms(r.active.size(), terms);
  return r;
}

MahlerResult finish(double log_m, double err) {
  MahlerResult r;
  r.log_measure = log_m;
  r.measure = std::exp(log_m);
  r.achieved_tol = err;
  return r;
}

MahlerResult checked(const Integration& in, const QuadratureOptions& opts) {
  if (!in.converged) {
    throw BudgetError("Mahler quadrature did not reach tolerance " + std::to_string(opts.tol) +
                          " within the panel budget (achieved " + std::to_string(in.error) + ")",
                      std::exp(in.value), in.error);
  }
  return finish(in.value, in.error);
}

}  // namespace

unsigned default_threads() {
  if (const char* env = std::getenv("L2ALEX_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

double log_scaled_mahler(const RootData& r, double log_c) {
  if (r.leading == 0.0) return -std::numeric_limits<double>::infinity();
  double s = std::log(std::abs(r.leading)) + r.power * log_c;
  for (const Complex& b : r.roots) s += std::max(log_c, std::log(std::abs(b)));
  return s;
}

double log_mahler_1v(const RootData& r) { return log_scaled_mahler(r, 0.0); }

double mahler_1v(const LaurentPoly& q) {
  if (q.num_vars() != 1) throw InputError("mahler_1v: expected one variable");
  if (q.is_zero()) return 0.0;
  return std::exp(log_mahler_1v(roots(q)));
}

double scaled_mahler_1v(const LaurentPoly& p, double c) {
  if (p.num_vars() != 1) throw InputError("scaled_mahler_1v: expected one variable");
  if (p.is_zero()) throw InputError("scaled_mahler_1v: zero polynomial");
  if (!(c > 0.0)) throw InputError("scaled_mahler_1v: scale must be positive");
  return std::exp(log_scaled_mahler(roots(p), std::log(c)));
}

std::vector<MonomialPiece> monomial_profile(const LaurentPoly& p, double sigma1) {
  if (p.num_vars() != 1) throw InputError("monomial_profile: expected one variable");
  if (p.is_zero()) throw InputError("monomial_profile: zero polynomial");
  const RootData r = roots(p);
  if (sigma1 == 0.0) {
    double m = std::abs(r.leading);
    for (const Complex& b : r.roots) m *= std::max(1.0, std::abs(b));
    return {MonomialPiece{0.0, std::numeric_limits<double>::infinity(), m, 0.0}};
  }
  // With c = t^sigma1: M = |D| c^n prod max(c, |b_i|). In log t, each root
  // contributes max(sigma1 * x, log|b_i|), a kink at x = log|b_i| / sigma1.
  std::vector<double> log_abs;
  for (const Complex& b : r.roots) log_abs.push_back(std::log(std::abs(b)));
  std::vector<double> kinks;
  for (double lb : log_abs) kinks.push_back(lb / sigma1);
  std::sort(kinks.begin(), kinks.end());
  kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());

  std::vector<MonomialPiece> pieces;
  double lo = 0.0;
  for (std::size_t k = 0; k <= kinks.size(); ++k) {
    const double hi = k < kinks.size() ? std::exp(kinks[k]) : std::numeric_limits<double>::infinity();
    // Pick a representative log t strictly inside the piece.
    double x;
    if (kinks.empty()) x = 0.0;
    else if (k == 0) x = kinks[0] - 1.0;
    else if (k == kinks.size()) x = kinks.back() + 1.0;
    else x = 0.5 * (kinks[k - 1] + kinks[k]);
    double coeff = std::abs(r.leading);
    double e = sigma1 * r.power;
    for (std::size_t i = 0; i < log_abs.size(); ++i) {
      if (sigma1 * x > log_abs[i]) e += sigma1;
      else coeff *= std::abs(r.roots[i]);
    }
    pieces.push_back(MonomialPiece{lo, hi, coeff, e});
    lo = hi;
  }
  return pieces;
}

double eval_profile(const std::vector<MonomialPiece>& pieces, double t) {
  for (const auto& p : pieces) {
    if (t > p.t_lo && t <= p.t_hi) return p.coeff * std::pow(t, p.exponent);
  }
  throw InputError("eval_profile: t outside the profile");
}

MahlerResult log_mahler_inner_scaled(const LaurentPoly& p, std::size_t inner, double log_scale,
                                     const QuadratureOptions& opts) {
  if (inner >= p.num_vars()) throw InputError("Mahler: inner variable out of range");
  if (!(opts.tol > 0.0)) throw InputError("Mahler: tolerance must be positive");
  if (p.is_zero()) return MahlerResult{};
  const Reduced red = reduce_inactive(p);
  const auto it = std::find(red.active.begin(), red.active.end(), inner);
  if (it == red.active.end()) {
    // The scaled variable only appears as a monomial factor.
    MahlerResult base = mahler_mv(red.poly, opts);
    return finish(base.log_measure + red.offset[inner] * log_scale, base.achieved_tol);
  }
  const std::size_t inner_red = static_cast<std::size_t>(it - red.active.begin());
  std::vector<std::size_t> outer;
  for (std::size_t v = 0; v < red.active.size(); ++v) {
    if (v != inner_red) outer.push_back(v);
  }
  const SliceModel model(red.poly, inner_red, outer);
  if (outer.empty()) return finish(model.log_value({}, log_scale), 0.0);
  return checked(integrate_outer(model, log_scale, opts), opts);
}

MahlerResult mahler_1v_quadrature(const LaurentPoly& q, const QuadratureOptions& opts) {
  if (q.num_vars() != 1) throw InputError("expected a one-variable polynomial");
  if (q.is_zero()) return MahlerResult{0.0, -std::numeric_limits<double>::infinity(), 0.0};
  const double two_pi = 2.0 * std::numbers::pi;
  const Integrand f = [&](double theta) {
    const Complex z = std::polar(1.0, theta);
    return std::log(std::abs(q.evaluate(std::span<const Complex>(&z, 1))));
  };
  const std::size_t n = std::max<std::size_t>(1, opts.initial_panels);
  double sum = 0.0, err = 0.0;
  bool ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = two_pi * static_cast<double>(i) / static_cast<double>(n);
    const double b = two_pi * static_cast<double>(i + 1) / static_cast<double>(n);
    const AdaptiveResult r = adaptive(f, a, b, opts.tol * two_pi / static_cast<double>(n),
                                      opts.panel_budget / n);
    sum += r.integral;
    err += r.error;
    ok = ok && r.error <= opts.tol * two_pi / static_cast<double>(n);
  }
  Integration in{sum / two_pi, err / two_pi, ok};
  return checked(in, opts);
}

MahlerResult mahler_mv(const LaurentPoly& p, const QuadratureOptions& opts) {
  if (p.num_vars() == 0) {
    if (p.is_zero()) return MahlerResult{};
    return finish(std::log(std::abs(p.terms().begin()->second)), 0.0);
  }
  if (!(opts.tol > 0.0)) throw InputError("Mahler: tolerance must be positive");
  if (p.is_zero()) return MahlerResult{};
  const Reduced red = reduce_inactive(p);
  if (red.active.empty()) return finish(std::log(std::abs(p.terms().begin()->second)), 0.0);
  if (red.active.size() == 1) return finish(log_mahler_1v(roots(red.poly)), 0.0);

  // Jensen on the variable of highest degree.
  const auto [lo, hi] = red.poly.exponent_range();
  std::size_t inner = 0;
  for (std::size_t v = 1; v < red.active.size(); ++v) {
    if (hi[v] - lo[v] > hi[inner] - lo[inner]) inner = v;
  }
  std::vector<std::size_t> outer;
  for (std::size_t v = 0; v < red.active.size(); ++v) {
    if (v != inner) outer.push_back(v);
  }
  const SliceModel model(red.poly, inner, outer);
  return checked(integrate_outer(model, 0.0, opts), opts);
}

}  // namespace l2alex
