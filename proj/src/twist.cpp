#include "l2alex/twist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "l2alex/error.hpp"

namespace l2alex {

namespace {

constexpr double kRationalRelTol = 1e-14;

struct Fraction {
  long long num;
  long long den;
};

// Best continued-fraction convergent within tolerance and denominator cap.
std::optional<Fraction> rationalize(double x, long long max_den) {
  if (!std::isfinite(x)) return std::nullopt;
  const double tol = kRationalRelTol * std::max(1.0, std::abs(x));
  long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double rest = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_d = std::floor(rest);
    if (std::abs(a_d) > 1e15) return std::nullopt;
    const auto a = static_cast<long long>(a_d);
    const long long h2 = a * h1 + h0;
    const long long k2 = a * k1 + k0;
    if (k2 > max_den) return std::nullopt;
    if (std::abs(x - static_cast<double>(h2) / static_cast<double>(k2)) <= tol) {
      return Fraction{h2, k2};
    }
    h0 = h1, h1 = h2, k0 = k1, k1 = k2;
    const double frac = rest - a_d;
    if (frac == 0.0) return std::nullopt;
    rest = 1.0 / frac;
  }
  return std::nullopt;
}

void validate_decomposition(const Decomposition& dec, std::size_t num_vars) {
  if (dec.r.empty()) throw InputError("decomposition: r must be nonempty");
  if (dec.phi.size() != dec.r.size()) {
    throw InputError("decomposition: phi has " + std::to_string(dec.phi.size()) +
                     " rows but r has " + std::to_string(dec.r.size()) + " entries");
  }
  for (double r : dec.r) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw InputError("decomposition: r entries must be positive and finite");
    }
  }
  for (const auto& row : dec.phi) {
    if (row.size() != num_vars) {
      throw InputError("decomposition: phi row length " + std::to_string(row.size()) +
                       " does not match " + std::to_string(num_vars) + " variables");
    }
  }
}

std::vector<double> sigma_from(const Decomposition& dec, std::size_t num_vars) {
  std::vector<double> sigma(num_vars, 0.0);
  for (std::size_t i = 0; i < dec.r.size(); ++i)
    for (std::size_t j = 0; j < num_vars; ++j)
      sigma[j] += dec.r[i] * static_cast<double>(dec.phi[i][j]);
  return sigma;
}

}  // namespace

bool operator==(const Decomposition& a, const Decomposition& b) {
  return a.r == b.r && a.phi == b.phi;
}

bool operator==(const CohomClass& a, const CohomClass& b) {
  return a.sigma_ == b.sigma_ && a.decomposition_ == b.decomposition_;
}

std::optional<Decomposition> rational_decomposition(const std::vector<double>& sigma,
                                                    long long max_denominator) {
  std::vector<Fraction> fr;
  fr.reserve(sigma.size());
  long long lcm = 1;
  for (double s : sigma) {
    auto f = rationalize(s, max_denominator);
    if (!f) return std::nullopt;
    lcm = std::lcm(lcm, f->den);
    if (lcm > std::numeric_limits<long long>::max() / 4 / max_denominator) return std::nullopt;
    fr.push_back(*f);
  }
  std::vector<long long> ints(sigma.size());
  long long g = 0;
  for (std::size_t j = 0; j < sigma.size(); ++j) {
    ints[j] = fr[j].num * (lcm / fr[j].den);
    g = std::gcd(g, ints[j]);
  }
  Decomposition dec;
  if (g == 0) {
    // Zero class: a single trivial weight.
    dec.r = {1.0};
    dec.phi = {std::vector<long long>(sigma.size(), 0)};
    return dec;
  }
  for (auto& v : ints) v /= g;
  dec.r = {static_cast<double>(g) / static_cast<double>(lcm)};
  dec.phi = {ints};
  return dec;
}

CohomClass CohomClass::from_sigma(std::vector<double> sigma) {
  for (double s : sigma) {
    if (!std::isfinite(s)) throw InputError("class: sigma entries must be finite");
  }
  CohomClass c;
  c.decomposition_ = rational_decomposition(sigma);
  c.sigma_ = std::move(sigma);
  return c;
}

CohomClass CohomClass::from_decomposition(Decomposition dec) {
  const std::size_t l = dec.phi.empty() ? 0 : dec.phi[0].size();
  validate_decomposition(dec, l);
  CohomClass c;
  c.sigma_ = sigma_from(dec, l);
  c.decomposition_ = std::move(dec);
  return c;
}

CohomClass CohomClass::with_decomposition(std::vector<double> sigma, Decomposition dec) {
  validate_decomposition(dec, sigma.size());
  const std::vector<double> implied = sigma_from(dec, sigma.size());
  for (std::size_t j = 0; j < sigma.size(); ++j) {
    const double scale = std::max({1.0, std::abs(sigma[j]), std::abs(implied[j])});
    if (std::abs(implied[j] - sigma[j]) > 1e-12 * scale) {
      throw InputError("class: sigma[" + std::to_string(j) +
                       "] disagrees with the decomposition r . phi");
    }
  }
  CohomClass c;
  c.sigma_ = std::move(sigma);
  c.decomposition_ = std::move(dec);
  return c;
}

double CohomClass::pair(const ExponentVector& v) const {
  double s = 0.0;
  for (std::size_t j = 0; j < sigma_.size(); ++j) s += sigma_[j] * v[j];
  return s;
}

CohomClass CohomClass::scaled(double c) const {
  std::vector<double> sigma(sigma_.size());
  for (std::size_t j = 0; j < sigma_.size(); ++j) sigma[j] = c * sigma_[j];
  if (c == 0.0 || !decomposition_) return from_sigma(std::move(sigma));
  Decomposition dec = *decomposition_;
  for (auto& r : dec.r) r *= std::abs(c);
  if (c < 0.0) {
    for (auto& row : dec.phi)
      for (auto& x : row) x = -x;
  }
  CohomClass out;
  out.sigma_ = std::move(sigma);
  out.decomposition_ = std::move(dec);
  return out;
}

LaurentPoly twist_poly(const LaurentPoly& p, const CohomClass& c, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InputError("twist: t must be positive");
  if (c.num_vars() != p.num_vars()) throw InputError("twist: variable count mismatch");
  if (t == 1.0) return p;
  LaurentPoly::TermMap terms;
  for (const auto& [e, a] : p.terms()) terms.emplace(e, a * std::pow(t, c.pair(e)));
  return LaurentPoly::from_map(p.num_vars(), std::move(terms), false);
}

LaurentPoly twist_poly_multi(const LaurentPoly& p, const CohomClass& c,
                             const std::vector<double>& tvec) {
  if (!c.has_decomposition()) throw InputError("multivariable twist needs a decomposition");
  const Decomposition& dec = *c.decomposition();
  if (tvec.size() != dec.rank()) {
    throw InputError("multivariable twist: expected " + std::to_string(dec.rank()) +
                     " parameters, got " + std::to_string(tvec.size()));
  }
  if (c.num_vars() != p.num_vars()) throw InputError("twist: variable count mismatch");
  for (double t : tvec) {
    if (!(t > 0.0) || !std::isfinite(t)) throw InputError("twist: parameters must be positive");
  }
  if (std::all_of(tvec.begin(), tvec.end(), [](double t) { return t == 1.0; })) return p;
  LaurentPoly::TermMap terms;
  for (const auto& [e, a] : p.terms()) {
    Complex scale = a;
    for (std::size_t i = 0; i < dec.rank(); ++i) {
      long long w = 0;
      for (std::size_t j = 0; j < e.size(); ++j) w += dec.phi[i][j] * e[j];
      scale *= std::pow(tvec[i], static_cast<double>(w));
    }
    terms.emplace(e, scale);
  }
  return LaurentPoly::from_map(p.num_vars(), std::move(terms), false);
}

namespace {

// min and max of <sigma, v> over the monomial support of A.
std::pair<double, double> support_range(const LaurentMatrix& a, const CohomClass& c) {
  if (a.num_vars() != c.num_vars()) throw InputError("exponent bound: variable count mismatch");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      for (const auto& [e, coeff] : a(i, j).terms()) {
        const double w = c.pair(e);
        lo = std::min(lo, w);
        hi = std::max(hi, w);
      }
    }
  }
  if (lo > hi) {
    throw InputError("exponent bound undefined for the zero matrix "
                     "(its determinant function is constantly 0)");
  }
  return {lo, hi};
}

}  // namespace

SlopeWindow slope_window(const LaurentMatrix& a, const CohomClass& c) {
  const auto [lo, hi] = support_range(a, c);
  const double p = static_cast<double>(a.size());
  return {p * lo, p * hi};
}

double exponent_bound(const LaurentMatrix& a, const CohomClass& c) {
  const auto [lo, hi] = support_range(a, c);
  return static_cast<double>(a.size()) * (hi - lo);
}

}  // namespace l2alex
