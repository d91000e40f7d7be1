#include <algorithm>
#include <cmath>
#include <Eigen/Dense>

#include "l2alex/error.hpp"
#include "l2alex/mahler.hpp"

namespace l2alex {

namespace {

using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

// Parlett-Reinsch diagonal balancing with radix 2, in place.
void balance(CMatrix& m) {
  const Eigen::Index n = m.rows();
  constexpr double radix = 2.0;
  bool converged = false;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(m(j, i));
        r += std::abs(m(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix, f = 1.0;
      const double s = c + r;
      while (c < g) f *= radix, c *= radix * radix;
      g = r * radix;
      while (c > g) f /= radix, c /= radix * radix;
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        m.row(i) /= f;
        m.col(i) *= f;
      }
    }
  }
}

// Horner value and derivative of the monic-free dense polynomial.
void horner(const std::vector<Complex>& c, Complex z, Complex& value, Complex& deriv) {
  value = c.back();
  deriv = 0.0;
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    deriv = deriv * z + value;
    value = value * z + c[k];
  }
}

// A k-fold root comes out of the eigensolver as k points spread by about
// eps^(1/k); their mean is accurate to near working precision. Roots whose
// inclusion disks n|p|/|p'| overlap are linked and each linked group is
// replaced by copies of its centroid. Returns which roots were merged.
std::vector<bool> merge_clusters(const std::vector<Complex>& c, std::vector<Complex>& roots) {
  const std::size_t n = roots.size();
  std::vector<double> radius(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    Complex v, d;
    horner(c, roots[i], v, d);
    const double r = static_cast<double>(n) * std::abs(v) / std::abs(d);
    if (std::isfinite(r)) radius[i] = std::min(r, 1e-2 * (1.0 + std::abs(roots[i])));
  }
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  bool linked = false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(roots[i] - roots[j]) <= radius[i] + radius[j]) {
        parent[find(i)] = find(j);
        linked = true;
      }
    }
  }
  std::vector<bool> merged(n, false);
  if (!linked) return merged;
  std::vector<Complex> sum(n, 0.0);
  std::vector<std::size_t> count(n, 0);
  for (std::size_t i = 0; i < n; ++i) sum[find(i)] += roots[i], ++count[find(i)];
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    roots[i] = sum[r] / static_cast<double>(count[r]);
    merged[i] = count[r] > 1;
  }
  return merged;
}

}  // namespace

RootData roots_dense(const std::vector<Complex>& coeffs) {
  std::size_t lo = 0;
  while (lo < coeffs.size() && coeffs[lo] == 0.0) ++lo;
  if (lo == coeffs.size()) throw InputError("roots: zero polynomial");
  std::size_t hi = coeffs.size() - 1;
  while (coeffs[hi] == 0.0) --hi;

  RootData out;
  out.power = static_cast<int>(lo);
  out.leading = coeffs[hi];
  const std::size_t deg = hi - lo;
  if (deg == 0) return out;

  std::vector<Complex> c(coeffs.begin() + static_cast<std::ptrdiff_t>(lo),
                         coeffs.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
  if (deg == 1) {
    out.roots.push_back(-c[0] / c[1]);
    return out;
  }

  // Companion matrix of the monic polynomial: ones on the subdiagonal,
  // -c_k / c_deg in the last column.
  const auto n = static_cast<Eigen::Index>(deg);
  CMatrix comp = CMatrix::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) comp(i, n - 1) = -c[static_cast<std::size_t>(i)] / c[deg];
  balance(comp);
  Eigen::ComplexEigenSolver<CMatrix> solver(comp, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw Error("roots: eigenvalue iteration failed");

  out.roots.assign(solver.eigenvalues().begin(), solver.eigenvalues().end());
  const std::vector<bool> merged = merge_clusters(c, out.roots);
  for (std::size_t i = 0; i < deg; ++i) {
    if (merged[i]) continue;
    Complex& z = out.roots[i];
    Complex v, d;
    horner(c, z, v, d);
    if (d != 0.0) {
      const Complex step = v / d;
      // Accept the polish only if it does not move the root by more than
      // its own size.
      if (std::isfinite(step.real()) && std::isfinite(step.imag()) &&
          std::abs(step) <= 0.5 * std::abs(z) + 1e-300) {
        const Complex polished = z - step;
        Complex pv, pd;
        horner(c, polished, pv, pd);
        if (std::abs(pv) <= std::abs(v)) z = polished;
      }
    }
  }
  return out;
}

RootData roots(const LaurentPoly& q) {
  if (q.num_vars() != 1) throw InputError("roots: expected a one-variable polynomial");
  if (q.is_zero()) throw InputError("roots: zero polynomial");
  const auto [lo, hi] = q.exponent_range();
  std::vector<Complex> dense(static_cast<std::size_t>(hi[0] - lo[0]) + 1, 0.0);
  for (const auto& [e, c] : q.terms()) dense[static_cast<std::size_t>(e[0] - lo[0])] = c;
  RootData r = roots_dense(dense);
  r.power += lo[0];
  return r;
}

LaurentPoly RootData::reconstruct() const {
  LaurentPoly p = LaurentPoly::monomial({power}, leading);
  for (const Complex& b : roots) {
    p = p * LaurentPoly::from_terms(1, {{{1}, 1.0}, {{0}, -b}});
  }
  return p;
}

}  // namespace l2alex
