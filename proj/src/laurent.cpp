#include "l2alex/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "l2alex/error.hpp"

namespace l2alex {

namespace {

constexpr double kExactLimit = 9007199254740992.0;  // 2^53
constexpr double kFloatPruneRel = 1e-15;

bool is_exact_integer(Complex c) {
  return c.imag() == 0.0 && std::abs(c.real()) < kExactLimit &&
         std::floor(c.real()) == c.real();
}

void check_vars(const LaurentPoly& a, const LaurentPoly& b, const char* op) {
  if (a.num_vars() != b.num_vars()) {
    throw InputError(std::string(op) + ": variable count mismatch (" +
                     std::to_string(a.num_vars()) + " vs " +
                     std::to_string(b.num_vars()) + ")");
  }
}

ExponentVector add_exp(const ExponentVector& a, const ExponentVector& b) {
  ExponentVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

ExponentVector sub_exp(const ExponentVector& a, const ExponentVector& b) {
  ExponentVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

}  // namespace

LaurentPoly LaurentPoly::from_terms(
    std::size_t num_vars,
    const std::vector<std::pair<ExponentVector, Complex>>& terms) {
  LaurentPoly p(num_vars);
  for (const auto& [e, c] : terms) {
    if (e.size() != num_vars) {
      throw InputError("exponent vector of length " + std::to_string(e.size()) +
                       " in a " + std::to_string(num_vars) + "-variable ring");
    }
    p.terms_[e] += c;
  }
  p.prune_and_certify();
  return p;
}

LaurentPoly LaurentPoly::constant(std::size_t num_vars, Complex c) {
  return from_terms(num_vars, {{ExponentVector(num_vars, 0), c}});
}

LaurentPoly LaurentPoly::monomial(ExponentVector exponent, Complex c) {
  const std::size_t n = exponent.size();
  return from_terms(n, {{std::move(exponent), c}});
}

LaurentPoly LaurentPoly::variable(std::size_t num_vars, std::size_t index) {
  ExponentVector e(num_vars, 0);
  e.at(index) = 1;
  return monomial(std::move(e));
}

LaurentPoly LaurentPoly::from_map(std::size_t num_vars, TermMap terms,
                                  bool integer_certified) {
  LaurentPoly p(num_vars);
  p.terms_ = std::move(terms);
  std::erase_if(p.terms_, [](const auto& kv) { return kv.second == 0.0; });
  p.integer_certified_ =
      integer_certified &&
      std::all_of(p.terms_.begin(), p.terms_.end(),
                  [](const auto& kv) { return is_exact_integer(kv.second); });
  return p;
}

void LaurentPoly::prune_and_certify() {
  std::erase_if(terms_, [](const auto& kv) { return kv.second == 0.0; });
  integer_certified_ =
      std::all_of(terms_.begin(), terms_.end(),
                  [](const auto& kv) { return is_exact_integer(kv.second); });
  if (!integer_certified_) {
    const double cut = kFloatPruneRel * max_abs_coeff();
    std::erase_if(terms_, [cut](const auto& kv) { return std::abs(kv.second) < cut; });
  }
}

bool LaurentPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

Complex LaurentPoly::coeff(const ExponentVector& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

double LaurentPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

Complex LaurentPoly::evaluate(std::span<const Complex> z) const {
  if (z.size() != num_vars_) throw InputError("evaluate: point has wrong dimension");
  Complex sum = 0.0;
  for (const auto& [e, c] : terms_) {
    Complex m = c;
    for (std::size_t i = 0; i < num_vars_; ++i) {
      if (e[i] != 0) m *= std::pow(z[i], e[i]);
    }
    sum += m;
  }
  return sum;
}

std::pair<ExponentVector, ExponentVector> LaurentPoly::exponent_range() const {
  if (terms_.empty()) return {};
  ExponentVector lo = terms_.begin()->first, hi = lo;
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < num_vars_; ++i) {
      lo[i] = std::min(lo[i], e[i]);
      hi[i] = std::max(hi[i], e[i]);
    }
  }
  return {lo, hi};
}

LaurentPoly LaurentPoly::operator-() const {
  TermMap t = terms_;
  for (auto& [e, c] : t) c = -c;
  return from_map(num_vars_, std::move(t), integer_certified_);
}

LaurentPoly LaurentPoly::scaled(Complex c) const {
  LaurentPoly p(num_vars_);
  p.terms_ = terms_;
  for (auto& [e, v] : p.terms_) v *= c;
  p.prune_and_certify();
  p.integer_certified_ = p.integer_certified_ && integer_certified_ && is_exact_integer(c);
  return p;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  check_vars(a, b, "add");
  LaurentPoly out(a.num_vars_);
  out.terms_ = a.terms_;
  for (const auto& [e, c] : b.terms_) out.terms_[e] += c;
  // Integer inputs below 2^53 sum exactly in double; prune_and_certify drops
  // the certificate if the sum left the exact range.
  out.prune_and_certify();
  out.integer_certified_ = out.integer_certified_ && a.integer_certified_ &&
                           b.integer_certified_;
  return out;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  check_vars(a, b, "multiply");
  LaurentPoly out(a.num_vars_);
  if (a.integer_certified_ && b.integer_certified_) {
    std::map<ExponentVector, __int128> acc;
    for (const auto& [ea, ca] : a.terms_) {
      const auto ia = static_cast<long long>(ca.real());
      for (const auto& [eb, cb] : b.terms_) {
        acc[add_exp(ea, eb)] += static_cast<__int128>(ia) *
                                static_cast<long long>(cb.real());
      }
    }
    bool exact = true;
    for (const auto& [e, v] : acc) {
      if (v == 0) continue;
      const __int128 mag = v < 0 ? -v : v;
      if (mag >= static_cast<__int128>(kExactLimit)) exact = false;
      out.terms_.emplace(e, Complex(static_cast<double>(v), 0.0));
    }
    if (!exact) out.prune_and_certify();
    out.integer_certified_ = exact;
    return out;
  }
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) out.terms_[add_exp(ea, eb)] += ca * cb;
  }
  out.prune_and_certify();
  out.integer_certified_ = false;
  return out;
}

bool LaurentPoly::approx_equal(const LaurentPoly& other, double rel) const {
  if (num_vars_ != other.num_vars_) return false;
  const double scale = std::max(max_abs_coeff(), other.max_abs_coeff());
  auto ia = terms_.begin();
  auto ib = other.terms_.begin();
  double worst = 0.0;
  while (ia != terms_.end() || ib != other.terms_.end()) {
    if (ib == other.terms_.end() || (ia != terms_.end() && ia->first < ib->first)) {
      worst = std::max(worst, std::abs(ia->second));
      ++ia;
    } else if (ia == terms_.end() || ib->first < ia->first) {
      worst = std::max(worst, std::abs(ib->second));
      ++ib;
    } else {
      worst = std::max(worst, std::abs(ia->second - ib->second));
      ++ia, ++ib;
    }
  }
  return worst <= rel * scale;
}

LaurentPoly poly_mul(const LaurentPoly& a, const LaurentPoly& b) { return a * b; }

LaurentPoly poly_involution(const LaurentPoly& a) {
  LaurentPoly::TermMap t;
  for (const auto& [e, c] : a.terms()) {
    ExponentVector neg(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) neg[i] = -e[i];
    t.emplace(std::move(neg), std::conj(c));
  }
  return LaurentPoly::from_map(a.num_vars(), std::move(t), a.integer_certified());
}

LaurentPoly poly_exact_div(const LaurentPoly& a, const LaurentPoly& b) {
  check_vars(a, b, "divide");
  if (b.is_zero()) throw InputError("divide: division by the zero polynomial");
  if (a.is_zero()) return LaurentPoly(a.num_vars());

  // Long division on the lexicographic leading term. For an exact quotient
  // the quotient terms are produced in strictly decreasing order, so the
  // loop is finite; the cap only guards the floating path.
  const auto& [lead_exp, lead_coeff] = *b.terms().rbegin();
  const bool exact = a.integer_certified() && b.integer_certified();
  const double dust = exact ? 0.0 : 1e-11 * a.max_abs_coeff();
  const std::size_t cap = 64 * (a.size() + 1) * (b.size() + 1) + 1024;

  LaurentPoly::TermMap quotient;
  LaurentPoly rem = a;
  std::size_t steps = 0;
  while (!rem.is_zero()) {
    if (!exact && rem.max_abs_coeff() <= dust) break;
    if (++steps > cap) throw Error("divide: polynomial division is not exact");
    const auto& [re, rc] = *rem.terms().rbegin();
    const ExponentVector qe = sub_exp(re, lead_exp);
    const Complex qc = rc / lead_coeff;
    if (exact && !is_exact_integer(qc)) {
      throw Error("divide: polynomial division is not exact");
    }
    quotient[qe] += qc;
    LaurentPoly step = LaurentPoly::from_map(a.num_vars(), {{qe, qc}}, exact) * b;
    LaurentPoly next = rem - step;
    // Force the cancelled leading term out even if round-off left dust.
    LaurentPoly::TermMap t = next.terms();
    t.erase(re);
    if (!exact) {
      std::erase_if(t, [dust](const auto& kv) { return std::abs(kv.second) <= dust; });
    }
    rem = LaurentPoly::from_map(a.num_vars(), std::move(t), next.integer_certified());
  }
  LaurentPoly q = LaurentPoly::from_map(a.num_vars(), std::move(quotient), exact);
  if (!exact) {
    std::vector<std::pair<ExponentVector, Complex>> terms(q.terms().begin(), q.terms().end());
    q = LaurentPoly::from_terms(a.num_vars(), terms);
  }
  return q;
}

LaurentPoly poly_monomial_transform(const LaurentPoly& a,
                                    const std::vector<std::vector<long long>>& m) {
  const std::size_t rows = m.size();
  for (const auto& row : m) {
    if (row.size() != a.num_vars()) throw InputError("monomial transform: shape mismatch");
  }
  std::vector<std::pair<ExponentVector, Complex>> terms;
  terms.reserve(a.size());
  for (const auto& [e, c] : a.terms()) {
    ExponentVector ne(rows, 0);
    for (std::size_t i = 0; i < rows; ++i) {
      long long s = 0;
      for (std::size_t j = 0; j < e.size(); ++j) s += m[i][j] * e[j];
      ne[i] = static_cast<int>(s);
    }
    terms.emplace_back(std::move(ne), c);
  }
  LaurentPoly out = LaurentPoly::from_terms(rows, terms);
  return LaurentPoly::from_map(rows, out.terms(), a.integer_certified());
}

// ---------------------------------------------------------------------------

LaurentMatrix::LaurentMatrix(std::size_t size, std::size_t num_vars)
    : size_(size), num_vars_(num_vars), entries_(size * size, LaurentPoly(num_vars)) {}

LaurentMatrix LaurentMatrix::from_rows(std::vector<std::vector<LaurentPoly>> rows) {
  const std::size_t n = rows.size();
  std::size_t vars = n == 0 ? 0 : (rows[0].empty() ? 0 : rows[0][0].num_vars());
  LaurentMatrix m(n, vars);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw InputError("matrix is not square: row " + std::to_string(i) + " has " +
                       std::to_string(rows[i].size()) + " entries, expected " +
                       std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (rows[i][j].num_vars() != vars) {
        throw InputError("matrix entries disagree on the variable count");
      }
      m.entries_[i * n + j] = std::move(rows[i][j]);
    }
  }
  return m;
}

LaurentMatrix LaurentMatrix::identity(std::size_t size, std::size_t num_vars) {
  LaurentMatrix m(size, num_vars);
  for (std::size_t i = 0; i < size; ++i) m.set(i, i, LaurentPoly::constant(num_vars, 1.0));
  return m;
}

void LaurentMatrix::set(std::size_t i, std::size_t j, LaurentPoly value) {
  if (value.num_vars() != num_vars_) throw InputError("matrix entry has wrong variable count");
  entries_.at(i * size_ + j) = std::move(value);
}

bool LaurentMatrix::integer_certified() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const LaurentPoly& p) { return p.integer_certified(); });
}

bool LaurentMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const LaurentPoly& p) { return p.is_zero(); });
}

LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (a.size_ != b.size_ || a.num_vars_ != b.num_vars_) {
    throw InputError("matrix product: shape mismatch");
  }
  LaurentMatrix out(a.size_, a.num_vars_);
  for (std::size_t i = 0; i < a.size_; ++i) {
    for (std::size_t j = 0; j < a.size_; ++j) {
      LaurentPoly s(a.num_vars_);
      for (std::size_t k = 0; k < a.size_; ++k) s = s + a(i, k) * b(k, j);
      out.set(i, j, std::move(s));
    }
  }
  return out;
}

LaurentMatrix matrix_adjoint(const LaurentMatrix& a) {
  LaurentMatrix out(a.size(), a.num_vars());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) out.set(j, i, poly_involution(a(i, j)));
  }
  return out;
}

namespace detail {

namespace {

LaurentPoly cofactor_rec(const LaurentMatrix& a, std::vector<std::size_t>& cols,
                         std::size_t row) {
  const std::size_t n = a.size();
  if (row == n) return LaurentPoly::constant(a.num_vars(), 1.0);
  LaurentPoly sum(a.num_vars());
  int sign = 1;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const std::size_t c = cols[k];
    if (!a(row, c).is_zero()) {
      cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(k));
      LaurentPoly minor = cofactor_rec(a, cols, row + 1);
      cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(k), c);
      LaurentPoly term = a(row, c) * minor;
      sum = sign > 0 ? sum + term : sum - term;
    }
    sign = -sign;
  }
  return sum;
}

}  // namespace

LaurentPoly determinant_cofactor(const LaurentMatrix& a) {
  std::vector<std::size_t> cols(a.size());
  for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = i;
  return cofactor_rec(a, cols, 0);
}

LaurentPoly determinant_bareiss(const LaurentMatrix& a) {
  const std::size_t n = a.size();
  const std::size_t vars = a.num_vars();
  if (n == 0) return LaurentPoly::constant(vars, 1.0);
  std::vector<std::vector<LaurentPoly>> m(n, std::vector<LaurentPoly>(n, LaurentPoly(vars)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a(i, j);

  bool negate = false;
  LaurentPoly prev = LaurentPoly::constant(vars, 1.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k].is_zero()) ++swap;
      if (swap == n) return LaurentPoly(vars);
      std::swap(m[k], m[swap]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        LaurentPoly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        m[i][j] = poly_exact_div(num, prev);
      }
      m[i][k] = LaurentPoly(vars);
    }
    prev = m[k][k];
  }
  LaurentPoly det = m[n - 1][n - 1];
  return negate ? -det : det;
}

}  // namespace detail

LaurentPoly matrix_determinant(const LaurentMatrix& a) {
  if (a.size() <= kCofactorMaxSize) return detail::determinant_cofactor(a);
  return detail::determinant_bareiss(a);
}

}  // namespace l2alex
