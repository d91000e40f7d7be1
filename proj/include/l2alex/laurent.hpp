#pragma once

// Sparse multivariate Laurent polynomials over C and square matrices of them.
//
// Coefficients are stored as complex doubles. A polynomial whose
// coefficients are all real integers below 2^53 in magnitude is
// "integer-certified"; ring operations on certified inputs run in exact
// 64-bit integer arithmetic and keep the certificate as long as no
// intermediate leaves the exactly representable range.

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace l2alex {

using Complex = std::complex<double>;

/// Exponents of z_1 ... z_l. Lexicographic order is the canonical term order.
using ExponentVector = std::vector<int>;

class LaurentPoly {
 public:
  using TermMap = std::map<ExponentVector, Complex>;

  explicit LaurentPoly(std::size_t num_vars = 0) : num_vars_(num_vars) {}

  /// Builds a polynomial from a term list. Repeated exponents are summed and
  /// zero coefficients dropped. Throws InputError on a length mismatch.
  static LaurentPoly from_terms(
      std::size_t num_vars,
      const std::vector<std::pair<ExponentVector, Complex>>& terms);
  static LaurentPoly constant(std::size_t num_vars, Complex c);
  static LaurentPoly monomial(ExponentVector exponent, Complex c = 1.0);
  /// The single variable z_index (0-based) in an l-variable ring.
  static LaurentPoly variable(std::size_t num_vars, std::size_t index);

  std::size_t num_vars() const noexcept { return num_vars_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool integer_certified() const noexcept { return integer_certified_; }
  bool is_constant() const;

  Complex coeff(const ExponentVector& e) const;
  double max_abs_coeff() const;

  /// Evaluates at a point of (C^*)^l.
  Complex evaluate(std::span<const Complex> z) const;

  /// Per-variable minimum and maximum exponent over the support. Both empty
  /// for the zero polynomial.
  std::pair<ExponentVector, ExponentVector> exponent_range() const;

  LaurentPoly operator-() const;
  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly scaled(Complex c) const;

  /// Exact equality of variable count and term map.
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }

  /// Relative coefficient comparison: max |a_v - b_v| <= rel * max(|a|,|b|).
  bool approx_equal(const LaurentPoly& other, double rel) const;

  /// Unchecked construction from an already canonical term map; used by
  /// operations that scale coefficients without changing exact zeros.
  static LaurentPoly from_map(std::size_t num_vars, TermMap terms,
                              bool integer_certified);

 private:
  void prune_and_certify();

  std::size_t num_vars_ = 0;
  TermMap terms_;
  bool integer_certified_ = true;
};

LaurentPoly poly_mul(const LaurentPoly& a, const LaurentPoly& b);

/// a* = sum conj(a_v) z^{-v}.
LaurentPoly poly_involution(const LaurentPoly& a);

/// Exact division a / b in the Laurent ring. Throws Error if b does not
/// divide a (beyond round-off on the floating path).
LaurentPoly poly_exact_div(const LaurentPoly& a, const LaurentPoly& b);

/// Multiplies every exponent vector by an integer matrix: z^v -> z^{M v}.
/// M has `rows` = new variable count and columns = current variable count.
LaurentPoly poly_monomial_transform(const LaurentPoly& a,
                                    const std::vector<std::vector<long long>>& m);

class LaurentMatrix {
 public:
  LaurentMatrix() = default;
  /// size x size zero matrix over l variables.
  LaurentMatrix(std::size_t size, std::size_t num_vars);
  /// Row-major entries; throws InputError unless square with a common
  /// variable count.
  static LaurentMatrix from_rows(std::vector<std::vector<LaurentPoly>> rows);
  static LaurentMatrix identity(std::size_t size, std::size_t num_vars);

  std::size_t size() const noexcept { return size_; }
  std::size_t num_vars() const noexcept { return num_vars_; }
  const LaurentPoly& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * size_ + j];
  }
  void set(std::size_t i, std::size_t j, LaurentPoly value);

  bool integer_certified() const;
  bool is_zero() const;

  friend LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b);
  friend bool operator==(const LaurentMatrix& a, const LaurentMatrix& b) {
    return a.size_ == b.size_ && a.num_vars_ == b.num_vars_ &&
           a.entries_ == b.entries_;
  }

 private:
  std::size_t size_ = 0;
  std::size_t num_vars_ = 0;
  std::vector<LaurentPoly> entries_;
};

/// A* = (a*_{ji}).
LaurentMatrix matrix_adjoint(const LaurentMatrix& a);

/// Symbolic determinant over the Laurent ring: cofactor expansion up to
/// size 4, fraction-free (Bareiss) elimination above. The 0x0 determinant
/// is the constant 1.
LaurentPoly matrix_determinant(const LaurentMatrix& a);

/// Size threshold at or below which cofactor expansion is used.
inline constexpr std::size_t kCofactorMaxSize = 4;

namespace detail {
LaurentPoly determinant_cofactor(const LaurentMatrix& a);
LaurentPoly determinant_bareiss(const LaurentMatrix& a);
}  // namespace detail

}  // namespace l2alex
