#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace volmom {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exponent vector of a monomial x^a (or of a tensor Chebyshev element).
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t n) : exps_(n, 0) {}
  MultiIndex(std::initializer_list<int> e) : exps_(e) {}
  explicit MultiIndex(std::vector<int> e) : exps_(std::move(e)) {}

  std::size_t size() const { return exps_.size(); }
  int operator[](std::size_t i) const { return exps_[i]; }
  int& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<int>& exponents() const { return exps_; }
  int degree() const;

  MultiIndex operator+(const MultiIndex& o) const;

  bool operator==(const MultiIndex& o) const = default;
  /// Graded lexicographic: lower total degree first, then larger leading
  /// exponents first (1, x1, x2, x1^2, x1 x2, x2^2, ...).
  bool operator<(const MultiIndex& o) const;

 private:
  std::vector<int> exps_;
};

/// Dimension of R[x]_d in n variables: C(n+d, d).
std::size_t monomial_count(std::size_t n, int d);

/// All multi-indices with |a| <= d in graded-lex order.
std::vector<MultiIndex> index_set(std::size_t n, int d);

/// Position of a in the graded-lex order. Independent of any degree cap, so
/// a truncated index set is always a prefix of a longer one.
std::size_t rank(const MultiIndex& a);
MultiIndex unrank(std::size_t n, std::size_t r);

enum class Basis { Monomial, Chebyshev };

std::string to_string(Basis b);
Basis basis_from_string(std::string_view s);

/// Sparse multivariate polynomial in either the power basis or the tensor
/// Chebyshev basis T_a(x) = prod_i T_{a_i}(x_i).
class MultiPoly {
 public:
  using Terms = std::map<MultiIndex, double>;

  MultiPoly() = default;
  MultiPoly(std::size_t n, Basis basis) : n_(n), basis_(basis) {}

  static MultiPoly constant(std::size_t n, double c, Basis basis = Basis::Monomial);
  static MultiPoly variable(std::size_t n, std::size_t i, Basis basis = Basis::Monomial);
  static MultiPoly term(const MultiIndex& a, double c, Basis basis = Basis::Monomial);

  std::size_t dimension() const { return n_; }
  Basis basis() const { return basis_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const;
  double coefficient(const MultiIndex& a) const;

  /// Adds c to the coefficient of a, dropping the entry if it cancels.
  void add_term(const MultiIndex& a, double c);

  double eval(std::span<const double> x) const;

  double coeff_norm1() const;
  double coeff_norm_inf() const;

  /// Coefficients laid out over index_set(n, degree) in graded-lex order.
  std::vector<double> dense(int degree) const;

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly operator*(double s) const;
  MultiPoly& operator+=(const MultiPoly& o);

  std::string to_string(int precision = 6) const;

 private:
  std::size_t n_ = 0;
  Basis basis_ = Basis::Monomial;
  Terms terms_;
};

MultiPoly multiply(const MultiPoly& a, const MultiPoly& b);
MultiPoly pow(const MultiPoly& a, int k);

/// Same function expressed in the target basis.
MultiPoly convert(const MultiPoly& p, Basis target);

/// Coefficients of T_k in the power basis, c[j] for x^j.
const std::vector<double>& chebyshev_to_power_1d(int k);
/// Coefficients of x^j in the Chebyshev basis, e[k] for T_k.
const std::vector<double>& power_to_chebyshev_1d(int j);

/// Product of two basis elements as a short list of (index, coefficient).
/// One term in the power basis, up to 2^n terms in the Chebyshev basis.
std::vector<std::pair<MultiIndex, double>> basis_product(const MultiIndex& a,
                                                        const MultiIndex& b,
                                                        Basis basis);

/// Values of every basis element of degree <= d at x, graded-lex order.
std::vector<double> basis_vector(std::span<const double> x, int d, Basis basis);

/// Parses sums of terms `c * x1^a1 * ... * xn^an` into a power-basis
/// polynomial. Parenthesized groups may be multiplied and raised to
/// nonnegative integer powers, e.g. `-(x1^2 + x2^2)^3 + 4*x1^2*x2^2`.
/// Throws ParseError carrying the line and column of the offending character.
MultiPoly parse_polynomial(std::string_view text, std::size_t n, int max_degree = 200);

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace volmom
