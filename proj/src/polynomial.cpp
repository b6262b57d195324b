#include "volmom/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

namespace volmom {

namespace {

constexpr int kMaxTableDegree = 512;

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

struct ChebyshevTables {
  std::vector<std::vector<double>> t_to_x;
  std::vector<std::vector<double>> x_to_t;

  ChebyshevTables() {
    t_to_x.resize(kMaxTableDegree + 1);
    x_to_t.resize(kMaxTableDegree + 1);
    t_to_x[0] = {1.0};
    t_to_x[1] = {0.0, 1.0};
    for (int k = 1; k < kMaxTableDegree; ++k) {
      std::vector<double> next(k + 2, 0.0);
      for (int j = 0; j <= k; ++j) next[j + 1] += 2.0 * t_to_x[k][j];
      for (int j = 0; j < k; ++j) next[j] -= t_to_x[k - 1][j];
      t_to_x[k + 1] = std::move(next);
    }
    // x * T_0 = T_1, x * T_k = (T_{k+1} + T_{k-1}) / 2.
    x_to_t[0] = {1.0};
    for (int j = 0; j < kMaxTableDegree; ++j) {
      const auto& cur = x_to_t[j];
      std::vector<double> next(j + 2, 0.0);
      for (int k = 0; k <= j; ++k) {
        if (cur[k] == 0.0) continue;
        if (k == 0) {
          next[1] += cur[0];
        } else {
          next[k + 1] += 0.5 * cur[k];
          next[k - 1] += 0.5 * cur[k];
        }
      }
      x_to_t[j + 1] = std::move(next);
    }
  }
};

const ChebyshevTables& tables() {
  static const ChebyshevTables t;
  return t;
}

void check_table_degree(int k) {
  if (k < 0 || k > kMaxTableDegree)
    throw Error("Chebyshev conversion degree " + std::to_string(k) + " exceeds limit " +
                std::to_string(kMaxTableDegree));
}

// Per-coordinate values x_i^k or T_k(x_i) for k = 0..max_exp.
std::vector<std::vector<double>> coordinate_tables(std::span<const double> x, int max_exp,
                                                   Basis basis) {
  std::vector<std::vector<double>> v(x.size(), std::vector<double>(max_exp + 1, 1.0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto& row = v[i];
    if (max_exp >= 1) row[1] = x[i];
    for (int k = 2; k <= max_exp; ++k) {
      row[k] = basis == Basis::Monomial ? row[k - 1] * x[i]
                                        : 2.0 * x[i] * row[k - 1] - row[k - 2];
    }
  }
  return v;
}

}  // namespace

int MultiIndex::degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
  MultiIndex r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += o.exps_[i];
  return r;
}

bool MultiIndex::operator<(const MultiIndex& o) const {
  const int da = degree();
  const int db = o.degree();
  if (da != db) return da < db;
  return std::lexicographical_compare(o.exps_.begin(), o.exps_.end(), exps_.begin(),
                                      exps_.end());
}

std::size_t monomial_count(std::size_t n, int d) {
  if (d < 0) return 0;
  return static_cast<std::size_t>(binomial(n + static_cast<std::size_t>(d), n));
}

std::vector<MultiIndex> index_set(std::size_t n, int d) {
  if (n == 0) throw Error("index_set: dimension must be >= 1");
  std::vector<MultiIndex> out;
  out.reserve(monomial_count(n, d));
  for (std::size_t r = 0; r < monomial_count(n, d); ++r) out.push_back(unrank(n, r));
  return out;
}

std::size_t rank(const MultiIndex& a) {
  const std::size_t n = a.size();
  const int k = a.degree();
  std::size_t r = monomial_count(n, k - 1);
  int rem = k;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t m = n - i - 1;
    if (rem > a[i]) r += binomial(static_cast<std::uint64_t>(rem - a[i] - 1) + m, m);
    rem -= a[i];
  }
  return r;
}

MultiIndex unrank(std::size_t n, std::size_t r) {
  int k = 0;
  while (monomial_count(n, k) <= r) ++k;
  std::size_t pos = r - monomial_count(n, k - 1);
  MultiIndex a(n);
  int rem = k;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t m = n - i - 1;
    // Largest exponent first; each value v for coordinate i owns C(rem-v+m-1, m-1) slots.
    int v = rem;
    while (true) {
      const std::size_t block = binomial(static_cast<std::uint64_t>(rem - v) + m - 1, m - 1);
      if (pos < block) break;
      pos -= block;
      --v;
    }
    a[i] = v;
    rem -= v;
  }
  a[n - 1] = rem;
  return a;
}

std::string to_string(Basis b) { return b == Basis::Monomial ? "monomial" : "chebyshev"; }

Basis basis_from_string(std::string_view s) {
  if (s == "monomial" || s == "power") return Basis::Monomial;
  if (s == "chebyshev") return Basis::Chebyshev;
  throw Error("unknown basis '" + std::string(s) + "'");
}

MultiPoly MultiPoly::constant(std::size_t n, double c, Basis basis) {
  MultiPoly p(n, basis);
  p.add_term(MultiIndex(n), c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t n, std::size_t i, Basis basis) {
  MultiIndex a(n);
  a[i] = 1;
  return term(a, 1.0, basis);  // x_i = T_1(x_i)
}

MultiPoly MultiPoly::term(const MultiIndex& a, double c, Basis basis) {
  MultiPoly p(a.size(), basis);
  p.add_term(a, c);
  return p;
}

int MultiPoly::degree() const {
  int d = -1;
  for (const auto& [a, c] : terms_) d = std::max(d, a.degree());
  return d;
}

double MultiPoly::coefficient(const MultiIndex& a) const {
  auto it = terms_.find(a);
  return it == terms_.end() ? 0.0 : it->second;
}

void MultiPoly::add_term(const MultiIndex& a, double c) {
  if (a.size() != n_) throw Error("add_term: dimension mismatch");
  if (c == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(a, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double MultiPoly::eval(std::span<const double> x) const {
  if (x.size() != n_) throw Error("eval: point dimension mismatch");
  int max_exp = 0;
  for (const auto& [a, c] : terms_)
    for (int e : a.exponents()) max_exp = std::max(max_exp, e);
  const auto tab = coordinate_tables(x, max_exp, basis_);
  double s = 0.0;
  for (const auto& [a, c] : terms_) {
    double t = c;
    for (std::size_t i = 0; i < n_; ++i) t *= tab[i][a[i]];
    s += t;
  }
  return s;
}

double MultiPoly::coeff_norm1() const {
  double s = 0.0;
  for (const auto& [a, c] : terms_) s += std::abs(c);
  return s;
}

double MultiPoly::coeff_norm_inf() const {
  double s = 0.0;
  for (const auto& [a, c] : terms_) s = std::max(s, std::abs(c));
  return s;
}

std::vector<double> MultiPoly::dense(int degree) const {
  std::vector<double> v(monomial_count(n_, degree), 0.0);
  for (const auto& [a, c] : terms_) {
    if (a.degree() > degree) throw Error("dense: polynomial degree exceeds layout degree");
    v[rank(a)] = c;
  }
  return v;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (o.n_ != n_ || o.basis_ != basis_) throw Error("polynomial dimension/basis mismatch");
  for (const auto& [a, c] : o.terms_) add_term(a, c);
  return *this;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly r(*this);
  r += o;
  return r;
}

MultiPoly MultiPoly::operator-() const { return *this * -1.0; }

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(double s) const {
  MultiPoly r(n_, basis_);
  for (const auto& [a, c] : terms_) r.add_term(a, c * s);
  return r;
}

std::string MultiPoly::to_string(int precision) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(precision);
  bool first = true;
  for (const auto& [a, c] : terms_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    os << std::abs(c);
    for (std::size_t i = 0; i < n_; ++i) {
      if (a[i] == 0) continue;
      os << (basis_ == Basis::Monomial ? " * x" : " * T") << (i + 1);
      if (a[i] > 1 || basis_ == Basis::Chebyshev) os << "^" << a[i];
    }
    first = false;
  }
  return os.str();
}

std::vector<std::pair<MultiIndex, double>> basis_product(const MultiIndex& a,
                                                        const MultiIndex& b,
                                                        Basis basis) {
  if (basis == Basis::Monomial) return {{a + b, 1.0}};
  // T_i T_j = (T_{i+j} + T_{|i-j|}) / 2 per coordinate.
  const std::size_t n = a.size();
  std::vector<std::pair<MultiIndex, double>> out{{MultiIndex(n), 1.0}};
  for (std::size_t i = 0; i < n; ++i) {
    const int s = a[i] + b[i];
    const int d = std::abs(a[i] - b[i]);
    if (a[i] == 0 || b[i] == 0) {
      for (auto& [idx, c] : out) idx[i] = s;
      continue;
    }
    const std::size_t m = out.size();
    for (std::size_t t = 0; t < m; ++t) {
      auto copy = out[t];
      out[t].first[i] = s;
      out[t].second *= 0.5;
      copy.first[i] = d;
      copy.second *= 0.5;
      out.push_back(std::move(copy));
    }
  }
  return out;
}

MultiPoly multiply(const MultiPoly& a, const MultiPoly& b) {
  if (a.dimension() != b.dimension()) throw Error("multiply: dimension mismatch");
  if (a.basis() != b.basis()) throw Error("multiply: basis mismatch");
  MultiPoly r(a.dimension(), a.basis());
  for (const auto& [ia, ca] : a.terms())
    for (const auto& [ib, cb] : b.terms())
      for (const auto& [ic, cc] : basis_product(ia, ib, a.basis())) r.add_term(ic, ca * cb * cc);
  return r;
}

MultiPoly pow(const MultiPoly& a, int k) {
  if (k < 0) throw Error("pow: negative exponent");
  MultiPoly r = MultiPoly::constant(a.dimension(), 1.0, a.basis());
  for (int i = 0; i < k; ++i) r = multiply(r, a);
  return r;
}

const std::vector<double>& chebyshev_to_power_1d(int k) {
  check_table_degree(k);
  return tables().t_to_x[k];
}

const std::vector<double>& power_to_chebyshev_1d(int j) {
  check_table_degree(j);
  return tables().x_to_t[j];
}

MultiPoly convert(const MultiPoly& p, Basis target) {
  if (p.basis() == target) return p;
  const std::size_t n = p.dimension();
  MultiPoly r(n, target);
  for (const auto& [a, c] : p.terms()) {
    // Expand the tensor element coordinate by coordinate.
    std::vector<std::pair<MultiIndex, double>> acc{{MultiIndex(n), c}};
    for (std::size_t i = 0; i < n; ++i) {
      const auto& row = target == Basis::Chebyshev ? power_to_chebyshev_1d(a[i])
                                                   : chebyshev_to_power_1d(a[i]);
      std::vector<std::pair<MultiIndex, double>> next;
      for (const auto& [idx, v] : acc) {
        for (std::size_t k = 0; k < row.size(); ++k) {
          if (row[k] == 0.0) continue;
          auto j = idx;
          j[i] = static_cast<int>(k);
          next.emplace_back(std::move(j), v * row[k]);
        }
      }
      acc = std::move(next);
    }
    for (const auto& [idx, v] : acc) r.add_term(idx, v);
  }
  return r;
}

std::vector<double> basis_vector(std::span<const double> x, int d, Basis basis) {
  const auto tab = coordinate_tables(x, std::max(d, 0), basis);
  const auto idx = index_set(x.size(), d);
  std::vector<double> v(idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    double t = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) t *= tab[i][idx[r][i]];
    v[r] = t;
  }
  return v;
}

ParseError::ParseError(const std::string& msg, std::size_t line, std::size_t column)
    : Error(msg + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
      line_(line),
      column_(column) {}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t n, int max_degree)
      : text_(text), n_(n), max_degree_(max_degree) {}

  MultiPoly parse() {
    skip_ws();
    if (eof()) fail("empty polynomial");
    MultiPoly p = parse_sum();
    skip_ws();
    if (!eof()) {
      if (peek() == ')') fail("unmatched ')'");
      fail("expected '+' or '-'");
    }
    return p;
  }

 private:
  // sum := ['+'|'-'] product (('+'|'-') product)*
  MultiPoly parse_sum() {
    MultiPoly p(n_, Basis::Monomial);
    bool first = true;
    while (true) {
      skip_ws();
      double sign = 1.0;
      if (!eof() && (peek() == '+' || peek() == '-')) {
        sign = peek() == '-' ? -1.0 : 1.0;
        advance();
      } else if (!first) {
        return p;
      }
      p = p + parse_product() * sign;
      check_degree(p);
      first = false;
    }
  }

  // product := power ('*' power)*
  MultiPoly parse_product() {
    MultiPoly p = parse_power();
    while (true) {
      skip_ws();
      if (eof() || peek() != '*') return p;
      advance();
      p = multiply(p, parse_power());
      check_degree(p);
    }
  }

  // power := primary ['^' uint]
  MultiPoly parse_power() {
    MultiPoly base = parse_primary();
    skip_ws();
    if (eof() || peek() != '^') return base;
    advance();
    skip_ws();
    if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
      fail("exponent must be a nonnegative integer");
    const long e = parse_uint();
    if (e > max_degree_ || base.degree() * e > max_degree_)
      fail("exponent exceeds maximum degree");
    return pow(base, static_cast<int>(e));
  }

  // primary := number | x<index> | '(' sum ')'
  MultiPoly parse_primary() {
    skip_ws();
    if (eof()) fail("unexpected end of input");
    if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')
      return MultiPoly::constant(n_, parse_number());
    if (peek() == 'x') {
      const std::size_t var_pos = pos_;
      advance();
      if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
        fail("expected variable index after 'x'");
      const long idx = parse_uint();
      if (idx < 1 || static_cast<std::size_t>(idx) > n_) {
        pos_ = var_pos;
        fail("unknown variable x" + std::to_string(idx));
      }
      return MultiPoly::variable(n_, static_cast<std::size_t>(idx - 1));
    }
    if (peek() == '(') {
      advance();
      MultiPoly p = parse_sum();
      skip_ws();
      if (eof() || peek() != ')') fail("expected ')'");
      advance();
      return p;
    }
    fail(std::string("unexpected character '") + peek() + "'");
  }

  void check_degree(const MultiPoly& p) const {
    if (p.degree() > max_degree_)
      fail("polynomial degree " + std::to_string(p.degree()) + " exceeds maximum " +
           std::to_string(max_degree_));
  }

  double parse_number() {
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc()) fail("malformed number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    // A rational literal a/b.
    skip_ws();
    if (!eof() && peek() == '/') {
      advance();
      skip_ws();
      const char* b2 = text_.data() + pos_;
      double den = 0.0;
      auto [p2, ec2] = std::from_chars(b2, end, den);
      if (ec2 != std::errc() || den == 0.0) fail("malformed denominator");
      pos_ += static_cast<std::size_t>(p2 - b2);
      v /= den;
    }
    return v;
  }

  long parse_uint() {
    long v = 0;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      if (v > 1000000) fail("integer too large");
      advance();
    }
    return v;
  }

  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }
  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void advance() { ++pos_; }

  [[noreturn]] void fail(const std::string& msg) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  std::string_view text_;
  std::size_t n_;
  int max_degree_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_polynomial(std::string_view text, std::size_t n, int max_degree) {
  return PolyParser(text, n, max_degree).parse();
}

}  // namespace volmom
