#include <cmath>
#include <random>

#include "doctest.h"
#include "volmom/polynomial.hpp"

using namespace volmom;

namespace {

MultiPoly random_poly(std::mt19937_64& gen, std::size_t n, int deg, Basis basis) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  MultiPoly p(n, basis);
  for (const auto& a : index_set(n, deg))
    if (u(gen) > -0.3) p.add_term(a, u(gen));
  return p;
}

std::vector<double> random_point(std::mt19937_64& gen, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = u(gen);
  return x;
}

}  // namespace

TEST_CASE("index set sizes") {
  const auto one = index_set(1, 3);
  REQUIRE(one.size() == 4);
  for (int k = 0; k < 4; ++k) CHECK(one[k][0] == k);
  CHECK(index_set(2, 20).size() == 231);
  CHECK(index_set(3, 2).size() == 10);
  CHECK(monomial_count(2, 20) == 231);
  CHECK(monomial_count(4, 6) == 210);
}

TEST_CASE("graded-lex order") {
  const auto idx = index_set(2, 2);
  const std::vector<MultiIndex> want = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  REQUIRE(idx.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(idx[i] == want[i]);
}

TEST_CASE("rank and unrank are mutual inverses") {
  for (std::size_t n = 1; n <= 3; ++n)
    for (int d = 0; d <= 6; ++d) {
      const auto idx = index_set(n, d);
      for (std::size_t r = 0; r < idx.size(); ++r) {
        CHECK(rank(idx[r]) == r);
        CHECK(unrank(n, r) == idx[r]);
      }
    }
}

TEST_CASE("products") {
  const MultiPoly x1 = MultiPoly::variable(2, 0);
  const MultiPoly x1x2 = MultiPoly::term({1, 1}, 1.0);
  const MultiPoly p = multiply(x1, x1x2);
  CHECK(p.terms().size() == 1);
  CHECK(p.coefficient({2, 1}) == 1.0);

  const MultiPoly t1 = MultiPoly::term({1}, 1.0, Basis::Chebyshev);
  const MultiPoly t2 = MultiPoly::term({2}, 1.0, Basis::Chebyshev);
  const MultiPoly t11 = multiply(t1, t1);
  CHECK(t11.coefficient({2}) == doctest::Approx(0.5));
  CHECK(t11.coefficient({0}) == doctest::Approx(0.5));
  CHECK(t11.terms().size() == 2);
  const MultiPoly t12 = multiply(t1, t2);
  CHECK(t12.coefficient({3}) == doctest::Approx(0.5));
  CHECK(t12.coefficient({1}) == doctest::Approx(0.5));
  CHECK(t12.terms().size() == 2);
}

TEST_CASE("basis conversion examples") {
  const MultiPoly x2 = MultiPoly::term({2}, 1.0);
  const MultiPoly c = convert(x2, Basis::Chebyshev);
  CHECK(c.basis() == Basis::Chebyshev);
  CHECK(c.coefficient({0}) == doctest::Approx(0.5));
  CHECK(c.coefficient({2}) == doctest::Approx(0.5));
  CHECK(c.terms().size() == 2);

  const MultiPoly t3 = convert(MultiPoly::term({3}, 1.0, Basis::Chebyshev), Basis::Monomial);
  CHECK(t3.coefficient({3}) == doctest::Approx(4.0));
  CHECK(t3.coefficient({1}) == doctest::Approx(-3.0));
  CHECK(t3.terms().size() == 2);

  const MultiPoly one = convert(MultiPoly::constant(1, 1.0), Basis::Chebyshev);
  CHECK(one.terms().size() == 1);
  CHECK(one.coefficient({0}) == 1.0);
}

TEST_CASE("evaluation") {
  const MultiPoly g = parse_polynomial("0.5*x1 - x1^2", 1);
  const double q[] = {0.25};
  CHECK(g.eval(q) == doctest::Approx(1.0 / 16.0));
  const MultiPoly t2 = MultiPoly::term({2}, 1.0, Basis::Chebyshev);
  const double z[] = {0.0};
  CHECK(t2.eval(z) == doctest::Approx(-1.0));
  const MultiPoly bean = parse_polynomial("x1^3 + x1*x2^2 - x1^4 - x1^2*x2^2 - x2^4", 2);
  const double o[] = {0.0, 0.0};
  CHECK(bean.eval(o) == 0.0);
  CHECK(bean.degree() == 4);
}

TEST_CASE("no explicit zeros are stored") {
  MultiPoly p(1, Basis::Monomial);
  p.add_term({2}, 1.5);
  p.add_term({2}, -1.5);
  CHECK(p.is_zero());
  CHECK(p.degree() == -1);
  const MultiPoly q = parse_polynomial("x1^2 + x1 - x1^2", 1);
  CHECK(q.terms().size() == 1);
  CHECK(q.degree() == 1);
}

TEST_CASE("property: product linearization matches pointwise products") {
  std::mt19937_64 gen(11);
  for (Basis basis : {Basis::Monomial, Basis::Chebyshev})
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 1 + trial % 3;
      const MultiPoly a = random_poly(gen, n, 1 + trial % 4, basis);
      const MultiPoly b = random_poly(gen, n, 1 + (trial / 3) % 4, basis);
      const MultiPoly ab = multiply(a, b);
      const double tol = 1e-9 * (1.0 + a.coeff_norm1() * b.coeff_norm1());
      for (int k = 0; k < 50; ++k) {
        const auto x = random_point(gen, n);
        REQUIRE(std::abs(ab.eval(x) - a.eval(x) * b.eval(x)) <= tol);
      }
    }
}

TEST_CASE("property: basis conversion preserves evaluation") {
  std::mt19937_64 gen(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const Basis from = trial % 2 ? Basis::Chebyshev : Basis::Monomial;
    const Basis to = trial % 2 ? Basis::Monomial : Basis::Chebyshev;
    const MultiPoly p = random_poly(gen, n, 2 + trial % 7, from);
    const MultiPoly q = convert(p, to);
    const MultiPoly back = convert(q, from);
    for (int k = 0; k < 30; ++k) {
      const auto x = random_point(gen, n);
      REQUIRE(std::abs(p.eval(x) - q.eval(x)) <= 1e-10 * (1.0 + p.coeff_norm1()));
      REQUIRE(std::abs(p.eval(x) - back.eval(x)) <= 1e-10 * (1.0 + p.coeff_norm1()));
    }
  }
}

TEST_CASE("basis vector agrees with evaluation of each element") {
  const double x[] = {0.3, -0.7};
  for (Basis basis : {Basis::Monomial, Basis::Chebyshev}) {
    const auto v = basis_vector(x, 4, basis);
    const auto idx = index_set(2, 4);
    REQUIRE(v.size() == idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r)
      CHECK(v[r] == doctest::Approx(MultiPoly::term(idx[r], 1.0, basis).eval(x)).epsilon(1e-14));
  }
}

TEST_CASE("parser accepts the documented grammar") {
  const MultiPoly p = parse_polynomial("3*x1^2*x2 - 2.5*x2 + 1/4", 2);
  CHECK(p.coefficient({2, 1}) == 3.0);
  CHECK(p.coefficient({0, 1}) == -2.5);
  CHECK(p.coefficient({0, 0}) == 0.25);

  const MultiPoly f = parse_polynomial("-(x1^2 + x2^2)^3 + 4*x1^2*x2^2", 2);
  CHECK(f.degree() == 6);
  CHECK(f.coefficient({6, 0}) == -1.0);
  CHECK(f.coefficient({4, 2}) == -3.0);
  CHECK(f.coefficient({2, 2}) == 4.0);

  const MultiPoly g = parse_polynomial("x1*(1/2 - x1)", 1);
  CHECK(g.coefficient({1}) == 0.5);
  CHECK(g.coefficient({2}) == -1.0);

  CHECK(parse_polynomial("1e-3*x1", 1).coefficient({1}) == 1e-3);
  CHECK(parse_polynomial("  x1  ", 1).coefficient({1}) == 1.0);
}

TEST_CASE("parser errors carry positions") {
  auto column_of = [](const char* text, std::size_t n) -> std::size_t {
    try {
      parse_polynomial(text, n);
    } catch (const ParseError& e) {
      return e.column();
    }
    return 0;
  };
  CHECK_THROWS_AS(parse_polynomial("x1^-1", 1), ParseError);
  CHECK(column_of("x1^-1", 1) == 4);
  CHECK_THROWS_AS(parse_polynomial("x3", 2), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x1 +", 1), ParseError);
  CHECK_THROWS_AS(parse_polynomial("(x1", 1), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x1)", 1), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x1 x1", 1), ParseError);
  CHECK_THROWS_AS(parse_polynomial("", 1), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x1^300", 1), ParseError);
  CHECK_THROWS_AS(parse_polynomial("(x1 + 1)^20^20", 1), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x0", 1), ParseError);
}
