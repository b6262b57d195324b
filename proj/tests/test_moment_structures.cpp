#include <random>

#include "doctest.h"
#include "volmom/conditioning.hpp"
#include "volmom/moment_structures.hpp"
#include "volmom/multiprecision.hpp"
#include "volmom/quadrature.hpp"
#include "volmom/reference_moments.hpp"

using namespace volmom;

namespace {

// Moments of Lebesgue measure on [lo, hi] in the power basis.
MomentVector interval_moments(double lo, double hi, int degree) {
  MomentVector y(1, degree, Basis::Monomial);
  for (int k = 0; k <= degree; ++k)
    y.values[k] = (std::pow(hi, k + 1) - std::pow(lo, k + 1)) / (k + 1);
  return y;
}

}  // namespace

TEST_CASE("moment matrix examples") {
  MomentVector y(1, 2, Basis::Monomial);
  y.values = {3.0, 5.0, 7.0};
  const Eigen::MatrixXd m = moment_matrix_map(1, 1, Basis::Monomial).instantiate(y);
  CHECK(m(0, 0) == 3.0);
  CHECK(m(0, 1) == 5.0);
  CHECK(m(1, 0) == 5.0);
  CHECK(m(1, 1) == 7.0);

  const Eigen::MatrixXd l = moment_matrix_map(1, 2, Basis::Monomial).instantiate(box_moments(1, 4));
  Eigen::Matrix3d want;
  want << 2, 0, 2.0 / 3, 0, 2.0 / 3, 0, 2.0 / 3, 0, 2.0 / 5;
  CHECK((l - want).cwiseAbs().maxCoeff() < 1e-15);

  const MomentVector c = chebyshev_moments(box_moments(1, 2));
  const Eigen::MatrixXd mc = moment_matrix_map(1, 1, Basis::Chebyshev).instantiate(c);
  CHECK(mc(1, 1) == doctest::Approx(2.0 / 3));
}

TEST_CASE("Hankel structure in the power basis") {
  const auto map = moment_matrix_map(1, 6, Basis::Monomial);
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-1, 1);
  MomentVector y(1, 12, Basis::Monomial);
  for (auto& v : y.values) v = u(gen);
  const Eigen::MatrixXd m = map.instantiate(y);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) CHECK(m(i, j) == y.values[i + j]);
  for (std::size_t r = 0; r < map.coefficients.size(); ++r) {
    const Eigen::MatrixXd a = map.coefficient_matrix(r);
    CHECK((a - a.transpose()).cwiseAbs().maxCoeff() == 0.0);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) CHECK(a(i, j) == (i + j == static_cast<int>(r) ? 1.0 : 0.0));
  }
}

TEST_CASE("localizing matrix examples") {
  const MultiPoly g = parse_polynomial("0.5*x1 - x1^2", 1);
  MomentVector y(1, 2, Basis::Monomial);
  y.values = {1.0, 0.3, 0.2};
  const Eigen::MatrixXd m = localizing_matrix_map(g, 1, 0, Basis::Monomial).instantiate(y);
  REQUIRE(m.rows() == 1);
  CHECK(m(0, 0) == doctest::Approx(0.5 * 0.3 - 0.2));
  const Eigen::MatrixXd leb = localizing_matrix_map(g, 1, 0, Basis::Monomial).instantiate(box_moments(1, 2));
  CHECK(leb(0, 0) == doctest::Approx(-2.0 / 3));

  const auto lm = localizing_matrix_map(MultiPoly::constant(2, 1.0), 2, 3, Basis::Monomial);
  const auto mm = moment_matrix_map(2, 3, Basis::Monomial);
  const MomentVector b = box_moments(2, 6);
  CHECK((lm.instantiate(b) - mm.instantiate(b)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("dominance check") {
  // The g_j describe B; they localize y2 - y1.
  const std::vector<MultiPoly> b = {parse_polynomial("1 - x1^2", 1)};
  const MomentVector y2 = box_moments(1, 8);
  CHECK(dominance_check(interval_moments(0.0, 0.5, 8), y2, b, 4).dominated);
  CHECK_FALSE(dominance_check(y2 * 2.0, y2, b, 4).dominated);
  CHECK(dominance_check(y2, y2, b, 4).dominated);
  CHECK(dominance_check(y2, y2, {}, 4).dominated);
  // Lebesgue on [-1, 1] minus Lebesgue on [0, 1/2] is not carried by {x (1/2 - x) >= 0}.
  const std::vector<MultiPoly> k = {parse_polynomial("0.5*x1 - x1^2", 1)};
  const DominanceReport r = dominance_check(interval_moments(0.0, 0.5, 8), y2, k, 4);
  CHECK_FALSE(r.dominated);
  CHECK(r.min_eig_localizing.size() == 1);
  CHECK(r.min_eig_moment >= -r.tolerance);
}

TEST_CASE("property: discretized measures give PSD moment and localizing matrices") {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const MultiPoly g = parse_polynomial("x1^3 + x1*x2^2 - x1^4 - x1^2*x2^2 - x2^4", 2);
  for (int trial = 0; trial < 20; ++trial) {
    MomentVector y(2, 8, Basis::Monomial);
    double mass = 0.0;
    for (int k = 0; k < 60; ++k) {
      const double x[] = {2 * u(gen) - 1, 2 * u(gen) - 1};
      if (g.eval(x) < 0) continue;
      const double w = u(gen);
      mass += w;
      for (const auto& a : index_set(2, 8))
        y[a] += w * std::pow(x[0], a[0]) * std::pow(x[1], a[1]);
    }
    for (Basis basis : {Basis::Monomial, Basis::Chebyshev}) {
      const MomentVector yb = basis == Basis::Monomial ? y : chebyshev_moments(y);
      const Eigen::MatrixXd m = moment_matrix_map(2, 4, basis).instantiate(yb);
      CHECK(min_eigenvalue(m) >= -1e-8 * (1 + mass));
      const Eigen::MatrixXd l = localizing_matrix_map(convert(g, basis), 2, 2, basis).instantiate(yb);
      CHECK(min_eigenvalue(l) >= -1e-8 * (1 + mass));
    }
  }
}

TEST_CASE("conditioning grows in the power basis and beats Chebyshev") {
  HighPrecision prev = 0;
  for (int d = 2; d <= 14; ++d) {
    const HighPrecision mono = box_moment_matrix_condition<HighPrecision>(1, d, Basis::Monomial);
    const HighPrecision cheb = box_moment_matrix_condition<HighPrecision>(1, d, Basis::Chebyshev);
    CHECK(mono > prev);
    if (d >= 10) CHECK(mono > cheb);
    prev = mono;
  }
  const double c6 = condition_number(moment_matrix_map(1, 6, Basis::Monomial).instantiate(box_moments(1, 12)));
  CHECK(static_cast<double>(box_moment_matrix_condition<HighPrecision>(1, 6, Basis::Monomial)) ==
        doctest::Approx(c6).epsilon(1e-6));
}
