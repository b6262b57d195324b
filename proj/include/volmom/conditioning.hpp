#pragma once

#include <Eigen/Dense>

#include "volmom/moment_structures.hpp"
#include "volmom/multiprecision.hpp"

namespace volmom {

/// Lebesgue moment of the basis element b_a on [-1, 1]^n, in closed form:
/// 2/(k+1) (k even) per coordinate in the power basis, 2/(1-k^2) (k even) for T_k.
template <class Scalar>
Scalar unit_box_moment(const MultiIndex& a, Basis basis) {
  Scalar v(1);
  for (int k : a.exponents()) {
    if (k % 2 == 1) return Scalar(0);
    if (basis == Basis::Monomial)
      v *= Scalar(2) / Scalar(k + 1);
    else
      v *= Scalar(2) / Scalar(1 - k * k);
  }
  return v;
}

/// cond(M_d(y2)) for Lebesgue measure on [-1, 1]^n, assembled and
/// diagonalized in Scalar arithmetic.
template <class Scalar>
Scalar box_moment_matrix_condition(std::size_t n, int d, Basis basis) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const AffineMatrixMap map = moment_matrix_map(n, d, basis);
  Mat m = Mat::Zero(map.size, map.size);
  for (std::size_t r = 0; r < map.coefficients.size(); ++r) {
    if (map.coefficients[r].empty()) continue;
    const Scalar y = unit_box_moment<Scalar>(unrank(n, r), basis);
    for (const auto& e : map.coefficients[r]) {
      m(e.row, e.col) += y * Scalar(e.value);
      if (e.row != e.col) m(e.col, e.row) += y * Scalar(e.value);
    }
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  const auto ev = es.eigenvalues().cwiseAbs();
  return ev.maxCoeff() / ev.minCoeff();
}

}  // namespace volmom
