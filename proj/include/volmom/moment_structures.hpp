#pragma once

#include <Eigen/Dense>
#include <vector>

#include "volmom/polynomial.hpp"
#include "volmom/reference_moments.hpp"

namespace volmom {

/// Upper-triangle entry of a symmetric coefficient matrix (row <= col).
struct SymEntry {
  int row;
  int col;
  double value;
};

/// M(y) = sum_a y_a A_a with sparse symmetric A_a, indexed by moment rank.
struct AffineMatrixMap {
  std::size_t n = 1;
  std::size_t size = 0;
  Basis basis = Basis::Monomial;
  /// Highest moment degree referenced by any A_a.
  int moment_degree = 0;
  /// coefficients[rank(a)] holds the nonzeros of A_a.
  std::vector<std::vector<SymEntry>> coefficients;

  Eigen::MatrixXd instantiate(const MomentVector& y) const;
  /// Dense A_a for inspection and tests.
  Eigen::MatrixXd coefficient_matrix(std::size_t moment_rank) const;
};

/// M_d(y)(a, b) = L_y(b_a b_b) over index_set(n, d).
AffineMatrixMap moment_matrix_map(std::size_t n, int d, Basis basis);

/// M_d(g y)(a, b) = L_y(g b_a b_b); g is re-expressed in `basis` first.
/// `d` is the block degree, so the block has monomial_count(n, d) rows.
AffineMatrixMap localizing_matrix_map(const MultiPoly& g, std::size_t n, int d, Basis basis);

double min_eigenvalue(const Eigen::MatrixXd& m);
/// Ratio of extreme absolute eigenvalues of a symmetric matrix.
double condition_number(const Eigen::MatrixXd& m);

struct DominanceReport {
  bool dominated = false;
  double tolerance = 0.0;
  double min_eig_moment = 0.0;
  std::vector<double> min_eig_localizing;
};

/// Moment-level test of mu1 <= mu2: M_d(y2 - y1) and M_{d - r_j}(g_j (y2 - y1))
/// PSD up to 1e-8 * mass(y2).
DominanceReport dominance_check(const MomentVector& y1, const MomentVector& y2,
                                const std::vector<MultiPoly>& g, int d);

}  // namespace volmom
