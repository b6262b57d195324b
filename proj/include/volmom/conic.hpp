#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "volmom/moment_structures.hpp"

namespace volmom::conic {

enum class ConeKind { PSD, Nonneg };

/// One conic constraint F0 + sum_i y_i F_i in K. Nonneg blocks are diagonal:
/// every entry has row == col and the cone is the nonnegative orthant.
struct Block {
  ConeKind kind = ConeKind::PSD;
  std::size_t size = 0;
  std::vector<SymEntry> constant;
  /// coefficients[i] holds F_i (upper triangle); may be shorter than the
  /// variable count, missing entries are zero.
  std::vector<std::vector<SymEntry>> coefficients;

  bool operator==(const Block& o) const;
};

/// maximize c^T y  subject to  F0_b + sum_i y_i F_{b,i} in K_b for every block b.
struct StandardConicProblem {
  std::size_t num_vars = 0;
  std::vector<double> objective;
  std::vector<Block> blocks;

  /// Throws Error on inconsistent dimensions or asymmetric placement. The
  /// variable limit (SolverOptions::max_vars) is enforced by solve().
  void validate() const;
  bool operator==(const StandardConicProblem& o) const;
};

/// Working precision of the interior-point iteration. Auto runs in double and
/// repeats the solve in double-double when double stalls. Quad (binary128) is
/// slower than double-double here and only used when asked for.
enum class Precision { Double, DoubleDouble, Quad, Auto };
std::string to_string(Precision p);

struct SolverOptions {
  int max_iter = 200;
  double tol_feas = 1e-8;
  double tol_gap = 1e-8;
  std::size_t max_vars = 10000;
  Precision precision = Precision::Auto;
  /// Largest variable count for which Auto attempts the extended-precision rerun.
  std::size_t extended_max_vars = 600;
  bool verbose = false;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, NumericalLimit };
std::string to_string(SolveStatus s);

struct SolveResult {
  SolveStatus status = SolveStatus::NumericalLimit;
  std::vector<double> y;
  /// Dual multiplier per block: s x s for PSD, k x 1 for Nonneg.
  std::vector<Eigen::MatrixXd> dual;
  /// Slack per block, same shapes as dual.
  std::vector<Eigen::MatrixXd> slack;
  /// c^T y (the maximization side).
  double primal_objective = 0.0;
  /// <F0, X> (the minimization side).
  double dual_objective = 0.0;
  int iterations = 0;
  /// Precision of the iteration that produced this result.
  Precision precision = Precision::Double;
  /// ||F(y) - S|| / (1 + ||F0||).
  double primal_infeasibility = 0.0;
  /// ||c + F^*(X)|| / (1 + ||c||).
  double dual_infeasibility = 0.0;
  /// |primal - dual| / (1 + |primal| + |dual|).
  double relative_gap = 0.0;
};

SolveResult solve(const StandardConicProblem& p, const SolverOptions& opts = {});

/// Evaluates F0_b + sum_i y_i F_{b,i} as a dense matrix (Nonneg: k x 1).
Eigen::MatrixXd block_value(const Block& b, const std::vector<double>& y);

/// SDPA sparse (.dat-s) text. SDPA minimizes, so the objective line holds -c and
/// the F0 records hold -F0; re-import undoes both.
std::string export_sdpa(const StandardConicProblem& p);
StandardConicProblem import_sdpa(std::istream& is);

/// Fixed-column MPS for problems made of Nonneg blocks only: free columns Y#,
/// one G row per cone coordinate, COST row holding -c (minimization).
std::string export_mps(const StandardConicProblem& p);
StandardConicProblem import_mps(std::istream& is);

}  // namespace volmom::conic
