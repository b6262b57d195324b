#pragma once

#include <optional>
#include <string>
#include <vector>

#include "volmom/conic.hpp"
#include "volmom/moment_structures.hpp"
#include "volmom/reference_moments.hpp"

namespace volmom {

enum class Mode {
  /// Upper bounds on the integral of p over K (volume for p = 1).
  Upper,
  /// Lower bound on vol(K) as vol(B) minus an upper bound on vol({g1 <= 0} in B).
  ComplementLower,
  /// Integral of f against the measure whose moments on B are supplied.
  Integrate,
};

std::string to_string(Mode m);

/// K = {x in B : g_j(x) >= 0} together with how to relax it.
struct ProblemSpec {
  std::string name;
  std::size_t n = 1;
  std::vector<MultiPoly> constraints;
  BoundingSet bounding;
  /// p; constant 1 when left empty.
  MultiPoly objective;
  Mode mode = Mode::Upper;
  /// f in Integrate mode.
  MultiPoly integrand;
  /// Moments of w dx on B for Integrate mode; Lebesgue moments when absent.
  std::optional<MomentVector> weighted_moments;
  Basis basis = Basis::Monomial;
  /// Appends a^2 - ||x||^2 >= 0 as an extra localizing constraint.
  bool add_ball_constraint = true;
  /// Radius for the ball constraint; <= 0 selects bounding.enclosing_radius().
  double ball_radius = 0.0;

  /// The polynomial maximized in the current mode (p, f, or 1).
  MultiPoly effective_objective() const;
  /// Localizing polynomials in block order, ball last when enabled.
  std::vector<MultiPoly> localizers() const;
  /// Smallest admissible relaxation order d.
  int min_order() const;
  void validate() const;
};

enum class BlockRole { Moment, Slack, Localizing, Ball };

/// One instance of the degree-d SDP relaxation plus the bookkeeping needed to
/// read moments and certificates back out of a solver result.
struct Relaxation {
  conic::StandardConicProblem problem;
  std::size_t n = 1;
  int order = 0;
  Basis basis = Basis::Monomial;
  Mode mode = Mode::Upper;
  std::vector<BlockRole> roles;
  /// Localizing polynomial per block (constant 1 for Moment/Slack blocks).
  std::vector<MultiPoly> block_polynomials;
  std::vector<int> block_degrees;
  /// Objective in the relaxation basis.
  MultiPoly objective;
  /// Reference moments of degree 2d in the relaxation basis.
  MomentVector reference;
};

/// max L_{y1}(p) s.t. M_d(y1) >= 0, M_d(y2 - y1) >= 0, M_{d-r_j}(g_j y1) >= 0.
/// y2 may be given in either basis and must have degree >= 2d.
Relaxation build_qd(const ProblemSpec& spec, const MomentVector& y2, int d);
/// build_qd for the single-constraint complement {g1 <= 0}, objective 1.
Relaxation build_complement(const ProblemSpec& spec, const MomentVector& y2, int d);
/// build_qd with objective f and weighted reference moments.
Relaxation build_integrate(const ProblemSpec& spec, const MomentVector& y2, int d);
/// Dispatches on spec.mode.
Relaxation build_relaxation(const ProblemSpec& spec, const MomentVector& y2, int d);

/// Dual polynomials: h - p = sigma_0 + sum_j sigma_j g_j with SOS sigma_j.
struct Certificate {
  Basis basis = Basis::Monomial;
  MultiPoly h;
  MultiPoly sigma0;
  std::vector<MultiPoly> sigma;
  /// g_j matching sigma (ball constraint last when present).
  std::vector<MultiPoly> multipliers;
  MultiPoly objective;
  Eigen::MatrixXd gram_h;
  Eigen::MatrixXd gram_sigma0;
  std::vector<Eigen::MatrixXd> gram_sigma;
  /// ||coeffs(h - p - sigma0 - sum sigma_j g_j)||_inf, formed by polynomial
  /// multiplication rather than through the moment maps.
  double residual = 0.0;

  double relative_residual() const { return residual / (1.0 + h.coeff_norm_inf()); }
};

Certificate extract_certificate(const Relaxation& relax, const conic::SolveResult& result);

struct GridSample {
  std::vector<double> x;
  double h;
};
/// h on a regular grid over B (points outside a ball B are skipped).
std::vector<GridSample> certificate_grid(const Certificate& cert, const BoundingSet& b,
                                         int points_per_axis);

struct BoundReport {
  /// Relaxation order d; moments go up to degree 2d.
  int order = 0;
  /// Bound on the target: c^T y for Upper/Integrate, vol(B) - c^T y for the complement.
  double primal = 0.0;
  double dual = 0.0;
  double gap = 0.0;
  conic::SolveStatus status = conic::SolveStatus::NumericalLimit;
  double seconds = 0.0;
  int iterations = 0;
  /// Mass of the recovered measure on K (y1_0, or y2_0 - y1_0 for the complement).
  double volume_estimate = 0.0;
  /// Recovered moments of the measure on K in the power basis, degree 2d.
  MomentVector moments;
  std::optional<Certificate> certificate;
  /// Basis of the SDP actually handed to the solver.
  Basis solve_basis = Basis::Monomial;
  conic::Precision precision = conic::Precision::Double;
  /// Set when the solve raised instead of returning a status.
  std::string message;

  int moment_degree() const { return 2 * order; }
};

struct HierarchyOptions {
  conic::SolverOptions solver;
  bool extract_certificates = true;
  /// Solve power-basis relaxations in Chebyshev coordinates. Both describe the
  /// same feasible set; the Chebyshev form avoids Hankel ill-conditioning.
  /// Moments are still reported in the power basis.
  bool stabilize = true;
};

/// Reference moments y2 used by run_hierarchy, in spec.basis. Lebesgue moments
/// of [-1, 1]^n are formed in closed form in either basis.
MomentVector hierarchy_reference_moments(const ProblemSpec& spec, int degree);

/// The relaxation exactly as solve_relaxation hands it to the solver,
/// stabilization included.
Relaxation build_solver_relaxation(const ProblemSpec& spec, int d,
                                   const HierarchyOptions& opts = {});

BoundReport solve_relaxation(const ProblemSpec& spec, int d, const HierarchyOptions& opts = {});
std::vector<BoundReport> run_hierarchy(const ProblemSpec& spec, const std::vector<int>& orders,
                                       const HierarchyOptions& opts = {});

/// Recovered power-basis moments from the solver's y (basis of the relaxation).
MomentVector recovered_moments(const Relaxation& relax, const std::vector<double>& y);

}  // namespace volmom
