#pragma once

#include <vector>

#include "volmom/sdp_hierarchy.hpp"

namespace volmom {

struct ScaledConstraints {
  std::vector<MultiPoly> g;
  /// U_j with g_j / U_j <= 1 on B.
  std::vector<double> scale;
};

struct ScaleOptions {
  /// Replace the coefficient bound by twice the sampled maximum when it is
  /// more than 10x looser. The sampled maximum is not a certified bound, so
  /// this is off unless asked for.
  bool tighten = false;
  int samples_per_axis = 101;
};

/// Divides each g_j by U_j = sum |c_a| a^|a| >= sup_B g_j (B within [-a, a]^n).
ScaledConstraints scale_constraints(const std::vector<MultiPoly>& g, const BoundingSet& b,
                                    const ScaleOptions& opts = {});

/// g^alpha (1 - g)^beta over a constraint list, or prod_i (1 + x_i/a)^alpha_i
/// (1 - x_i/a)^beta_i for the box containing B.
struct ProductTerm {
  std::vector<int> alpha;
  std::vector<int> beta;
  MultiPoly poly;
};

/// All (alpha, beta) in N^k x N^k with |alpha| + |beta| <= cap.
std::vector<std::pair<std::vector<int>, std::vector<int>>> product_exponents(std::size_t k,
                                                                              int cap);
std::vector<ProductTerm> box_products(std::size_t n, double a, int cap);
std::vector<ProductTerm> constraint_products(const std::vector<MultiPoly>& g, int cap);

struct LpRelaxation {
  conic::StandardConicProblem problem;
  std::size_t n = 1;
  int order = 0;
  /// Basis of the decision moments; rows are the same functionals either way.
  Basis basis = Basis::Monomial;
  /// Highest moment degree among the decision variables.
  int moment_degree = 0;
  std::vector<ProductTerm> box_terms;
  std::vector<ProductTerm> constraint_terms;
  ScaledConstraints scaled;
};

inline constexpr std::size_t kMaxLpRows = 1'000'000;

/// max y1_0 s.t. L_{y1}(g^alpha (1-g)^beta) >= 0 for |alpha| + |beta| <= 2d and
/// L_{y2 - y1}(box products) >= 0 for |alpha| + |beta| <= D, where D is the
/// highest expanded constraint-product degree. Running the box products up to D
/// keeps every decision moment bounded. y2 is power-basis with degree >= D.
LpRelaxation build_ld(const ProblemSpec& spec, const MomentVector& y2, int d,
                      Basis coordinates = Basis::Monomial, const ScaleOptions& scale = {});
int lp_moment_degree(const ProblemSpec& spec, int d);

/// `stabilize` solves in Chebyshev moment coordinates; moments are reported in
/// the power basis either way.
std::vector<BoundReport> run_lp_hierarchy(const ProblemSpec& spec, const std::vector<int>& orders,
                                          const conic::SolverOptions& opts = {},
                                          bool stabilize = true);

}  // namespace volmom
