#include "volmom/lp_hierarchy.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace volmom {

namespace {

/// Max of g over a regular grid of the box [-a, a]^n restricted to B.
double sampled_max(const MultiPoly& g, const BoundingSet& b, int per_axis) {
  const std::size_t n = b.n;
  int k = per_axis;
  while (k > 3 && std::pow(static_cast<double>(k), static_cast<double>(n)) > 1e6) k /= 2;
  std::vector<int> idx(n, 0);
  std::vector<double> x(n);
  double best = -std::numeric_limits<double>::infinity();
  while (true) {
    for (std::size_t i = 0; i < n; ++i) x[i] = -b.a + 2.0 * b.a * idx[i] / (k - 1);
    if (b.contains(x)) best = std::max(best, g.eval(x));
    std::size_t j = 0;
    while (j < n && ++idx[j] == k) idx[j++] = 0;
    if (j == n) break;
  }
  return best;
}

}  // namespace

ScaledConstraints scale_constraints(const std::vector<MultiPoly>& g, const BoundingSet& b,
                                    const ScaleOptions& opts) {
  ScaledConstraints out;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const MultiPoly p = convert(g[j], Basis::Monomial);
    double u = 0.0;
    for (const auto& [a, c] : p.terms()) u += std::abs(c) * std::pow(b.a, a.degree());
    if (u == 0.0) throw Error("constraint " + std::to_string(j + 1) + " is identically zero");
    const double smax = sampled_max(p, b, opts.samples_per_axis);
    if (smax < 0.0)
      throw Error("constraint " + std::to_string(j + 1) + " is negative on every sample of B");
    if (opts.tighten && smax > 0.0 && u > 10.0 * smax) u = 2.0 * smax;
    out.g.push_back(p * (1.0 / u));
    out.scale.push_back(u);
  }
  return out;
}

std::vector<std::pair<std::vector<int>, std::vector<int>>> product_exponents(std::size_t k,
                                                                              int cap) {
  std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
  if (k == 0) {
    out.emplace_back();
    return out;
  }
  for (const auto& gamma : index_set(2 * k, cap)) {
    const auto& e = gamma.exponents();
    out.emplace_back(std::vector<int>(e.begin(), e.begin() + k),
                     std::vector<int>(e.begin() + k, e.end()));
  }
  return out;
}

namespace {

std::vector<ProductTerm> expand_products(const std::vector<MultiPoly>& lo,
                                         const std::vector<MultiPoly>& hi, std::size_t n,
                                         int cap) {
  const std::size_t k = lo.size();
  // Power tables lo_j^e, hi_j^e for e <= cap.
  std::vector<std::vector<MultiPoly>> plo(k), phi(k);
  for (std::size_t j = 0; j < k; ++j) {
    plo[j].push_back(MultiPoly::constant(n, 1.0));
    phi[j].push_back(MultiPoly::constant(n, 1.0));
    for (int e = 1; e <= cap; ++e) {
      plo[j].push_back(multiply(plo[j].back(), lo[j]));
      phi[j].push_back(multiply(phi[j].back(), hi[j]));
    }
  }
  std::vector<ProductTerm> out;
  for (auto& [alpha, beta] : product_exponents(k, cap)) {
    MultiPoly p = MultiPoly::constant(n, 1.0);
    for (std::size_t j = 0; j < k; ++j) {
      if (alpha[j] > 0) p = multiply(p, plo[j][alpha[j]]);
      if (beta[j] > 0) p = multiply(p, phi[j][beta[j]]);
    }
    out.push_back({std::move(alpha), std::move(beta), std::move(p)});
  }
  return out;
}

}  // namespace

std::vector<ProductTerm> box_products(std::size_t n, double a, int cap) {
  std::vector<MultiPoly> lo, hi;
  for (std::size_t i = 0; i < n; ++i) {
    const MultiPoly xi = MultiPoly::variable(n, i) * (1.0 / a);
    lo.push_back(MultiPoly::constant(n, 1.0) + xi);
    hi.push_back(MultiPoly::constant(n, 1.0) - xi);
  }
  return expand_products(lo, hi, n, cap);
}

std::vector<ProductTerm> constraint_products(const std::vector<MultiPoly>& g, int cap) {
  if (g.empty()) return {};
  const std::size_t n = g.front().dimension();
  std::vector<MultiPoly> hi;
  for (const auto& gj : g) hi.push_back(MultiPoly::constant(n, 1.0) - gj);
  return expand_products(g, hi, n, cap);
}

int lp_moment_degree(const ProblemSpec& spec, int d) {
  int maxdeg = 1;
  for (const auto& g : spec.constraints) maxdeg = std::max(maxdeg, g.degree());
  return 2 * d * maxdeg;
}

LpRelaxation build_ld(const ProblemSpec& spec, const MomentVector& y2, int d, Basis coordinates,
                      const ScaleOptions& scale) {
  spec.validate();
  if (d < 1) throw Error("LP relaxation order must be at least 1");
  const int cap = 2 * d;
  const std::size_t m = spec.constraints.size();
  const int box_cap = lp_moment_degree(spec, d);
  const double rows_estimate = static_cast<double>(monomial_count(2 * spec.n, box_cap)) +
                               static_cast<double>(m ? monomial_count(2 * m, cap) : 0);
  if (rows_estimate > static_cast<double>(kMaxLpRows))
    throw Error("LP relaxation at d = " + std::to_string(d) + " needs " +
                std::to_string(static_cast<long long>(rows_estimate)) +
                " rows, above the limit of " + std::to_string(kMaxLpRows) + "; use a smaller d");

  LpRelaxation r;
  r.n = spec.n;
  r.order = d;
  r.basis = coordinates;
  r.moment_degree = lp_moment_degree(spec, d);
  if (y2.basis != Basis::Monomial) throw Error("LP relaxation needs power-basis moments");
  if (y2.degree < r.moment_degree)
    throw Error("reference moments have degree " + std::to_string(y2.degree) + ", need " +
                std::to_string(r.moment_degree));
  r.scaled = scale_constraints(spec.constraints, spec.bounding, scale);
  r.box_terms = box_products(spec.n, spec.bounding.a, box_cap);
  r.constraint_terms = constraint_products(r.scaled.g, cap);

  const std::size_t nv = monomial_count(spec.n, r.moment_degree);
  auto& prob = r.problem;
  prob.num_vars = nv;
  prob.objective.assign(nv, 0.0);
  prob.objective[0] = 1.0;
  conic::Block blk;
  blk.kind = conic::ConeKind::Nonneg;
  blk.size = r.box_terms.size() + r.constraint_terms.size();
  blk.coefficients.resize(nv);
  // Rows are divided by their coefficient 1-norm; the feasible set is unchanged.
  int row = 0;
  for (const auto& t : r.box_terms) {
    double c = 0.0;
    for (const auto& [a, v] : t.poly.terms()) c += v * y2[a];
    const MultiPoly q = convert(t.poly, coordinates);
    const double w = 1.0 / q.coeff_norm1();
    for (const auto& [a, v] : q.terms()) blk.coefficients[rank(a)].push_back({row, row, -v * w});
    if (c != 0.0) blk.constant.push_back({row, row, c * w});
    ++row;
  }
  for (const auto& t : r.constraint_terms) {
    const MultiPoly q = convert(t.poly, coordinates);
    const double w = 1.0 / q.coeff_norm1();
    for (const auto& [a, v] : q.terms()) blk.coefficients[rank(a)].push_back({row, row, v * w});
    ++row;
  }
  prob.blocks.push_back(std::move(blk));
  prob.validate();
  return r;
}

std::vector<BoundReport> run_lp_hierarchy(const ProblemSpec& spec, const std::vector<int>& orders,
                                          const conic::SolverOptions& opts, bool stabilize) {
  if (orders.empty()) return {};
  if (!std::is_sorted(orders.begin(), orders.end()))
    throw Error("run_lp_hierarchy: orders must be increasing");
  const MomentVector y2 = reference_moments(spec.bounding, lp_moment_degree(spec, orders.back()));
  std::vector<BoundReport> out;
  for (int d : orders) {
    BoundReport rep;
    rep.order = d;
    try {
      const LpRelaxation relax =
          build_ld(spec, y2, d, stabilize ? Basis::Chebyshev : Basis::Monomial);
      const auto t0 = std::chrono::steady_clock::now();
      const conic::SolveResult res = conic::solve(relax.problem, opts);
      rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      rep.status = res.status;
      rep.precision = res.precision;
      rep.iterations = res.iterations;
      rep.primal = res.primal_objective;
      rep.dual = res.dual_objective;
      rep.gap = std::abs(rep.primal - rep.dual);
      rep.solve_basis = relax.basis;
      rep.moments = MomentVector(spec.n, relax.moment_degree, relax.basis);
      rep.moments.values = res.y;
      if (relax.basis == Basis::Chebyshev) rep.moments = monomial_moments(rep.moments);
      rep.volume_estimate = rep.moments.mass();
    } catch (const Error& e) {
      rep.status = conic::SolveStatus::NumericalLimit;
      rep.message = e.what();
    }
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace volmom
