#include "volmom/sdp_hierarchy.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>

#include "volmom/conditioning.hpp"

namespace volmom {

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Upper: return "upper";
    case Mode::ComplementLower: return "lower";
    case Mode::Integrate: return "integrate";
  }
  return "unknown";
}

namespace {

int half_degree(const MultiPoly& g) { return std::max(0, (g.degree() + 1) / 2); }

MultiPoly ball_polynomial(std::size_t n, double radius) {
  MultiPoly b = MultiPoly::constant(n, radius * radius);
  for (std::size_t i = 0; i < n; ++i) {
    MultiIndex a(n);
    a[i] = 2;
    b.add_term(a, -1.0);
  }
  return b;
}

conic::Block block_from_map(const AffineMatrixMap& map, std::size_t num_vars, double sign,
                            const MomentVector* constant_from) {
  conic::Block blk;
  blk.kind = conic::ConeKind::PSD;
  blk.size = map.size;
  blk.coefficients.resize(std::min(num_vars, map.coefficients.size()));
  for (std::size_t r = 0; r < blk.coefficients.size(); ++r)
    for (const auto& e : map.coefficients[r])
      blk.coefficients[r].push_back({e.row, e.col, sign * e.value});
  if (constant_from) {
    std::map<std::pair<int, int>, double> acc;
    for (std::size_t r = 0; r < map.coefficients.size(); ++r) {
      const double y = constant_from->values.at(r);
      if (y == 0.0) continue;
      for (const auto& e : map.coefficients[r]) acc[{e.row, e.col}] += y * e.value;
    }
    for (const auto& [rc, v] : acc)
      if (v != 0.0) blk.constant.push_back({rc.first, rc.second, v});
  }
  return blk;
}

MomentVector to_basis(const MomentVector& y, Basis basis) {
  if (y.basis == basis) return y;
  return basis == Basis::Chebyshev ? chebyshev_moments(y) : monomial_moments(y);
}

/// v_d(x)^T G v_d(x) expanded with exact basis products.
MultiPoly gram_polynomial(const Eigen::MatrixXd& g, std::size_t n, int d, Basis basis) {
  const auto idx = index_set(n, d);
  if (static_cast<std::size_t>(g.rows()) != idx.size() || g.rows() != g.cols())
    throw Error("certificate: Gram matrix size mismatch");
  MultiPoly p(n, basis);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i; j < idx.size(); ++j) {
      const double w = (i == j ? 1.0 : 2.0) * 0.5 * (g(i, j) + g(j, i));
      if (w == 0.0) continue;
      for (const auto& [c, v] : basis_product(idx[i], idx[j], basis)) p.add_term(c, w * v);
    }
  return p;
}

}  // namespace

MultiPoly ProblemSpec::effective_objective() const {
  switch (mode) {
    case Mode::ComplementLower: return MultiPoly::constant(n, 1.0);
    case Mode::Integrate:
      if (integrand.dimension() == 0) throw Error("integrate mode requires an integrand f");
      return integrand;
    case Mode::Upper:
      if (objective.dimension() == 0) return MultiPoly::constant(n, 1.0);
      return objective;
  }
  return MultiPoly::constant(n, 1.0);
}

std::vector<MultiPoly> ProblemSpec::localizers() const {
  std::vector<MultiPoly> out;
  if (mode == Mode::ComplementLower) {
    if (constraints.size() != 1)
      throw Error("complement lower bound supports exactly one constraint, got " +
                  std::to_string(constraints.size()));
    out.push_back(-convert(constraints[0], Basis::Monomial));
  } else {
    for (const auto& g : constraints) out.push_back(convert(g, Basis::Monomial));
  }
  if (add_ball_constraint)
    out.push_back(ball_polynomial(n, ball_radius > 0 ? ball_radius : bounding.enclosing_radius()));
  return out;
}

int ProblemSpec::min_order() const {
  int d = std::max(1, half_degree(effective_objective()));
  for (const auto& g : localizers()) d = std::max(d, half_degree(g));
  return d;
}

void ProblemSpec::validate() const {
  if (n == 0) throw Error("problem dimension must be positive");
  if (bounding.n != n) throw Error("bounding set dimension does not match n");
  if (!(bounding.a > 0) || !std::isfinite(bounding.a))
    throw Error("bounding set size must be positive and finite");
  for (const auto& g : constraints)
    if (g.dimension() != n) throw Error("constraint dimension does not match n");
  if (mode == Mode::Upper && objective.dimension() != 0 && objective.dimension() != n)
    throw Error("objective dimension does not match n");
  if (mode == Mode::Integrate && integrand.dimension() != n)
    throw Error("integrate mode requires an integrand f in n variables");
  if (weighted_moments && weighted_moments->n != n)
    throw Error("weighted moments dimension does not match n");
}

Relaxation build_qd(const ProblemSpec& spec, const MomentVector& y2, int d) {
  spec.validate();
  const int dmin = spec.min_order();
  if (d < dmin)
    throw Error("relaxation order " + std::to_string(d) + " too low; minimum d is " +
                std::to_string(dmin));
  if (y2.n != spec.n) throw Error("reference moments dimension does not match n");
  if (y2.degree < 2 * d)
    throw Error("reference moments have degree " + std::to_string(y2.degree) +
                ", need at least " + std::to_string(2 * d));

  Relaxation r;
  r.n = spec.n;
  r.order = d;
  r.basis = spec.basis;
  r.mode = spec.mode;
  r.reference = to_basis(y2.truncated(2 * d), spec.basis);
  r.objective = convert(spec.effective_objective(), spec.basis);

  const std::size_t nv = monomial_count(spec.n, 2 * d);
  auto& prob = r.problem;
  prob.num_vars = nv;
  prob.objective.assign(nv, 0.0);
  for (const auto& [a, c] : r.objective.terms()) prob.objective[rank(a)] += c;

  const auto mm = moment_matrix_map(spec.n, d, spec.basis);
  prob.blocks.push_back(block_from_map(mm, nv, 1.0, nullptr));
  r.roles.push_back(BlockRole::Moment);
  r.block_polynomials.push_back(MultiPoly::constant(spec.n, 1.0, spec.basis));
  r.block_degrees.push_back(d);

  prob.blocks.push_back(block_from_map(mm, nv, -1.0, &r.reference));
  r.roles.push_back(BlockRole::Slack);
  r.block_polynomials.push_back(MultiPoly::constant(spec.n, 1.0, spec.basis));
  r.block_degrees.push_back(d);

  const auto locs = spec.localizers();
  for (std::size_t j = 0; j < locs.size(); ++j) {
    const int bd = d - half_degree(locs[j]);
    const auto lm = localizing_matrix_map(locs[j], spec.n, bd, spec.basis);
    prob.blocks.push_back(block_from_map(lm, nv, 1.0, nullptr));
    const bool ball = spec.add_ball_constraint && j + 1 == locs.size();
    r.roles.push_back(ball ? BlockRole::Ball : BlockRole::Localizing);
    r.block_polynomials.push_back(convert(locs[j], spec.basis));
    r.block_degrees.push_back(bd);
  }
  prob.validate();
  return r;
}

Relaxation build_complement(const ProblemSpec& spec, const MomentVector& y2, int d) {
  ProblemSpec s = spec;
  s.mode = Mode::ComplementLower;
  return build_qd(s, y2, d);
}

Relaxation build_integrate(const ProblemSpec& spec, const MomentVector& y2, int d) {
  ProblemSpec s = spec;
  s.mode = Mode::Integrate;
  if (s.integrand.dimension() == 0) throw Error("integrate mode requires an integrand f");
  if (s.integrand.degree() > 2 * d)
    throw Error("integrand degree " + std::to_string(s.integrand.degree()) + " exceeds 2d = " +
                std::to_string(2 * d));
  return build_qd(s, y2, d);
}

Relaxation build_relaxation(const ProblemSpec& spec, const MomentVector& y2, int d) {
  switch (spec.mode) {
    case Mode::ComplementLower: return build_complement(spec, y2, d);
    case Mode::Integrate: return build_integrate(spec, y2, d);
    case Mode::Upper: break;
  }
  return build_qd(spec, y2, d);
}

Certificate extract_certificate(const Relaxation& relax, const conic::SolveResult& result) {
  if (result.dual.size() != relax.problem.blocks.size())
    throw Error("certificate: expected " + std::to_string(relax.problem.blocks.size()) +
                " dual blocks, got " + std::to_string(result.dual.size()));
  for (std::size_t b = 0; b < result.dual.size(); ++b)
    if (static_cast<std::size_t>(result.dual[b].rows()) != relax.problem.blocks[b].size)
      throw Error("certificate: dual block " + std::to_string(b) + " has wrong size");

  Certificate c;
  c.basis = relax.basis;
  c.objective = relax.objective;
  MultiPoly rhs = MultiPoly(relax.n, relax.basis);
  for (std::size_t b = 0; b < relax.roles.size(); ++b) {
    const MultiPoly q = gram_polynomial(result.dual[b], relax.n, relax.block_degrees[b], relax.basis);
    switch (relax.roles[b]) {
      case BlockRole::Slack:
        c.h = q;
        c.gram_h = result.dual[b];
        break;
      case BlockRole::Moment:
        c.sigma0 = q;
        c.gram_sigma0 = result.dual[b];
        rhs += q;
        break;
      case BlockRole::Localizing:
      case BlockRole::Ball:
        c.sigma.push_back(q);
        c.multipliers.push_back(relax.block_polynomials[b]);
        c.gram_sigma.push_back(result.dual[b]);
        rhs += multiply(q, relax.block_polynomials[b]);
        break;
    }
  }
  const MultiPoly diff = c.h - c.objective - rhs;
  c.residual = diff.coeff_norm_inf();
  return c;
}

std::vector<GridSample> certificate_grid(const Certificate& cert, const BoundingSet& b,
                                         int points_per_axis) {
  if (points_per_axis < 2) throw Error("certificate grid needs at least 2 points per axis");
  std::vector<GridSample> out;
  std::vector<int> idx(b.n, 0);
  std::vector<double> x(b.n);
  while (true) {
    for (std::size_t i = 0; i < b.n; ++i)
      x[i] = -b.a + 2.0 * b.a * idx[i] / (points_per_axis - 1);
    if (b.contains(x)) out.push_back({x, cert.h.eval(x)});
    std::size_t k = 0;
    while (k < b.n && ++idx[k] == points_per_axis) idx[k++] = 0;
    if (k == b.n) break;
  }
  return out;
}

MomentVector hierarchy_reference_moments(const ProblemSpec& spec, int degree) {
  if (spec.mode == Mode::Integrate && spec.weighted_moments) {
    const MomentVector& w = *spec.weighted_moments;
    if (w.degree < degree)
      throw Error("weighted moments have degree " + std::to_string(w.degree) + ", need " +
                  std::to_string(degree));
    return to_basis(w.truncated(degree), spec.basis);
  }
  const BoundingSet& b = spec.bounding;
  if (spec.basis == Basis::Chebyshev && b.kind == BoundingSet::Kind::Box && b.a == 1.0) {
    MomentVector y(spec.n, degree, Basis::Chebyshev);
    const auto idx = index_set(spec.n, degree);
    for (std::size_t r = 0; r < idx.size(); ++r)
      y.values[r] = unit_box_moment<double>(idx[r], Basis::Chebyshev);
    return y;
  }
  return to_basis(reference_moments(b, degree), spec.basis);
}

MomentVector recovered_moments(const Relaxation& relax, const std::vector<double>& y) {
  MomentVector m(relax.n, 2 * relax.order, relax.basis);
  if (y.size() != m.values.size()) throw Error("recovered moments: length mismatch");
  m.values = y;
  if (relax.mode == Mode::ComplementLower) m = relax.reference - m;
  return relax.basis == Basis::Monomial ? m : monomial_moments(m);
}

namespace {

BoundReport solve_built(const ProblemSpec& spec, const Relaxation& relax,
                        const HierarchyOptions& opts) {
  BoundReport rep;
  rep.order = relax.order;
  const auto t0 = std::chrono::steady_clock::now();
  const conic::SolveResult res = conic::solve(relax.problem, opts.solver);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  rep.status = res.status;
  rep.solve_basis = relax.basis;
  rep.precision = res.precision;
  rep.iterations = res.iterations;
  rep.primal = res.primal_objective;
  rep.dual = res.dual_objective;
  if (spec.mode == Mode::ComplementLower) {
    const double total = relax.reference.mass();
    rep.primal = total - rep.primal;
    rep.dual = total - rep.dual;
  }
  rep.gap = std::abs(rep.primal - rep.dual);
  if (!res.y.empty()) {
    rep.moments = recovered_moments(relax, res.y);
    rep.volume_estimate = rep.moments.mass();
  }
  if (opts.extract_certificates && res.dual.size() == relax.problem.blocks.size())
    rep.certificate = extract_certificate(relax, res);
  return rep;
}

ProblemSpec solve_spec(const ProblemSpec& spec, const HierarchyOptions& opts) {
  ProblemSpec s = spec;
  if (opts.stabilize) s.basis = Basis::Chebyshev;
  return s;
}

}  // namespace

Relaxation build_solver_relaxation(const ProblemSpec& spec, int d, const HierarchyOptions& opts) {
  const ProblemSpec s = solve_spec(spec, opts);
  return build_relaxation(s, hierarchy_reference_moments(s, 2 * d), d);
}

BoundReport solve_relaxation(const ProblemSpec& spec, int d, const HierarchyOptions& opts) {
  const ProblemSpec s = solve_spec(spec, opts);
  const MomentVector y2 = hierarchy_reference_moments(s, 2 * d);
  return solve_built(s, build_relaxation(s, y2, d), opts);
}

std::vector<BoundReport> run_hierarchy(const ProblemSpec& spec, const std::vector<int>& orders,
                                       const HierarchyOptions& opts) {
  if (orders.empty()) return {};
  if (!std::is_sorted(orders.begin(), orders.end()))
    throw Error("run_hierarchy: orders must be increasing");
  const ProblemSpec s = solve_spec(spec, opts);
  const MomentVector y2 = hierarchy_reference_moments(s, 2 * orders.back());
  std::vector<BoundReport> out;
  for (int d : orders) {
    const Relaxation relax = build_relaxation(s, y2, d);
    BoundReport rep;
    try {
      rep = solve_built(s, relax, opts);
    } catch (const Error& e) {
      rep.order = d;
      rep.solve_basis = s.basis;
      rep.status = conic::SolveStatus::NumericalLimit;
      rep.message = e.what();
    }
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace volmom
