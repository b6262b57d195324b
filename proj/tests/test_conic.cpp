#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "volmom/conic.hpp"
#include "volmom/double_double.hpp"
#include "volmom/sdp_hierarchy.hpp"
#include "volmom/lp_hierarchy.hpp"
#include "random_sdp.hpp"

using namespace volmom;
using namespace volmom::conic;

namespace {

StandardConicProblem trivial_sdp() {
  StandardConicProblem p;
  p.num_vars = 1;
  p.objective = {1.0};
  Block a;
  a.size = 1;
  a.coefficients = {{SymEntry{0, 0, 1.0}}};
  Block b;
  b.size = 1;
  b.constant = {SymEntry{0, 0, 1.0}};
  b.coefficients = {{SymEntry{0, 0, -1.0}}};
  p.blocks = {a, b};
  return p;
}

StandardConicProblem trivial_lp() {
  StandardConicProblem p;
  p.num_vars = 1;
  p.objective = {1.0};
  Block c;
  c.kind = ConeKind::Nonneg;
  c.size = 2;
  c.constant = {SymEntry{0, 0, 2.0}};
  c.coefficients = {{SymEntry{0, 0, -1.0}, SymEntry{1, 1, 1.0}}};
  p.blocks = {c};
  return p;
}

ProblemSpec interval_spec() {
  ProblemSpec s;
  s.n = 1;
  s.bounding = {BoundingSet::Kind::Box, 1, 1.0};
  s.constraints = {parse_polynomial("0.5*x1 - x1^2", 1)};
  return s;
}

}  // namespace

TEST_CASE("trivial SDP and LP") {
  const SolveResult r = solve(trivial_sdp());
  CHECK(r.status == SolveStatus::Optimal);
  CHECK(r.y[0] == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(r.primal_objective == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(r.dual_objective == doctest::Approx(1.0).epsilon(1e-7));

  const SolveResult l = solve(trivial_lp());
  CHECK(l.status == SolveStatus::Optimal);
  CHECK(l.y[0] == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("interval Q_d matches an independent SCS solve") {
  // Optimal values of the same relaxations solved by SCS (eps 1e-9) through
  // cvxpy with plain Hankel matrices; see tests/scripts/interval_scs.py.
  const double scs[] = {1.2156862745125883, 1.0334236678600512, 0.9894554689218404,
                        0.9800646445953375};
  for (int d = 2; d <= 5; ++d) {
    const BoundReport r = solve_relaxation(interval_spec(), d);
    CHECK(r.status == SolveStatus::Optimal);
    CHECK(r.primal == doctest::Approx(scs[d - 2]).epsilon(1e-7));
  }
}

TEST_CASE("non-optimal statuses") {
  StandardConicProblem infeasible;
  infeasible.num_vars = 1;
  infeasible.objective = {1.0};
  Block b;
  b.kind = ConeKind::Nonneg;
  b.size = 2;
  b.constant = {SymEntry{0, 0, -1.0}};
  b.coefficients = {{SymEntry{0, 0, 1.0}, SymEntry{1, 1, -1.0}}};
  infeasible.blocks = {b};
  CHECK(solve(infeasible).status != SolveStatus::Optimal);

  StandardConicProblem unbounded;
  unbounded.num_vars = 1;
  unbounded.objective = {1.0};
  Block u;
  u.kind = ConeKind::Nonneg;
  u.size = 1;
  u.coefficients = {{SymEntry{0, 0, 1.0}}};
  unbounded.blocks = {u};
  CHECK(solve(unbounded).status != SolveStatus::Optimal);
}

TEST_CASE("validation") {
  StandardConicProblem p = trivial_sdp();
  p.blocks[0].coefficients[0][0] = SymEntry{1, 0, 1.0};
  CHECK_THROWS_AS(p.validate(), Error);
  StandardConicProblem q = trivial_lp();
  q.blocks[0].coefficients[0].push_back(SymEntry{0, 1, 1.0});
  CHECK_THROWS_AS(q.validate(), Error);
  StandardConicProblem r = trivial_sdp();
  r.objective = {1.0, 2.0};
  CHECK_THROWS_AS(r.validate(), Error);
  StandardConicProblem big;
  big.num_vars = 10001;
  big.objective.assign(big.num_vars, 0.0);
  CHECK_THROWS_AS(solve(big), Error);
}

TEST_CASE("precision modes agree") {
  const Relaxation relax = build_solver_relaxation(interval_spec(), 4);
  SolverOptions o;
  o.precision = Precision::Double;
  const SolveResult d = solve(relax.problem, o);
  o.precision = Precision::DoubleDouble;
  const SolveResult dd = solve(relax.problem, o);
  o.precision = Precision::Quad;
  const SolveResult q = solve(relax.problem, o);
  CHECK(d.status == SolveStatus::Optimal);
  CHECK(dd.status == SolveStatus::Optimal);
  CHECK(q.status == SolveStatus::Optimal);
  CHECK(dd.precision == Precision::DoubleDouble);
  CHECK(q.precision == Precision::Quad);
  CHECK(dd.primal_objective == doctest::Approx(d.primal_objective).epsilon(1e-7));
  CHECK(q.primal_objective == doctest::Approx(d.primal_objective).epsilon(1e-7));
}

TEST_CASE("random feasible SDPs") {
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 25; ++trial) {
    const testing::RandomSdp inst = testing::random_sdp(gen);
    const SolveResult r = solve(inst.problem);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(r.relative_gap <= 1e-6);
    CHECK(r.dual_objective >= r.primal_objective - 1e-6 * (1 + std::abs(r.primal_objective)));
    for (std::size_t b = 0; b < r.dual.size(); ++b) {
      if (inst.problem.blocks[b].kind != ConeKind::PSD) continue;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r.dual[b]);
      CHECK(es.eigenvalues().minCoeff() >= -1e-8);
    }
  }
}

TEST_CASE("SDPA golden text and round trip") {
  const std::string text = export_sdpa(trivial_sdp());
  CHECK(text ==
        "1\n"
        "2\n"
        "1 1\n"
        "-1\n"
        "0 2 1 1 -1\n"
        "1 1 1 1 1\n"
        "1 2 1 1 -1\n");
  std::istringstream is(text);
  CHECK(import_sdpa(is) == trivial_sdp());
  CHECK(export_sdpa(trivial_sdp()) == text);

  const StandardConicProblem q = build_solver_relaxation(interval_spec(), 2).problem;
  std::istringstream qs(export_sdpa(q));
  const StandardConicProblem back = import_sdpa(qs);
  CHECK(back == q);
  CHECK(export_sdpa(back) == export_sdpa(q));
}

TEST_CASE("MPS golden text and round trip") {
  const std::string text = export_mps(trivial_lp());
  CHECK(text ==
        "NAME          VOLMOM\n"
        "* VOLMOM-BLOCKS 2\n"
        "ROWS\n"
        " N  COST\n"
        " G  R0000001\n"
        " G  R0000002\n"
        "COLUMNS\n"
        "    Y0000001  COST      -1\n"
        "    Y0000001  R0000001  -1\n"
        "    Y0000001  R0000002  1\n"
        "RHS\n"
        "    RHS       R0000001  -2\n"
        "BOUNDS\n"
        " FR BND       Y0000001\n"
        "ENDATA\n");
  std::istringstream is(text);
  CHECK(import_mps(is) == trivial_lp());

  const ProblemSpec s = interval_spec();
  const LpRelaxation lp = build_ld(s, reference_moments(s.bounding, lp_moment_degree(s, 1)), 1);
  std::istringstream ls(export_mps(lp.problem));
  CHECK(import_mps(ls) == lp.problem);
  CHECK_THROWS_AS(export_mps(trivial_sdp()), Error);
}

TEST_CASE("block values") {
  const StandardConicProblem p = trivial_sdp();
  const Eigen::MatrixXd v = block_value(p.blocks[1], {0.25});
  CHECK(v(0, 0) == doctest::Approx(0.75));
}

TEST_CASE("double-double arithmetic") {
  const DoubleDouble one(1.0);
  const DoubleDouble tiny(std::ldexp(1.0, -80));
  CHECK(static_cast<double>((one + tiny) - one) == std::ldexp(1.0, -80));
  const DoubleDouble two(2.0);
  const DoubleDouble r = sqrt(two);
  CHECK(std::abs(static_cast<double>(r * r - two)) < 1e-30);
  const DoubleDouble third = one / DoubleDouble(3.0);
  CHECK(std::abs(static_cast<double>(third * DoubleDouble(3.0) - one)) < 1e-30);
  CHECK(DoubleDouble(0.1) + DoubleDouble(0.2) > DoubleDouble(0.3) - DoubleDouble(1e-20));
  CHECK(std::numeric_limits<DoubleDouble>::digits == 106);
  CHECK(std::numeric_limits<DoubleDouble>::epsilon() < DoubleDouble(1e-31));
  CHECK(static_cast<double>(abs(DoubleDouble(-2.5))) == 2.5);
  CHECK(isfinite(DoubleDouble(1.0)));
  CHECK_FALSE(isfinite(DoubleDouble(std::numeric_limits<double>::infinity())));
  CHECK(static_cast<double>(floor(DoubleDouble(2.75))) == 2.0);
}
