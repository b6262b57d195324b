#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "random_sdp.hpp"
#include "volmom/conditioning.hpp"
#include "volmom/lp_hierarchy.hpp"
#include "volmom/multiprecision.hpp"
#include "volmom/oracles.hpp"
#include "volmom/sdp_hierarchy.hpp"

using namespace volmom;
using conic::SolveStatus;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<int> range(int lo, int hi) {
  std::vector<int> v;
  for (int d = lo; d <= hi; ++d) v.push_back(d);
  return v;
}

bool all_optimal(const std::vector<BoundReport>& reps) {
  for (const auto& r : reps)
    if (r.status != SolveStatus::Optimal) return false;
  return true;
}

ProblemSpec interval() { return fixture("interval").spec; }

ProblemSpec with_g_objective(ProblemSpec s) {
  s.objective = s.constraints.at(0);
  return s;
}

double relative_gap(const BoundReport& r) {
  return std::abs(r.primal - r.dual) / (1.0 + std::abs(r.primal) + std::abs(r.dual));
}

// Upper bounds for p = 1 on the interval, stabilized, d = 2..20.
Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto reps = run_hierarchy(interval(), range(2, 20));
  const double t = seconds_since(t0);
  bool ok = all_optimal(reps) && reps.size() == 19;
  double prev = INFINITY, worst_drop = 0.0, lowest = INFINITY;
  for (const auto& r : reps) {
    ok = ok && r.primal >= 0.5 - 1e-6 && r.primal <= prev + 1e-6;
    worst_drop = std::max(worst_drop, r.primal - prev);
    lowest = std::min(lowest, r.primal);
    prev = r.primal;
  }
  ok = ok && t < 30.0;
  return {ok, "d=2..20 bounds " + fmt("%.6f", reps.front().primal) + " -> " +
                  fmt("%.6f", reps.back().primal) + ", min " + fmt("%.6f", lowest) +
                  ", largest increase " + fmt("%.2e", std::max(0.0, worst_drop)) + ", " +
                  fmt("%.1f", t) + " s"};
}

Outcome criterion2() {
  ProblemSpec c = interval();
  c.mode = Mode::ComplementLower;
  const auto lower = run_hierarchy(c, range(2, 20));
  const BoundReport upper = solve_relaxation(interval(), 20);
  bool ok = all_optimal(lower) && upper.status == SolveStatus::Optimal;
  double prev = -INFINITY;
  for (const auto& r : lower) {
    ok = ok && r.primal >= prev - 1e-6 && r.primal <= 0.5 + 1e-6;
    prev = r.primal;
  }
  const double complement_upper = 2.0 - lower.back().primal;
  const double sum = upper.primal + complement_upper;
  ok = ok && sum >= 2.0 - 1e-6;
  return {ok, "lower " + fmt("%.6f", lower.front().primal) + " -> " +
                  fmt("%.6f", lower.back().primal) + ", upper(20) + complement upper(20) = " +
                  fmt("%.6f", sum)};
}

Outcome criterion3() {
  const Fixture& bean = fixture("bean");
  const ProblemSpec s = with_g_objective(bean.spec);
  bool ok = true;
  std::string detail;
  for (int degree : {8, 12}) {
    const auto t0 = std::chrono::steady_clock::now();
    const BoundReport r = solve_relaxation(s, degree / 2);
    const double t = seconds_since(t0);
    const double err = std::abs(r.volume_estimate - bean.exact_volume) / bean.exact_volume;
    ok = ok && r.status == SolveStatus::Optimal && err <= 0.02 && t < 300.0;
    detail += "degree " + std::to_string(degree) + ": mass " + fmt("%.5f", r.volume_estimate) +
              " error " + fmt("%.2f", 100 * err) + "% (" + conic::to_string(r.status) + ", " +
              fmt("%.1f", t) + " s); ";
  }
  return {ok, detail};
}

Outcome criterion4() {
  const Fixture& bean = fixture("bean");
  const BoundReport r = solve_relaxation(with_g_objective(bean.spec), 10);
  bool ok = r.status == SolveStatus::Optimal;
  std::string detail = "order 10 (degree 20): ";
  for (const auto& fx : bean.ratios) {
    if (fx.value == 0.0) continue;
    const double got = r.moments[fx.alpha] / r.moments.mass();
    const double rel = std::abs(got - fx.value) / fx.value;
    ok = ok && rel <= 0.03;
    detail += "y" + std::to_string(fx.alpha[0]) + std::to_string(fx.alpha[1]) + "/y00 " +
              fmt("%.4f", got) + " vs " + fmt("%.4f", fx.value) + " (" + fmt("%.2f", 100 * rel) +
              "%) ";
  }
  return {ok, detail + conic::to_string(r.status)};
}

Outcome criterion5() {
  const Fixture& folium = fixture("folium");
  const ProblemSpec s = with_g_objective(folium.spec);
  bool ok = true;
  std::string detail;
  for (auto [degree, limit] : {std::pair{10, 0.15}, std::pair{18, 0.05}}) {
    const BoundReport r = solve_relaxation(s, degree / 2);
    const double err = std::abs(r.volume_estimate - folium.exact_volume) / folium.exact_volume;
    ok = ok && r.status == SolveStatus::Optimal && err <= limit;
    detail += "degree " + std::to_string(degree) + ": error " + fmt("%.2f", 100 * err) +
              "% (limit " + fmt("%.0f", 100 * limit) + "%, " + conic::to_string(r.status) + "); ";
  }
  return {ok, detail};
}

// Checks the certificate of one solve: coefficient residual and domination on
// 1000 samples of the set where every multiplier is nonnegative.
bool certificate_ok(const BoundReport& r, const BoundingSet& b, std::mt19937_64& gen,
                    double& worst_residual, double& worst_violation) {
  if (!r.certificate) return false;
  const Certificate& c = *r.certificate;
  worst_residual = std::max(worst_residual, c.relative_residual());
  std::uniform_real_distribution<double> u(-b.a, b.a);
  int taken = 0;
  for (int tries = 0; taken < 1000 && tries < 2'000'000; ++tries) {
    std::vector<double> x(b.n);
    for (auto& v : x) v = u(gen);
    if (!b.contains(x)) continue;
    bool inside = true;
    for (const auto& g : c.multipliers) inside = inside && g.eval(x) >= 0.0;
    if (!inside) continue;
    ++taken;
    worst_violation = std::max(worst_violation, c.objective.eval(x) - c.h.eval(x));
  }
  return taken == 1000 && c.relative_residual() <= 1e-5 && worst_violation <= 1e-4;
}

Outcome criterion6() {
  std::mt19937_64 gen(6);
  std::vector<std::pair<BoundReport, BoundingSet>> solves;
  const BoundingSet box1{BoundingSet::Kind::Box, 1, 1.0};
  for (const auto& r : run_hierarchy(interval(), range(2, 20))) solves.emplace_back(r, box1);
  ProblemSpec c = interval();
  c.mode = Mode::ComplementLower;
  for (const auto& r : run_hierarchy(c, range(2, 20))) solves.emplace_back(r, box1);
  ProblemSpec f = interval();
  f.mode = Mode::Integrate;
  f.integrand = parse_polynomial("x1", 1);
  for (const auto& r : run_hierarchy(f, range(2, 10))) solves.emplace_back(r, box1);
  const Fixture& bean = fixture("bean");
  for (const auto& r : run_hierarchy(with_g_objective(bean.spec), {2, 3, 4, 5, 6}))
    solves.emplace_back(r, bean.spec.bounding);
  for (const auto& r : run_hierarchy(bean.spec, {2, 3, 4})) solves.emplace_back(r, bean.spec.bounding);
  const Fixture& folium = fixture("folium");
  for (const auto& r : run_hierarchy(with_g_objective(folium.spec), {3, 4, 5}))
    solves.emplace_back(r, folium.spec.bounding);

  bool ok = true;
  int checked = 0;
  double residual = 0.0, violation = -INFINITY;
  for (const auto& [r, b] : solves) {
    if (r.status != SolveStatus::Optimal) continue;
    ++checked;
    ok = certificate_ok(r, b, gen, residual, violation) && ok;
  }
  return {ok && checked > 0, std::to_string(checked) + " of " + std::to_string(solves.size()) +
                                 " solves optimal and checked; max relative residual " +
                                 fmt("%.2e", residual) + ", max p - h on samples " +
                                 fmt("%.2e", violation)};
}

Outcome criterion7() {
  bool ok = true;
  double worst = 0.0;
  int count = 0;
  auto take = [&](const std::vector<BoundReport>& reps) {
    for (const auto& r : reps) {
      ++count;
      ok = ok && r.status == SolveStatus::Optimal && relative_gap(r) <= 1e-6;
      worst = std::max(worst, relative_gap(r));
    }
  };
  take(run_hierarchy(interval(), range(2, 10)));
  const Fixture& bean = fixture("bean");
  take(run_hierarchy(bean.spec, range(2, 5)));
  take(run_hierarchy(with_g_objective(bean.spec), range(2, 5)));
  return {ok, std::to_string(count) + " solves (interval d=2..10, bean degree 4..10 for p=1 and p=g1), "
              "max relative gap " + fmt("%.2e", worst)};
}

Outcome criterion8() {
  bool ok = true;
  HighPrecision prev = 0;
  double min_ratio = INFINITY;
  std::string ends;
  for (int d = 10; d <= 40; ++d) {
    const HighPrecision mono = box_moment_matrix_condition<HighPrecision>(1, d, Basis::Monomial);
    const HighPrecision cheb = box_moment_matrix_condition<HighPrecision>(1, d, Basis::Chebyshev);
    ok = ok && mono > cheb && mono > prev;
    min_ratio = std::min(min_ratio, static_cast<double>(mono / cheb));
    if (d == 10 || d == 40)
      ends += "d=" + std::to_string(d) + " monomial " + fmt("%.3e", static_cast<double>(mono)) +
              " chebyshev " + fmt("%.3e", static_cast<double>(cheb)) + "; ";
    prev = mono;
  }
  return {ok, ends + "min ratio " + fmt("%.3e", min_ratio)};
}

Outcome criterion9() {
  const ProblemSpec s = interval();
  const auto reps = run_lp_hierarchy(s, range(1, 5));
  bool ok = all_optimal(reps);
  double prev = INFINITY, worst_row = INFINITY;
  std::string bounds;
  for (const auto& r : reps) {
    ok = ok && r.primal >= 0.5 - 1e-7 && r.primal <= prev + 1e-7;
    prev = r.primal;
    bounds += fmt("%.5f", r.primal) + " ";
  }
  for (int d = 1; d <= 5; ++d) {
    const int deg = lp_moment_degree(s, d);
    const LpRelaxation lp = build_ld(s, reference_moments(s.bounding, deg), d);
    const MomentVector truth = quad_moments_on_K(s, deg).moments;
    for (const auto& b : lp.problem.blocks)
      worst_row = std::min(worst_row, conic::block_value(b, truth.values).minCoeff());
  }
  ok = ok && worst_row >= -1e-9;
  return {ok, "bounds " + bounds + "; min row value at true moments " + fmt("%.2e", worst_row)};
}

Outcome criterion10() {
  bool ok = true;
  std::string detail;
  for (const Fixture& f : fixtures()) {
    const McEstimate mc = mc_volume(f.spec, 1'000'000, 7);
    const QuadMoments q = quad_moments_on_K(f.spec, 0);
    const double z = std::abs(mc.volume - f.exact_volume) / mc.std_error;
    const double qerr = std::abs(q.moments.mass() - f.exact_volume);
    ok = ok && z <= 3.0 && qerr <= 1e-3;
    detail += f.name + ": MC " + fmt("%.2f", z) + " sigma, quadrature " + fmt("%.1e", qerr) + "; ";
  }
  return {ok, detail};
}

Outcome criterion11() {
  ProblemSpec s = interval();
  s.mode = Mode::Integrate;
  s.integrand = parse_polynomial("x1", 1);
  s.weighted_moments = box_moments(1, 20);
  const auto reps = run_hierarchy(s, range(2, 10));
  bool ok = all_optimal(reps);
  double prev = INFINITY;
  for (const auto& r : reps) {
    ok = ok && r.primal >= 0.125 - 1e-6 && r.primal <= prev + 1e-6;
    prev = r.primal;
  }
  const double rel = std::abs(reps.back().primal - 0.125) / 0.125;
  ok = ok && rel <= 0.01;
  return {ok, "bounds " + fmt("%.5f", reps.front().primal) + " (d=2) -> " +
                  fmt("%.5f", reps.back().primal) + " (d=10), target 0.125, error at d=10 " +
                  fmt("%.1f", 100 * rel) + "%"};
}

bool round_trips(const conic::StandardConicProblem& p, bool lp) {
  const std::string text = lp ? conic::export_mps(p) : conic::export_sdpa(p);
  std::istringstream is(text);
  const conic::StandardConicProblem back = lp ? conic::import_mps(is) : conic::import_sdpa(is);
  const std::string again = lp ? conic::export_mps(back) : conic::export_sdpa(back);
  return back == p && again == text;
}

Outcome criterion12() {
  std::mt19937_64 gen(12);
  int optimal = 0, trips = 0, trip_fail = 0;
  double worst_gap = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto inst = testing::random_sdp(gen);
    const conic::SolveResult r = conic::solve(inst.problem);
    if (r.status == SolveStatus::Optimal && r.relative_gap <= 1e-6) ++optimal;
    worst_gap = std::max(worst_gap, r.relative_gap);
    ++trips;
    if (!round_trips(inst.problem, false)) ++trip_fail;
  }
  const ProblemSpec s = interval();
  for (int d = 2; d <= 6; ++d) {
    ++trips;
    if (!round_trips(build_solver_relaxation(s, d).problem, false)) ++trip_fail;
    const LpRelaxation lp = build_ld(s, reference_moments(s.bounding, lp_moment_degree(s, d)), d);
    ++trips;
    if (!round_trips(lp.problem, true)) ++trip_fail;
  }
  ++trips;
  if (!round_trips(build_solver_relaxation(with_g_objective(fixture("bean").spec), 5).problem, false))
    ++trip_fail;
  const bool ok = optimal == 100 && trip_fail == 0;
  return {ok, std::to_string(optimal) + "/100 random SDPs optimal, max relative gap " +
                  fmt("%.2e", worst_gap) + "; " + std::to_string(trips - trip_fail) + "/" +
                  std::to_string(trips) + " exports round-trip bit-exactly"};
}

const std::vector<std::pair<std::string, std::function<Outcome()>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<Outcome()>>> list = {
      {"interval upper bounds, p = 1, monomial basis, d = 2..20", criterion1},
      {"interval complement lower bounds", criterion2},
      {"bean volume error at degrees 8 and 12", criterion3},
      {"bean moment ratios", criterion4},
      {"folium volume error at degrees 10 and 18", criterion5},
      {"certificate residual and domination", criterion6},
      {"duality gap on interval and bean", criterion7},
      {"power vs Chebyshev conditioning, d = 10..40", criterion8},
      {"interval LP hierarchy, d = 1..5", criterion9},
      {"oracle concordance", criterion10},
      {"weighted integration of f = x on the interval", criterion11},
      {"random SDPs and SDPA/MPS round trips", criterion12},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::vector<int> which;
  app.add_option("--criterion", which, "criterion numbers to run (default: all)")
      ->check(CLI::Range(1, 12));
  CLI11_PARSE(app, argc, argv);
  if (which.empty()) which = range(1, 12);

  int failed = 0;
  for (int k : which) {
    const auto& [name, fn] = criteria()[k - 1];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << "criterion " << k << " - " << name << ": "
              << o.detail << " [" << fmt("%.1f", seconds_since(t0)) << " s]\n"
              << std::flush;
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
