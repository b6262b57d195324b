#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "volmom/cli.hpp"

using namespace volmom;
using namespace volmom::cli;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = VOLMOM_SOURCE_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("volmom_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

Problem interval_problem() {
  return parse_problem(R"({"n": 1, "bounding": {"kind": "box", "a": 1},
                           "constraints": ["0.5*x1 - x1^2"], "f": "x1"})");
}

}  // namespace

TEST_CASE("parse interval and bean problems") {
  const Problem i = interval_problem();
  CHECK(i.spec.n == 1);
  CHECK(i.spec.bounding.kind == BoundingSet::Kind::Box);
  CHECK(i.spec.bounding.a == 1.0);
  REQUIRE(i.spec.constraints.size() == 1);
  CHECK(i.spec.constraints[0].coefficient({1}) == 0.5);
  CHECK(i.f);
  CHECK_FALSE(i.p);

  const Problem b = load_problem(kSource / "problems/bean.json");
  CHECK(b.spec.name == "bean");
  REQUIRE(b.spec.constraints.size() == 1);
  CHECK(b.spec.constraints[0].degree() == 4);
  CHECK((b.spec.constraints[0].degree() + 1) / 2 == 2);

  const Problem f = load_problem(kSource / "problems/folium.json");
  CHECK(f.spec.bounding.kind == BoundingSet::Kind::Ball);
  CHECK(f.spec.constraints[0].degree() == 6);

  const Problem w = load_problem(kSource / "problems/interval_weighted.json");
  REQUIRE(w.spec.weighted_moments);
  CHECK(w.spec.weighted_moments->degree == 40);
  CHECK_FALSE(load_problem(kSource / "problems/interval_gloptipoly.json").spec.add_ball_constraint);
}

TEST_CASE("problem errors") {
  auto position = [](const std::string& text) -> std::pair<std::size_t, std::size_t> {
    try {
      parse_problem(text);
    } catch (const ParseError& e) {
      return {e.line(), e.column()};
    }
    return {0, 0};
  };
  const std::string bad_exp =
      R"({"n": 1, "bounding": {"kind": "box", "a": 1}, "constraints": ["x1^-1"]})";
  CHECK_THROWS_AS(parse_problem(bad_exp), ParseError);
  CHECK(position(bad_exp) == std::pair<std::size_t, std::size_t>{1, 4});
  try {
    parse_problem(bad_exp);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("constraints[0]") != std::string::npos);
  }

  CHECK(position("{\n  \"n\": 1,\n  \"bounding\" {}\n}") == std::pair<std::size_t, std::size_t>{3, 14});
  CHECK_THROWS_AS(parse_problem(R"({"n": 1, "bounding": {"kind": "box", "a": 1}, "constraints": ["x2"]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_problem(R"({"n": 1, "bounding": {"kind": "box", "a": 1}, "constraints": ["x1^500"]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_problem(R"({"n": 0, "bounding": {"kind": "box", "a": 1}, "constraints": []})"), Error);
  CHECK_THROWS_AS(parse_problem(R"({"n": 1, "bounding": {"kind": "cube", "a": 1}, "constraints": []})"), Error);
  CHECK_THROWS_AS(parse_problem(R"({"n": 1, "bounding": {"kind": "box", "a": -1}, "constraints": []})"), Error);
  CHECK_THROWS_AS(parse_problem(R"({"n": 1, "bounding": {"kind": "box", "a": 1}})"), Error);
  CHECK_THROWS_AS(parse_problem(R"({"n": 1, "bounding": {"kind": "box", "a": 1}, "constraints": [], "q": "x1"})"),
                  Error);
  CHECK_THROWS_AS(parse_problem(R"({"n": 1, "bounding": {"kind": "box", "a": 1}, "constraints": ["3"]})"), Error);
  CHECK_THROWS_AS(parse_problem("[1, 2]"), Error);
}

TEST_CASE("lists and counts") {
  CHECK(parse_int_list("2..5") == std::vector<int>{2, 3, 4, 5});
  CHECK(parse_int_list("4,8") == std::vector<int>{4, 8});
  CHECK(parse_int_list(" 2..4, 10 ") == std::vector<int>{2, 3, 4, 10});
  CHECK_THROWS_AS(parse_int_list("8,4"), Error);
  CHECK_THROWS_AS(parse_int_list("4,4"), Error);
  CHECK_THROWS_AS(parse_int_list("5..2"), Error);
  CHECK_THROWS_AS(parse_int_list("a"), Error);
  CHECK_THROWS_AS(parse_int_list("1,,2"), Error);
  CHECK(orders_from_degrees({4, 8, 12}) == std::vector<int>{2, 4, 6});
  CHECK_THROWS_AS(orders_from_degrees({5}), Error);
  CHECK_THROWS_AS(orders_from_degrees({0}), Error);
  CHECK(parse_count("1e6") == 1000000);
  CHECK(parse_count("250") == 250);
  CHECK_THROWS_AS(parse_count("1.5"), Error);
  CHECK_THROWS_AS(parse_count("-3"), Error);
  CHECK_THROWS_AS(parse_count("many"), Error);
}

TEST_CASE("config validation") {
  const Problem p = interval_problem();
  RunConfig c;
  c.orders = {2, 3};
  CHECK_NOTHROW(validate(c, p));

  RunConfig bad = c;
  bad.orders = {3, 2};
  CHECK_THROWS_AS(validate(bad, p), Error);
  bad = c;
  bad.orders.clear();
  CHECK_THROWS_AS(validate(bad, p), Error);
  bad = c;
  bad.objective = ObjectiveChoice::Custom;
  CHECK_THROWS_AS(validate(bad, p), Error);
  bad = c;
  bad.mode = RunMode::Lower;
  bad.objective = ObjectiveChoice::GProduct;
  CHECK_THROWS_AS(validate(bad, p), Error);
  bad = c;
  bad.export_mps = true;
  CHECK_THROWS_AS(validate(bad, p), Error);
  bad = c;
  bad.mode = RunMode::Lp;
  bad.export_sdpa = true;
  CHECK_THROWS_AS(validate(bad, p), Error);
  bad = c;
  bad.mode = RunMode::Lp;
  bad.basis = Basis::Chebyshev;
  CHECK_THROWS_AS(validate(bad, p), Error);
  bad = c;
  bad.mode = RunMode::Oracle;
  bad.samples = 10;
  CHECK_THROWS_AS(validate(bad, p), Error);

  const Problem bean = load_problem(kSource / "problems/bean.json");
  bad = c;
  bad.orders = {1, 2};
  CHECK_THROWS_AS(validate(bad, bean), Error);
  bad = c;
  bad.mode = RunMode::Integrate;
  CHECK_THROWS_AS(validate(bad, bean), Error);
  CHECK_NOTHROW(validate(c, bean));

  RunConfig g = c;
  g.objective = ObjectiveChoice::GProduct;
  g.orders = {2};
  const ProblemSpec s = mode_spec(g, bean);
  CHECK(s.objective.coefficient({3, 0}) == 1.0);
  CHECK(s.mode == Mode::Upper);
}

TEST_CASE("report.json golden file") {
  Problem p = parse_problem(
      R"({"name": "trivial", "n": 1, "bounding": {"kind": "box", "a": 1}, "constraints": ["x1"]})");
  RunConfig c;
  c.problem_path = "trivial.json";
  c.orders = {1};
  c.seed = 7;
  BoundReport r;
  r.order = 1;
  r.primal = 1.0;
  r.dual = 0.9999999990000001;
  r.gap = 9.99999917372e-10;
  r.status = conic::SolveStatus::Optimal;
  r.seconds = 0.25;
  r.iterations = 9;
  r.volume_estimate = 1.0;
  r.solve_basis = Basis::Chebyshev;
  r.precision = conic::Precision::Double;
  const std::string got = report_json(c, p, {r}, std::nullopt, 0).dump(2) + "\n";
  CHECK(got == slurp(kSource / "tests/golden/report_trivial.json"));
  const auto j = nlohmann::json::parse(got);
  CHECK(j["schema_version"] == kReportSchemaVersion);
  CHECK(j["reports"][0]["degree"] == 2);
}

TEST_CASE("csv writers") {
  BoundReport r;
  r.order = 2;
  r.primal = 1.5;
  r.dual = 1.25;
  r.gap = 0.25;
  r.status = conic::SolveStatus::NumericalLimit;
  r.seconds = 3.5;
  std::ostringstream a, b;
  write_bounds_csv(a, {r});
  write_bounds_csv(b, {r}, false);
  CHECK(a.str() == "degree,primal,dual,gap,status,seconds\n4,1.5,1.25,0.25,numerical_limit,3.5\n");
  CHECK(b.str() == "degree,primal,dual,gap,status,seconds\n4,1.5,1.25,0.25,numerical_limit,0\n");
  CHECK(exit_code_for({r}) == 2);
  r.status = conic::SolveStatus::Optimal;
  CHECK(exit_code_for({r}) == 0);

  MomentVector v(1, 1, Basis::Monomial);
  v.values = {0.5, 0.25};
  MomentVector o(1, 0, Basis::Monomial);
  o.values = {0.75};
  std::ostringstream m;
  write_moment_comparison_csv(m, v, o);
  CHECK(m.str() == "alpha_1,value,oracle,abs_error\n0,0.5,0.75,0.25\n1,0.25,,\n");
  CHECK(grid_points_per_axis(1) == 401);
  CHECK(grid_points_per_axis(2) == 201);
}

TEST_CASE("run writes artifacts deterministically") {
  RunConfig c;
  c.problem_path = kSource / "problems/interval.json";
  c.orders = {2, 3, 4, 5};
  c.record_timing = false;
  c.out_dir = scratch("det_a");
  std::ostringstream log;
  REQUIRE(run(c, log) == 0);
  RunConfig c2 = c;
  c2.out_dir = scratch("det_b");
  REQUIRE(run(c2, log) == 0);
  for (const char* f : {"bounds.csv", "moments.csv", "certificate_grid.csv"}) {
    const std::string x = slurp(c.out_dir / f);
    CHECK_FALSE(x.empty());
    CHECK(x == slurp(c2.out_dir / f));
  }
  const std::string bounds = slurp(c.out_dir / "bounds.csv");
  CHECK(std::count(bounds.begin(), bounds.end(), '\n') == 5);
  const std::string grid = slurp(c.out_dir / "certificate_grid.csv");
  CHECK(std::count(grid.begin(), grid.end(), '\n') == 402);
  const auto report = nlohmann::json::parse(slurp(c.out_dir / "report.json"));
  CHECK(report["exit_code"] == 0);
  CHECK(report["reports"].size() == 4);
  CHECK(report["error"].is_null());

  RunConfig oracle;
  oracle.problem_path = kSource / "problems/folium.json";
  oracle.mode = RunMode::Oracle;
  oracle.samples = 20000;
  oracle.seed = 3;
  oracle.out_dir = scratch("oracle_a");
  REQUIRE(run(oracle, log) == 0);
  RunConfig oracle2 = oracle;
  oracle2.out_dir = scratch("oracle_b");
  REQUIRE(run(oracle2, log) == 0);
  CHECK(slurp(oracle.out_dir / "moments.csv") == slurp(oracle2.out_dir / "moments.csv"));
}

TEST_CASE("run exit codes and exports") {
  std::ostringstream log;
  RunConfig missing;
  missing.problem_path = kSource / "problems/does_not_exist.json";
  missing.orders = {2};
  missing.out_dir = scratch("missing");
  CHECK(run(missing, log) == 1);
  const auto err = nlohmann::json::parse(slurp(missing.out_dir / "report.json"));
  CHECK(err["exit_code"] == 1);
  CHECK(err["error"].is_string());

  RunConfig starved;
  starved.problem_path = kSource / "problems/interval.json";
  starved.orders = {4};
  starved.solver.max_iter = 2;
  starved.solver.precision = conic::Precision::Double;
  starved.out_dir = scratch("starved");
  CHECK(run(starved, log) == 2);

  RunConfig sdpa;
  sdpa.problem_path = kSource / "problems/interval.json";
  sdpa.orders = {2, 3};
  sdpa.export_sdpa = true;
  sdpa.out_dir = scratch("sdpa");
  REQUIRE(run(sdpa, log) == 0);
  std::ifstream is(sdpa.out_dir / "sdp_d3.dat-s");
  const auto imported = conic::import_sdpa(is);
  CHECK(imported.num_vars == 7);

  RunConfig mps;
  mps.problem_path = kSource / "problems/interval.json";
  mps.mode = RunMode::Lp;
  mps.orders = {1, 2};
  mps.export_mps = true;
  mps.out_dir = scratch("mps");
  REQUIRE(run(mps, log) == 0);
  CHECK(fs::exists(mps.out_dir / "lp_d2.mps"));
  CHECK_FALSE(fs::exists(mps.out_dir / "certificate_grid.csv"));
}
