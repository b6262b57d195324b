#include "volmom/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "volmom/format.hpp"
#include "volmom/lp_hierarchy.hpp"

namespace volmom::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string to_string(RunMode m) {
  switch (m) {
    case RunMode::Upper: return "upper";
    case RunMode::Lower: return "lower";
    case RunMode::Lp: return "lp";
    case RunMode::Integrate: return "integrate";
    case RunMode::Oracle: return "oracle";
  }
  return "?";
}

std::string to_string(ObjectiveChoice o) {
  switch (o) {
    case ObjectiveChoice::One: return "one";
    case ObjectiveChoice::GProduct: return "g-product";
    case ObjectiveChoice::Custom: return "custom";
  }
  return "?";
}

RunMode parse_run_mode(std::string_view s) {
  for (RunMode m : {RunMode::Upper, RunMode::Lower, RunMode::Lp, RunMode::Integrate,
                    RunMode::Oracle})
    if (s == to_string(m)) return m;
  throw Error("unknown mode '" + std::string(s) + "' (upper, lower, lp, integrate, oracle)");
}

ObjectiveChoice parse_objective_choice(std::string_view s) {
  for (ObjectiveChoice o : {ObjectiveChoice::One, ObjectiveChoice::GProduct, ObjectiveChoice::Custom})
    if (s == to_string(o)) return o;
  throw Error("unknown objective '" + std::string(s) + "' (one, g-product, custom)");
}

Basis parse_basis(std::string_view s) {
  if (s == "monomial") return Basis::Monomial;
  if (s == "chebyshev") return Basis::Chebyshev;
  throw Error("unknown basis '" + std::string(s) + "' (monomial, chebyshev)");
}

conic::Precision parse_precision(std::string_view s) {
  using conic::Precision;
  for (Precision p : {Precision::Double, Precision::DoubleDouble, Precision::Quad, Precision::Auto})
    if (s == conic::to_string(p)) return p;
  throw Error("unknown precision '" + std::string(s) + "' (double, double-double, quad, auto)");
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, std::string_view whole) {
  s = trim(s);
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw Error("invalid integer '" + std::string(s) + "' in list '" + std::string(whole) + "'");
  return v;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// what() of a ParseError without its trailing position.
std::string bare_message(const ParseError& e) {
  std::string s = e.what();
  const auto pos = s.rfind(" at line ");
  return pos == std::string::npos ? s : s.substr(0, pos);
}

MultiPoly parse_field(const std::string& field, const std::string& text, std::size_t n) {
  try {
    return parse_polynomial(text, n);
  } catch (const ParseError& e) {
    throw ParseError(field + ": " + bare_message(e), e.line(), e.column());
  }
}

const json& require(const json& obj, const char* key, const char* where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw Error(std::string(where) + ": missing field '" + key + "'");
  return *it;
}

std::string require_string(const json& v, const std::string& field) {
  if (!v.is_string()) throw Error(field + " must be a string");
  return v.get<std::string>();
}

}  // namespace

Problem parse_problem(std::string_view text, const fs::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string msg = e.what();
    if (auto pos = msg.find(": "); pos != std::string::npos) {
      if (auto pos2 = msg.find(": ", pos + 2); pos2 != std::string::npos) msg = msg.substr(pos2 + 2);
    }
    throw ParseError("problem file: " + msg, line, col);
  }
  if (!doc.is_object()) throw Error("problem file: top level must be an object");

  static const char* known[] = {"name", "description", "n", "bounding", "constraints", "p", "f",
                                "weight_moments_csv", "ball_constraint"};
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (std::find_if(std::begin(known), std::end(known),
                     [&](const char* k) { return it.key() == k; }) == std::end(known))
      throw Error("problem file: unknown field '" + it.key() + "'");

  Problem out;
  ProblemSpec& s = out.spec;
  if (doc.contains("name")) s.name = require_string(doc["name"], "name");

  const json& n = require(doc, "n", "problem file");
  if (!n.is_number_integer() || n.get<long long>() < 1)
    throw Error("n must be a positive integer");
  s.n = n.get<std::size_t>();

  const json& b = require(doc, "bounding", "problem file");
  if (!b.is_object()) throw Error("bounding must be an object");
  for (auto it = b.begin(); it != b.end(); ++it)
    if (it.key() != "kind" && it.key() != "a")
      throw Error("bounding: unknown field '" + it.key() + "'");
  const std::string kind = require_string(require(b, "kind", "bounding"), "bounding.kind");
  if (kind == "box") {
    s.bounding.kind = BoundingSet::Kind::Box;
  } else if (kind == "ball") {
    s.bounding.kind = BoundingSet::Kind::Ball;
  } else {
    throw Error("bounding.kind must be \"box\" or \"ball\", got \"" + kind + "\"");
  }
  const json& a = require(b, "a", "bounding");
  if (!a.is_number() || !(a.get<double>() > 0) || !std::isfinite(a.get<double>()))
    throw Error("bounding.a must be a positive number");
  s.bounding.a = a.get<double>();
  s.bounding.n = s.n;

  const json& cs = require(doc, "constraints", "problem file");
  if (!cs.is_array()) throw Error("constraints must be an array of polynomial strings");
  for (std::size_t j = 0; j < cs.size(); ++j) {
    const std::string field = "constraints[" + std::to_string(j) + "]";
    const std::string t = require_string(cs[j], field);
    MultiPoly g = parse_field(field, t, s.n);
    if (g.is_zero() || g.degree() < 1)
      throw Error(field + " must be a nonconstant polynomial");
    s.constraints.push_back(std::move(g));
    out.constraint_text.push_back(t);
  }

  if (doc.contains("p")) {
    out.p_text = require_string(doc["p"], "p");
    out.p = parse_field("p", out.p_text, s.n);
  }
  if (doc.contains("f")) {
    out.f_text = require_string(doc["f"], "f");
    out.f = parse_field("f", out.f_text, s.n);
  }
  if (doc.contains("ball_constraint")) {
    if (!doc["ball_constraint"].is_boolean()) throw Error("ball_constraint must be true or false");
    s.add_ball_constraint = doc["ball_constraint"].get<bool>();
  }
  if (doc.contains("description")) {
    const json& d = doc["description"];
    if (!d.is_string() && !(d.is_array() && std::all_of(d.begin(), d.end(),
                                                          [](const json& x) { return x.is_string(); })))
      throw Error("description must be a string or an array of strings");
  }
  if (doc.contains("weight_moments_csv")) {
    fs::path path = require_string(doc["weight_moments_csv"], "weight_moments_csv");
    if (path.is_relative()) path = base_dir / path;
    std::ifstream is(path);
    if (!is) throw Error("cannot open weight_moments_csv '" + path.string() + "'");
    MomentVector w = read_moments_csv(is, Basis::Monomial);
    if (w.n != s.n)
      throw Error("weight_moments_csv has " + std::to_string(w.n) + " alpha columns, expected " +
                  std::to_string(s.n));
    s.weighted_moments = std::move(w);
    out.weight_moments_csv = path;
  }
  s.validate();
  return out;
}

Problem load_problem(const fs::path& file) {
  std::ifstream is(file, std::ios::binary);
  if (!is) throw Error("cannot open problem file '" + file.string() + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  Problem p = parse_problem(ss.str(), file.parent_path());
  if (p.spec.name.empty()) p.spec.name = file.stem().string();
  return p;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string_view item = trim(text.substr(start, comma - start));
    if (item.empty()) throw Error("empty entry in list '" + std::string(text) + "'");
    if (auto dots = item.find(".."); dots != std::string_view::npos) {
      const int lo = parse_int(item.substr(0, dots), text);
      const int hi = parse_int(item.substr(dots + 2), text);
      if (hi < lo) throw Error("empty range '" + std::string(item) + "'");
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(parse_int(item, text));
    }
    start = comma + 1;
  }
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] <= out[i - 1])
      throw Error("list '" + std::string(text) + "' must be strictly increasing");
  return out;
}

std::vector<int> orders_from_degrees(const std::vector<int>& degrees) {
  std::vector<int> out;
  for (int deg : degrees) {
    if (deg < 2 || deg % 2 != 0)
      throw Error("degree " + std::to_string(deg) + " is not an even moment degree >= 2");
    out.push_back(deg / 2);
  }
  return out;
}

std::size_t parse_count(std::string_view text) {
  const std::string s(trim(text));
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error("invalid count '" + s + "'");
  }
  if (used != s.size() || !(v >= 0) || v > 1e15 || v != std::floor(v))
    throw Error("invalid count '" + s + "'");
  return static_cast<std::size_t>(v);
}

ProblemSpec mode_spec(const RunConfig& cfg, const Problem& problem) {
  ProblemSpec s = problem.spec;
  s.basis = cfg.basis;
  s.objective = MultiPoly();
  switch (cfg.mode) {
    case RunMode::Upper:
      s.mode = Mode::Upper;
      if (cfg.objective == ObjectiveChoice::Custom) {
        if (!problem.p) throw Error("--objective custom needs a \"p\" field in the problem file");
        s.objective = *problem.p;
      } else if (cfg.objective == ObjectiveChoice::GProduct) {
        MultiPoly prod = MultiPoly::constant(s.n, 1.0);
        for (const auto& g : s.constraints) prod = multiply(prod, g);
        s.objective = prod;
      }
      break;
    case RunMode::Lower: s.mode = Mode::ComplementLower; break;
    case RunMode::Integrate:
      s.mode = Mode::Integrate;
      if (!problem.f) throw Error("integrate mode needs an \"f\" field in the problem file");
      s.integrand = *problem.f;
      break;
    case RunMode::Lp:
    case RunMode::Oracle: s.mode = Mode::Upper; break;
  }
  return s;
}

void validate(const RunConfig& cfg, const Problem& problem) {
  const bool sdp = cfg.mode == RunMode::Upper || cfg.mode == RunMode::Lower ||
                   cfg.mode == RunMode::Integrate;
  if (cfg.mode != RunMode::Oracle && cfg.orders.empty())
    throw Error("--degrees or --orders is required in " + to_string(cfg.mode) + " mode");
  for (std::size_t i = 1; i < cfg.orders.size(); ++i)
    if (cfg.orders[i] <= cfg.orders[i - 1]) throw Error("degrees must be strictly increasing");
  for (int d : cfg.orders)
    if (d < 1) throw Error("relaxation orders must be >= 1");

  if (cfg.objective != ObjectiveChoice::One && cfg.mode != RunMode::Upper)
    throw Error("--objective " + to_string(cfg.objective) + " is only valid in upper mode");
  if (cfg.objective == ObjectiveChoice::Custom && !problem.p)
    throw Error("--objective custom needs a \"p\" field in the problem file");
  if (cfg.objective == ObjectiveChoice::GProduct && problem.spec.constraints.empty())
    throw Error("--objective g-product needs at least one constraint");
  if (cfg.mode == RunMode::Lower && problem.spec.constraints.size() != 1)
    throw Error("lower mode needs exactly one constraint, the problem has " +
                std::to_string(problem.spec.constraints.size()));
  if (cfg.mode == RunMode::Integrate && !problem.f)
    throw Error("integrate mode needs an \"f\" field in the problem file");
  if (cfg.mode == RunMode::Lp && cfg.basis != Basis::Monomial)
    throw Error("lp mode supports --basis monomial only");
  if (cfg.mode == RunMode::Lp && problem.spec.constraints.empty())
    throw Error("lp mode needs at least one constraint");
  if (cfg.export_mps && cfg.mode != RunMode::Lp)
    throw Error("--export-mps is only valid in lp mode");
  if (cfg.export_sdpa && !sdp)
    throw Error("--export-sdpa is only valid in upper, lower and integrate modes");
  if (cfg.mode == RunMode::Oracle && cfg.samples < 1000)
    throw Error("--samples must be at least 1000");
  if (!(cfg.solver.tol_feas > 0) || !(cfg.solver.tol_gap > 0))
    throw Error("--solver-tol must be positive");
  if (cfg.solver.max_iter < 1) throw Error("--max-iter must be positive");
  if (cfg.quadrature_nodes < 2) throw Error("quadrature nodes must be >= 2");
  if (cfg.oracle_moment_degree < 0) throw Error("oracle moment degree must be >= 0");

  if (sdp) {
    const ProblemSpec s = mode_spec(cfg, problem);
    s.validate();
    const int dmin = s.min_order();
    if (cfg.orders.front() < dmin)
      throw Error("order " + std::to_string(cfg.orders.front()) + " (degree " +
                  std::to_string(2 * cfg.orders.front()) + ") is below the minimum order " +
                  std::to_string(dmin) + " for this problem");
    if (s.mode == Mode::Integrate && s.weighted_moments &&
        s.weighted_moments->degree < 2 * cfg.orders.back())
      throw Error("weight_moments_csv has degree " + std::to_string(s.weighted_moments->degree) +
                  ", the largest order needs " + std::to_string(2 * cfg.orders.back()));
  }
}

int grid_points_per_axis(std::size_t n) { return n == 1 ? 401 : n == 2 ? 201 : 21; }

int exit_code_for(const std::vector<BoundReport>& reports) {
  for (const auto& r : reports)
    if (r.status != conic::SolveStatus::Optimal) return 2;
  return 0;
}

void write_bounds_csv(std::ostream& os, const std::vector<BoundReport>& reports,
                      bool record_timing) {
  os << "degree,primal,dual,gap,status,seconds\n";
  for (const auto& r : reports)
    os << r.moment_degree() << "," << format_double(r.primal) << "," << format_double(r.dual) << ","
       << format_double(r.gap) << "," << conic::to_string(r.status) << ","
       << format_double(record_timing ? r.seconds : 0.0) << "\n";
}

void write_moment_comparison_csv(std::ostream& os, const MomentVector& values,
                                 const std::optional<MomentVector>& oracle) {
  for (std::size_t j = 0; j < values.n; ++j) os << "alpha_" << (j + 1) << ",";
  os << "value,oracle,abs_error\n";
  const auto idx = index_set(values.n, values.degree);
  for (std::size_t r = 0; r < idx.size(); ++r) {
    for (std::size_t j = 0; j < values.n; ++j) os << idx[r][j] << ",";
    os << format_double(values.values[r]) << ",";
    if (oracle && idx[r].degree() <= oracle->degree) {
      const double o = oracle->values[rank(idx[r])];
      os << format_double(o) << "," << format_double(std::abs(values.values[r] - o));
    } else {
      os << ",";
    }
    os << "\n";
  }
}

void write_certificate_grid_csv(std::ostream& os, const std::vector<GridSample>& grid) {
  const std::size_t n = grid.empty() ? 0 : grid.front().x.size();
  for (std::size_t j = 0; j < n; ++j) os << "x" << (j + 1) << ",";
  os << "h\n";
  for (const auto& g : grid) {
    for (double x : g.x) os << format_double(x) << ",";
    os << format_double(g.h) << "\n";
  }
}

json report_json(const RunConfig& cfg, const Problem& problem,
                 const std::vector<BoundReport>& reports,
                 const std::optional<OracleSummary>& oracle, int exit_code,
                 const std::string& error) {
  auto text_or_null = [](const std::string& s) { return s.empty() ? json(nullptr) : json(s); };
  const ProblemSpec& s = problem.spec;
  json j;
  j["schema"] = "volmom-report";
  j["schema_version"] = kReportSchemaVersion;
  j["problem"] = {
      {"name", s.name},
      {"n", s.n},
      {"bounding",
       {{"kind", s.bounding.kind == BoundingSet::Kind::Box ? "box" : "ball"},
        {"a", s.bounding.a}}},
      {"constraints", problem.constraint_text},
      {"p", text_or_null(problem.p_text)},
      {"f", text_or_null(problem.f_text)},
      {"weight_moments_csv",
       problem.weight_moments_csv ? json(problem.weight_moments_csv->string()) : json(nullptr)},
      {"ball_constraint", s.add_ball_constraint},
  };
  std::vector<int> degrees;
  for (int d : cfg.orders) degrees.push_back(2 * d);
  j["config"] = {
      {"mode", to_string(cfg.mode)},
      {"orders", cfg.orders},
      {"degrees", degrees},
      {"basis", cfg.basis == Basis::Monomial ? "monomial" : "chebyshev"},
      {"objective", to_string(cfg.objective)},
      {"stabilize", cfg.stabilize},
      {"seed", cfg.seed},
      {"samples", cfg.samples},
      {"solver",
       {{"max_iter", cfg.solver.max_iter},
        {"tol_feas", cfg.solver.tol_feas},
        {"tol_gap", cfg.solver.tol_gap},
        {"precision", conic::to_string(cfg.solver.precision)}}},
  };
  json rows = json::array();
  for (const auto& r : reports) {
    json row = {
        {"order", r.order},
        {"degree", r.moment_degree()},
        {"primal", r.primal},
        {"dual", r.dual},
        {"gap", r.gap},
        {"status", conic::to_string(r.status)},
        {"seconds", cfg.record_timing ? r.seconds : 0.0},
        {"iterations", r.iterations},
        {"precision", conic::to_string(r.precision)},
        {"solve_basis", r.solve_basis == Basis::Monomial ? "monomial" : "chebyshev"},
        {"volume_estimate", r.volume_estimate},
        {"certificate_residual", r.certificate ? json(r.certificate->residual) : json(nullptr)},
        {"certificate_relative_residual",
         r.certificate ? json(r.certificate->relative_residual()) : json(nullptr)},
        {"message", text_or_null(r.message)},
    };
    rows.push_back(std::move(row));
  }
  j["reports"] = std::move(rows);
  if (oracle) {
    const McEstimate& mc = oracle->mc;
    json o = {{"monte_carlo",
               {{"samples", mc.samples},
                {"hits", mc.hits},
                {"volume", mc.volume},
                {"std_error", mc.std_error},
                {"ci99", {mc.ci_low, mc.ci_high}}}}};
    if (oracle->quadrature) {
      o["quadrature"] = {{"volume", oracle->quadrature->moments.mass()},
                         {"error_estimate", oracle->quadrature->error_estimate},
                         {"nodes", oracle->quadrature->nodes}};
    } else {
      o["quadrature"] = nullptr;
    }
    o["quadrature_message"] = text_or_null(oracle->quadrature_message);
    j["oracle"] = std::move(o);
  } else {
    j["oracle"] = nullptr;
  }
  j["exit_code"] = exit_code;
  j["error"] = text_or_null(error);
  return j;
}

namespace {

void write_file(const fs::path& path, const std::string& body) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write '" + path.string() + "'");
  os << body;
  if (!os) throw Error("write failed for '" + path.string() + "'");
}

template <class F>
void write_with(const fs::path& path, F&& f) {
  std::ostringstream ss;
  f(ss);
  write_file(path, ss.str());
}

std::optional<MomentVector> oracle_moments(const RunConfig& cfg, const Problem& problem,
                                           int degree, std::string& message) {
  if (cfg.mode == RunMode::Integrate && problem.spec.weighted_moments) {
    message = "no oracle for user-supplied weight moments";
    return std::nullopt;
  }
  try {
    return quad_moments_on_K(problem.spec, degree, cfg.quadrature_nodes).moments;
  } catch (const Error& e) {
    message = std::string("quadrature oracle failed: ") + e.what();
    return std::nullopt;
  }
}

void export_relaxations(const RunConfig& cfg, const ProblemSpec& spec,
                        const HierarchyOptions& hopts, std::ostream& log) {
  for (int d : cfg.orders) {
    if (cfg.export_sdpa) {
      const fs::path path = cfg.out_dir / ("sdp_d" + std::to_string(d) + ".dat-s");
      write_file(path, conic::export_sdpa(build_solver_relaxation(spec, d, hopts).problem));
      log << "wrote " << path.string() << "\n";
    }
    if (cfg.export_mps) {
      const fs::path path = cfg.out_dir / ("lp_d" + std::to_string(d) + ".mps");
      const MomentVector y2 = reference_moments(spec.bounding, lp_moment_degree(spec, d));
      const LpRelaxation lp =
          build_ld(spec, y2, d, cfg.stabilize ? Basis::Chebyshev : Basis::Monomial);
      write_file(path, conic::export_mps(lp.problem));
      log << "wrote " << path.string() << "\n";
    }
  }
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& log) {
  Problem problem;
  std::vector<BoundReport> reports;
  std::optional<OracleSummary> oracle;
  try {
    problem = load_problem(cfg.problem_path);
    validate(cfg, problem);
    fs::create_directories(cfg.out_dir);
    const ProblemSpec spec = mode_spec(cfg, problem);
    HierarchyOptions hopts;
    hopts.solver = cfg.solver;
    hopts.stabilize = cfg.stabilize;
    if (cfg.export_sdpa || cfg.export_mps) export_relaxations(cfg, spec, hopts, log);

    int code = 0;
    if (cfg.mode == RunMode::Oracle) {
      const int degree = cfg.orders.empty() ? cfg.oracle_moment_degree : 2 * cfg.orders.back();
      OracleSummary sum;
      sum.mc = mc_estimate(problem.spec, cfg.samples, cfg.seed, degree);
      try {
        sum.quadrature = quad_moments_on_K(problem.spec, degree, cfg.quadrature_nodes);
      } catch (const Error& e) {
        sum.quadrature_message = std::string("quadrature oracle failed: ") + e.what();
      }
      log << "monte carlo volume " << format_double(sum.mc.volume) << " +- "
          << format_double(sum.mc.std_error) << ", 99% interval [" << format_double(sum.mc.ci_low)
          << ", " << format_double(sum.mc.ci_high) << "]\n";
      if (sum.quadrature)
        log << "quadrature volume " << format_double(sum.quadrature->moments.mass())
            << " (node-doubling error " << format_double(sum.quadrature->error_estimate) << ")\n";
      std::optional<MomentVector> quad;
      if (sum.quadrature) quad = sum.quadrature->moments;
      write_with(cfg.out_dir / "moments.csv",
                 [&](std::ostream& os) { write_moment_comparison_csv(os, sum.mc.moments, quad); });
      oracle = std::move(sum);
    } else {
      if (cfg.mode == RunMode::Lp) {
        reports = run_lp_hierarchy(spec, cfg.orders, cfg.solver, cfg.stabilize);
      } else {
        reports.reserve(cfg.orders.size());
        // One order at a time so progress is visible during long sweeps.
        for (int d : cfg.orders) {
          std::vector<BoundReport> one = run_hierarchy(spec, {d}, hopts);
          reports.push_back(std::move(one.front()));
          const BoundReport& r = reports.back();
          log << "degree " << r.moment_degree() << ": bound " << format_double(r.primal)
              << ", mass " << format_double(r.volume_estimate) << ", gap " << format_double(r.gap) << ", " << conic::to_string(r.status) << ", "
              << conic::to_string(r.precision) << ", " << r.seconds << " s\n";
        }
      }
      if (cfg.mode == RunMode::Lp)
        for (const auto& r : reports)
          log << "degree " << r.moment_degree() << ": bound " << format_double(r.primal) << ", "
              << conic::to_string(r.status) << ", " << r.seconds << " s\n";

      write_with(cfg.out_dir / "bounds.csv",
                 [&](std::ostream& os) { write_bounds_csv(os, reports, cfg.record_timing); });

      auto with_moments = std::find_if(reports.rbegin(), reports.rend(),
                                       [](const BoundReport& r) { return !r.moments.values.empty(); });
      if (with_moments != reports.rend()) {
        std::string msg;
        const auto ref = oracle_moments(cfg, problem, with_moments->moments.degree, msg);
        if (!msg.empty()) log << msg << "\n";
        write_with(cfg.out_dir / "moments.csv", [&](std::ostream& os) {
          write_moment_comparison_csv(os, with_moments->moments, ref);
        });
      }

      auto with_cert = std::find_if(reports.rbegin(), reports.rend(), [](const BoundReport& r) {
        return r.certificate && r.status == conic::SolveStatus::Optimal;
      });
      if (with_cert != reports.rend()) {
        const auto grid = certificate_grid(*with_cert->certificate, spec.bounding,
                                           grid_points_per_axis(spec.n));
        write_with(cfg.out_dir / "certificate_grid.csv",
                   [&](std::ostream& os) { write_certificate_grid_csv(os, grid); });
      }
      code = exit_code_for(reports);
    }
    write_file(cfg.out_dir / "report.json",
               report_json(cfg, problem, reports, oracle, code).dump(2) + "\n");
    return code;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (!ec) {
      try {
        write_file(cfg.out_dir / "report.json",
                   report_json(cfg, problem, reports, oracle, 1, e.what()).dump(2) + "\n");
      } catch (const std::exception&) {
      }
    }
    return 1;
  }
}

}  // namespace volmom::cli
