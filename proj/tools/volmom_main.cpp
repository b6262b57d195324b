#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "volmom/cli.hpp"

int main(int argc, char** argv) {
  using namespace volmom;
  CLI::App app{"Volume and moment bounds for compact basic semi-algebraic sets"};

  std::string problem, mode = "upper", degrees, orders, basis = "monomial", objective = "one";
  std::string out = "out", samples = "1e6", precision = "auto";
  std::uint64_t seed = 1;
  double tol = 1e-8;
  int max_iter = 200, nodes = 64, oracle_degree = 2;
  bool export_sdpa = false, export_mps = false, no_stabilize = false, no_timing = false;

  app.add_option("problem", problem, "JSON problem file")->required();
  app.add_option("--mode", mode, "upper | lower | lp | integrate | oracle")
      ->capture_default_str();
  app.add_option("--degrees", degrees, "moment degrees 2d, e.g. 4,8 or 4..12 (even)");
  app.add_option("--orders", orders, "relaxation orders d, e.g. 2..20");
  app.add_option("--basis", basis, "monomial | chebyshev")->capture_default_str();
  app.add_option("--objective", objective, "one | g-product | custom (upper mode)")
      ->capture_default_str();
  app.add_option("--out", out, "output directory")->capture_default_str();
  app.add_option("--seed", seed, "Monte Carlo seed")->capture_default_str();
  app.add_option("--samples", samples, "Monte Carlo sample count")->capture_default_str();
  app.add_option("--solver-tol", tol, "feasibility and gap tolerance")->capture_default_str();
  app.add_option("--max-iter", max_iter, "interior-point iteration limit")->capture_default_str();
  app.add_option("--precision", precision, "double | double-double | quad | auto")
      ->capture_default_str();
  app.add_option("--quad-nodes", nodes, "Gauss-Legendre nodes per axis for the quadrature oracle")
      ->capture_default_str();
  app.add_option("--oracle-degree", oracle_degree,
                 "moment degree of oracle tables when no degrees are given")
      ->capture_default_str();
  app.add_flag("--export-sdpa", export_sdpa, "write sdp_d<d>.dat-s per order");
  app.add_flag("--export-mps", export_mps, "write lp_d<d>.mps per order (lp mode)");
  app.add_flag("--no-stabilize", no_stabilize,
               "hand power-basis relaxations to the solver without the Chebyshev change of basis");
  app.add_flag("--no-timing", no_timing, "write 0 in the seconds column");
  auto* deg_opt = app.get_option("--degrees");
  auto* ord_opt = app.get_option("--orders");
  deg_opt->excludes(ord_opt);

  CLI11_PARSE(app, argc, argv);

  cli::RunConfig cfg;
  try {
    cfg.problem_path = problem;
    cfg.mode = cli::parse_run_mode(mode);
    if (!degrees.empty()) cfg.orders = cli::orders_from_degrees(cli::parse_int_list(degrees));
    if (!orders.empty()) cfg.orders = cli::parse_int_list(orders);
    cfg.basis = cli::parse_basis(basis);
    cfg.objective = cli::parse_objective_choice(objective);
    cfg.out_dir = out;
    cfg.seed = seed;
    cfg.samples = cli::parse_count(samples);
    cfg.solver.tol_feas = cfg.solver.tol_gap = tol;
    cfg.solver.max_iter = max_iter;
    cfg.solver.precision = cli::parse_precision(precision);
    cfg.export_sdpa = export_sdpa;
    cfg.export_mps = export_mps;
    cfg.stabilize = !no_stabilize;
    cfg.record_timing = !no_timing;
    cfg.quadrature_nodes = nodes;
    cfg.oracle_moment_degree = oracle_degree;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return cli::run(cfg, std::cerr);
}
