#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "volmom/conic.hpp"
#include "volmom/oracles.hpp"
#include "volmom/sdp_hierarchy.hpp"

namespace volmom::cli {

enum class RunMode { Upper, Lower, Lp, Integrate, Oracle };
enum class ObjectiveChoice { One, GProduct, Custom };

std::string to_string(RunMode m);
std::string to_string(ObjectiveChoice o);
RunMode parse_run_mode(std::string_view s);
ObjectiveChoice parse_objective_choice(std::string_view s);
Basis parse_basis(std::string_view s);
conic::Precision parse_precision(std::string_view s);

/// Problem file contents. `spec` holds K, B and the parsed p / f; whether they
/// are used depends on the run mode.
struct Problem {
  ProblemSpec spec;
  std::optional<MultiPoly> p;
  std::optional<MultiPoly> f;
  /// Resolved against the problem file's directory.
  std::optional<std::filesystem::path> weight_moments_csv;
  /// Source text of each polynomial, for the report.
  std::vector<std::string> constraint_text;
  std::string p_text;
  std::string f_text;
};

/// Parses the JSON problem format:
///   {"name": "...", "n": 2, "bounding": {"kind": "box", "a": 1},
///    "constraints": ["..."], "p": "...", "f": "...",
///    "weight_moments_csv": "w.csv", "ball_constraint": true}
/// JSON errors are reported as ParseError with line and column; polynomial
/// errors name the offending field. Unknown keys are rejected.
Problem parse_problem(std::string_view text, const std::filesystem::path& base_dir = {});
Problem load_problem(const std::filesystem::path& file);

/// "2..20", "4,8", "2..6,10" into an increasing list.
std::vector<int> parse_int_list(std::string_view text);
/// Moment degrees (even, >= 2) to relaxation orders.
std::vector<int> orders_from_degrees(const std::vector<int>& degrees);
/// Nonnegative integer count, accepting exponent forms such as "1e6".
std::size_t parse_count(std::string_view text);

struct RunConfig {
  std::filesystem::path problem_path;
  RunMode mode = RunMode::Upper;
  /// Relaxation orders d (moment degree 2d).
  std::vector<int> orders;
  Basis basis = Basis::Monomial;
  ObjectiveChoice objective = ObjectiveChoice::One;
  std::filesystem::path out_dir = "out";
  conic::SolverOptions solver;
  bool stabilize = true;
  std::uint64_t seed = 1;
  std::size_t samples = 1'000'000;
  bool export_sdpa = false;
  bool export_mps = false;
  /// Writes 0 in the seconds column so repeated runs give identical files.
  bool record_timing = true;
  int quadrature_nodes = 64;
  /// Moment degree of oracle-mode tables when no orders are given.
  int oracle_moment_degree = 2;
};

/// Checks the config on its own and against the problem; throws Error with a
/// message naming the offending option. Runs before any solve.
void validate(const RunConfig& cfg, const Problem& problem);

/// The ProblemSpec handed to the hierarchy for this mode.
ProblemSpec mode_spec(const RunConfig& cfg, const Problem& problem);

inline constexpr int kReportSchemaVersion = 1;

struct OracleSummary {
  McEstimate mc;
  std::optional<QuadMoments> quadrature;
  std::string quadrature_message;
};

/// report.json body. `problem` and `cfg` describe the run; `error` is set when
/// the run failed before producing reports.
nlohmann::json report_json(const RunConfig& cfg, const Problem& problem,
                           const std::vector<BoundReport>& reports,
                           const std::optional<OracleSummary>& oracle, int exit_code,
                           const std::string& error = {});

void write_bounds_csv(std::ostream& os, const std::vector<BoundReport>& reports,
                      bool record_timing = true);
/// alpha_1..alpha_n,value,oracle,abs_error. Oracle cells are empty when no
/// oracle moment is available for that row.
void write_moment_comparison_csv(std::ostream& os, const MomentVector& values,
                                 const std::optional<MomentVector>& oracle);
void write_certificate_grid_csv(std::ostream& os, const std::vector<GridSample>& grid);

/// 401 in 1D, 201 in 2D, 21 otherwise.
int grid_points_per_axis(std::size_t n);

/// 0 when every report is Optimal, 2 otherwise.
int exit_code_for(const std::vector<BoundReport>& reports);

/// Loads the problem, validates, solves, writes bounds.csv, moments.csv,
/// certificate_grid.csv and report.json under cfg.out_dir. Returns 0, 2, or 1
/// on error (after writing report.json when the output directory is usable).
int run(const RunConfig& cfg, std::ostream& log);

}  // namespace volmom::cli
