#pragma once

#include <optional>
#include <string>
#include <vector>

namespace dislospec::cli {

enum class Command { spectrum, sweep, crossings, converge, oracle_check };

/// Fully resolved invocation. Every field has a documented default (see
/// --help); all algorithms are deterministic, so identical configs produce
/// byte-identical outputs.
struct RunConfig {
  Command command = Command::spectrum;
  std::vector<int> m_values = {0};
  std::optional<double> lambda;              // single point
  std::optional<std::string> lambda_range;   // "start:stop:step"
  int levels = 8;
  int radial_terms = 10;   // M
  int axial_terms = 10;    // N
  double b_tolerance = 1e-8;
  double refine_tol = 1e-5;       // crossings: lambda refinement width
  double converge_tol = 1e-7;     // converge: per-level target
  int max_size = 20;              // converge: basis size cap
  double check_tol = 5e-3;        // oracle-check: allowed relative deviation
  int fd_points = 200;            // oracle-check: grid points per direction
  double box = 7.0;               // oracle-check: domain half-width
  bool no_truncation_estimate = false;
  std::string output = "-";       // "-" = stdout
  std::string format;             // csv | json; empty = command default
};

/// Exit codes: 0 success, 1 error, 2 completed with numerical warnings.
enum : int { exit_ok = 0, exit_error = 1, exit_warnings = 2 };

/// Parses argv. Returns the config, or an exit code when the invocation was
/// handled entirely by the parser (help, usage errors).
struct ParseResult {
  std::optional<RunConfig> config;
  int exit_code = exit_ok;
};
ParseResult parse_args(int argc, const char* const* argv);

/// Expands "start:stop:step" into start + i*step, keeping points up to
/// half a step past stop so inclusive endpoints do not fall prey to float
/// drift. A bare lambda yields a one-point grid.
std::vector<double> lambda_grid(const RunConfig& cfg);

/// Executes the run and writes the outputs.
int run(const RunConfig& cfg);

}  // namespace dislospec::cli
