#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dislospec/optimize.hpp"

namespace dislospec {

/// One grid point of a dislocation-parameter sweep: the lowest levels of an
/// m-block at the optimized basis width. Levels are adiabatic (sorted order).
struct SpectrumRecord {
  double lambda = 0.0;
  int m = 0;
  std::vector<double> energies;  // ascending, `levels` entries
  double b_opt = 0.0;
  int radial_terms = 0;
  int axial_terms = 0;
  bool converged = true;
  std::vector<double> truncation_error;  // per-level estimate, if requested
  bool failed = false;
  std::string message;
};

struct SweepOptions {
  OptimizeConfig optimize;
  bool estimate_truncation = true;  // re-solve with (M+2, N+2) at ends + middle
  double truncation_tol = 1e-6;
  int threads = 0;  // 0 = auto (capped by DISLOSPEC_THREADS)
};

/// Solves every grid point independently (grid must ascend). Solver failures
/// mark the affected record failed instead of aborting the sweep.
std::vector<SpectrumRecord> sweep(int m, const std::vector<double>& grid,
                                  int levels, int radial_terms, int axial_terms,
                                  const SweepOptions& opts = {});

/// A refined gap minimum between two adjacent adiabatic levels of equal m.
/// multiplet_origin holds the lambda=0 shell energies the two levels stem
/// from (equal values mean an intra-multiplet avoided crossing).
struct CrossingReport {
  int m = 0;
  int lower_level = 0;
  int upper_level = 0;
  double lambda_star = 0.0;
  double gap = 0.0;
  std::optional<std::pair<int, int>> multiplet_origin;
};

struct CrossingScan {
  std::vector<CrossingReport> crossings;  // sorted by lambda_star
  std::vector<std::string> warnings;      // e.g. numerically degenerate minima
};

/// Locates interior local minima of every adjacent-level gap along the
/// sweep and refines each by golden-section in lambda (re-solving the pencil
/// at every probe) down to width refine_tol. Gap minima at or below 1e-10
/// are reported as warnings, not crossings.
CrossingScan detect_crossings(const std::vector<SpectrumRecord>& records,
                              double refine_tol = 1e-5,
                              const OptimizeConfig& optimize = {});

struct ConvergeOptions {
  int start_size = 4;
  int step = 2;
  int max_size = 20;
  OptimizeConfig optimize;
};

/// Basis-escalation study at one (m, lambda): grows M = N until every
/// tracked level moves less than tol between consecutive sizes, the overlap
/// regularization starts discarding directions, or the size cap is reached.
/// The returned record carries the last per-level deltas as its
/// truncation_error.
SpectrumRecord converge(int m, double lambda, int levels, double tol,
                        const ConvergeOptions& opts = {});

}  // namespace dislospec
