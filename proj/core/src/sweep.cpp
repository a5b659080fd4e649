#include "dislospec/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dislospec/errors.hpp"
#include "dislospec/threading.hpp"

namespace dislospec {

namespace {

SpectrumRecord solve_point(int m, double lambda, int levels, int radial_terms,
                           int axial_terms, const OptimizeConfig& cfg) {
  SpectrumRecord rec;
  rec.lambda = lambda;
  rec.m = m;
  rec.radial_terms = radial_terms;
  rec.axial_terms = axial_terms;
  try {
    OptimizeResult opt = optimize_b({lambda, m}, radial_terms, axial_terms, cfg);
    const int avail = static_cast<int>(opt.solution.energies.size());
    if (avail < levels) {
      std::ostringstream msg;
      msg << "only " << avail << " levels retained (" << opt.solution.discarded
          << " discarded), " << levels << " requested";
      rec.failed = true;
      rec.message = msg.str();
      return rec;
    }
    rec.b_opt = opt.b_opt;
    rec.energies.assign(opt.solution.energies.begin(),
                        opt.solution.energies.begin() + levels);
    if (opt.bracket_warning) rec.message = "width bracket hit the search range";
  } catch (const std::exception& e) {
    rec.failed = true;
    rec.message = e.what();
  }
  return rec;
}

}  // namespace

std::vector<SpectrumRecord> sweep(int m, const std::vector<double>& grid,
                                  int levels, int radial_terms, int axial_terms,
                                  const SweepOptions& opts) {
  if (levels < 1) throw std::invalid_argument("sweep: levels must be positive");
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw std::invalid_argument("sweep: lambda grid must ascend");

  std::vector<SpectrumRecord> records(grid.size());
  parallel_for(static_cast<int>(grid.size()), opts.threads, [&](int g) {
    records[g] = solve_point(m, grid[g], levels, radial_terms, axial_terms,
                             opts.optimize);
  });

  if (opts.estimate_truncation && !records.empty()) {
    // Re-solve with a bigger basis at the ends and the middle of the grid;
    // the per-level max over the probes stands in for the truncation error
    // of the whole sweep.
    std::vector<std::size_t> probes = {0, grid.size() / 2, grid.size() - 1};
    probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
    std::vector<double> estimate(levels, 0.0);
    bool ok = false;
    for (const std::size_t p : probes) {
      if (records[p].failed) continue;
      const SpectrumRecord refined =
          solve_point(m, grid[p], levels, radial_terms + 2, axial_terms + 2,
                      opts.optimize);
      if (refined.failed) continue;
      ok = true;
      for (int r = 0; r < levels; ++r)
        estimate[r] = std::max(estimate[r],
                               std::abs(refined.energies[r] - records[p].energies[r]));
    }
    if (ok) {
      const bool converged =
          *std::max_element(estimate.begin(), estimate.end()) <= opts.truncation_tol;
      for (auto& rec : records) {
        if (rec.failed) continue;
        rec.truncation_error = estimate;
        rec.converged = converged;
      }
    }
  }
  return records;
}

namespace {

double gap_at(int m, double lambda, int lower, int radial_terms, int axial_terms,
              const OptimizeConfig& cfg) {
  OptimizeResult opt = optimize_b({lambda, m}, radial_terms, axial_terms, cfg);
  if (static_cast<int>(opt.solution.energies.size()) < lower + 2)
    throw degenerate_basis_error("crossing refinement lost levels");
  return opt.solution.energies[lower + 1] - opt.solution.energies[lower];
}

}  // namespace

CrossingScan detect_crossings(const std::vector<SpectrumRecord>& records,
                              double refine_tol, const OptimizeConfig& optimize) {
  CrossingScan scan;
  if (records.size() < 3) return scan;
  const int m = records.front().m;
  const std::size_t levels = records.front().energies.size();
  for (const auto& rec : records) {
    if (rec.failed)
      throw std::invalid_argument("detect_crossings: sweep contains failed points");
    if (rec.m != m || rec.energies.size() != levels)
      throw std::invalid_argument("detect_crossings: records disagree on m or level count");
  }
  for (std::size_t i = 1; i < records.size(); ++i)
    if (!(records[i].lambda > records[i - 1].lambda))
      throw std::invalid_argument("detect_crossings: grid must strictly ascend");
  if (levels < 2) return scan;

  // Adiabatic index is globally consistent along a same-m sweep (levels of
  // equal m do not cross), so the lambda = 0 shell energies identify what
  // each level pair stems from.
  const std::vector<double> origin =
      exact_block_spectrum(m, static_cast<int>(levels));
  const int radial_terms = records.front().radial_terms;
  const int axial_terms = records.front().axial_terms;
  const double inv_phi = 0.6180339887498949;

  for (std::size_t r = 0; r + 1 < levels; ++r) {
    std::vector<double> gap(records.size());
    for (std::size_t i = 0; i < records.size(); ++i)
      gap[i] = records[i].energies[r + 1] - records[i].energies[r];

    for (std::size_t i = 1; i + 1 < records.size(); ++i) {
      if (!(gap[i] < gap[i - 1] && gap[i] <= gap[i + 1])) continue;

      // golden-section refinement of the bracketed gap minimum
      double a = records[i - 1].lambda;
      double d = records[i + 1].lambda;
      double best_lambda = records[i].lambda;
      double best_gap = gap[i];
      try {
        double c1 = d - inv_phi * (d - a);
        double c2 = a + inv_phi * (d - a);
        double g1 = gap_at(m, c1, static_cast<int>(r), radial_terms, axial_terms, optimize);
        double g2 = gap_at(m, c2, static_cast<int>(r), radial_terms, axial_terms, optimize);
        auto track = [&](double lam, double g) {
          if (g < best_gap) {
            best_gap = g;
            best_lambda = lam;
          }
        };
        track(c1, g1);
        track(c2, g2);
        while (d - a > refine_tol) {
          if (g1 <= g2) {
            d = c2;
            c2 = c1;
            g2 = g1;
            c1 = d - inv_phi * (d - a);
            g1 = gap_at(m, c1, static_cast<int>(r), radial_terms, axial_terms, optimize);
            track(c1, g1);
          } else {
            a = c1;
            c1 = c2;
            g1 = g2;
            c2 = a + inv_phi * (d - a);
            g2 = gap_at(m, c2, static_cast<int>(r), radial_terms, axial_terms, optimize);
            track(c2, g2);
          }
        }
      } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << "refinement of levels (" << r << "," << r + 1 << ") near lambda="
            << best_lambda << " failed: " << e.what();
        scan.warnings.push_back(msg.str());
        continue;
      }

      if (best_gap <= 1e-10) {
        std::ostringstream msg;
        msg << "gap of levels (" << r << "," << r + 1 << ") at lambda="
            << best_lambda << " is numerically degenerate (" << best_gap
            << ") -- increase basis";
        scan.warnings.push_back(msg.str());
        continue;
      }
      CrossingReport report;
      report.m = m;
      report.lower_level = static_cast<int>(r);
      report.upper_level = static_cast<int>(r + 1);
      report.lambda_star = best_lambda;
      report.gap = best_gap;
      report.multiplet_origin = {static_cast<int>(std::lround(origin[r])),
                                 static_cast<int>(std::lround(origin[r + 1]))};
      scan.crossings.push_back(report);
    }
  }
  std::sort(scan.crossings.begin(), scan.crossings.end(),
            [](const CrossingReport& x, const CrossingReport& y) {
              return x.lambda_star < y.lambda_star;
            });
  return scan;
}

SpectrumRecord converge(int m, double lambda, int levels, double tol,
                        const ConvergeOptions& opts) {
  if (!(tol > 0.0)) throw std::invalid_argument("converge: tol must be positive");
  if (levels < 1) throw std::invalid_argument("converge: levels must be positive");

  SpectrumRecord rec;
  rec.lambda = lambda;
  rec.m = m;
  rec.converged = false;
  std::vector<double> previous;
  int previous_discarded = 0;

  for (int size = opts.start_size; size <= opts.max_size; size += opts.step) {
    OptimizeResult opt;
    try {
      opt = optimize_b({lambda, m}, size, size, opts.optimize);
    } catch (const std::exception& e) {
      rec.failed = true;
      rec.message = e.what();
      return rec;
    }
    const int avail = static_cast<int>(opt.solution.energies.size());
    if (avail < levels) {
      previous_discarded = opt.solution.discarded;
      continue;  // basis still too small for the requested levels
    }
    std::vector<double> current(opt.solution.energies.begin(),
                                opt.solution.energies.begin() + levels);
    rec.radial_terms = size;
    rec.axial_terms = size;
    rec.b_opt = opt.b_opt;
    rec.energies = current;
    if (!previous.empty()) {
      rec.truncation_error.assign(levels, 0.0);
      double worst = 0.0;
      for (int r = 0; r < levels; ++r) {
        rec.truncation_error[r] = std::abs(current[r] - previous[r]);
        worst = std::max(worst, rec.truncation_error[r]);
      }
      if (worst < tol) {
        rec.converged = true;
        return rec;
      }
      if (opt.solution.discarded > previous_discarded) {
        rec.message = "overlap regularization started discarding directions";
        return rec;
      }
    }
    previous = std::move(current);
    previous_discarded = opt.solution.discarded;
  }
  if (!rec.energies.empty())
    rec.message = "size cap reached before the tolerance was met";
  else {
    rec.failed = true;
    rec.message = "no basis size retained the requested level count";
  }
  return rec;
}

}  // namespace dislospec
