#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dislospec/dislospec.hpp"

namespace dislospec::cli {

namespace {

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--m", cfg.m_values, "angular momentum block(s)")
      ->delimiter(',')
      ->capture_default_str();
  sub->add_option("--levels", cfg.levels, "number of levels per block")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--M", cfg.radial_terms, "radial basis terms")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--N", cfg.axial_terms, "axial basis terms")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--b-tol", cfg.b_tolerance, "width optimization tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--output", cfg.output, "output path ('-' = stdout)")
      ->capture_default_str();
  sub->add_option("--format", cfg.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  auto* range = sub->add_option("--lambda-range", cfg.lambda_range,
                                "lambda grid as start:stop:step");
  auto* single = sub->add_option("--lambda", cfg.lambda, "single lambda value");
  single->excludes(range);
  // exactly one of the two lambda forms must be present
  sub->callback([&cfg, sub]() {
    if (!cfg.lambda && !cfg.lambda_range)
      throw CLI::RequiredError(sub->get_name() +
                               " requires --lambda or --lambda-range");
  });
}

std::vector<double> parse_range(const std::string& text) {
  double start = 0.0, stop = 0.0, step = 0.0;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  in >> start >> c1 >> stop >> c2 >> step;
  if (in.fail() || c1 != ':' || c2 != ':' || !(step > 0.0) || stop < start)
    throw std::invalid_argument("bad lambda range '" + text +
                                "' (expected start:stop:step, step > 0)");
  std::vector<double> grid;
  for (int i = 0;; ++i) {
    const double v = start + i * step;  // no accumulated drift
    if (v > stop + 0.5 * step) break;
    grid.push_back(v);
  }
  return grid;
}

int write_output(const RunConfig& cfg, const std::string& payload) {
  if (cfg.output == "-") {
    std::cout << payload;
    return exit_ok;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output path '" << cfg.output << "'\n";
    return exit_error;
  }
  out << payload;
  if (!out.flush()) {
    std::cerr << "error: writing '" << cfg.output << "' failed\n";
    return exit_error;
  }
  return exit_ok;
}

std::string chosen_format(const RunConfig& cfg) {
  if (!cfg.format.empty()) return cfg.format;
  return cfg.command == Command::crossings ? "json" : "csv";
}

int run_tabular(const RunConfig& cfg) {
  const std::vector<double> grid = lambda_grid(cfg);
  SweepOptions opts;
  opts.optimize.b_tolerance = cfg.b_tolerance;
  opts.estimate_truncation = !cfg.no_truncation_estimate;

  std::vector<SpectrumRecord> all;
  bool warnings = false;
  for (const int m : cfg.m_values) {
    std::vector<SpectrumRecord> records =
        sweep(m, grid, cfg.levels, cfg.radial_terms, cfg.axial_terms, opts);
    for (const auto& rec : records) {
      if (rec.failed) {
        std::cerr << "warning: m=" << rec.m << " lambda=" << rec.lambda
                  << " failed: " << rec.message << '\n';
        warnings = true;
      } else if (!rec.message.empty()) {
        std::cerr << "warning: m=" << rec.m << " lambda=" << rec.lambda << ": "
                  << rec.message << '\n';
        warnings = true;
      } else if (!rec.converged) {
        warnings = true;
      }
    }
    all.insert(all.end(), std::make_move_iterator(records.begin()),
               std::make_move_iterator(records.end()));
  }

  std::ostringstream payload;
  if (chosen_format(cfg) == "csv")
    write_records_csv(payload, all);
  else
    write_records_json(payload, all);
  const int rc = write_output(cfg, payload.str());
  return rc != exit_ok ? rc : (warnings ? exit_warnings : exit_ok);
}

int run_crossings(const RunConfig& cfg) {
  const std::vector<double> grid = lambda_grid(cfg);
  SweepOptions opts;
  opts.optimize.b_tolerance = cfg.b_tolerance;
  opts.estimate_truncation = false;

  CrossingScan merged;
  bool warnings = false;
  for (const int m : cfg.m_values) {
    const std::vector<SpectrumRecord> records =
        sweep(m, grid, cfg.levels, cfg.radial_terms, cfg.axial_terms, opts);
    CrossingScan scan = detect_crossings(records, cfg.refine_tol, opts.optimize);
    merged.crossings.insert(merged.crossings.end(), scan.crossings.begin(),
                            scan.crossings.end());
    merged.warnings.insert(merged.warnings.end(), scan.warnings.begin(),
                           scan.warnings.end());
  }
  for (const auto& w : merged.warnings) {
    std::cerr << "warning: " << w << '\n';
    warnings = true;
  }

  std::ostringstream payload;
  if (chosen_format(cfg) == "csv")
    write_crossings_csv(payload, merged);
  else
    write_crossings_json(payload, merged);
  const int rc = write_output(cfg, payload.str());
  return rc != exit_ok ? rc : (warnings ? exit_warnings : exit_ok);
}

int run_converge(const RunConfig& cfg) {
  const std::vector<double> grid = lambda_grid(cfg);
  ConvergeOptions opts;
  opts.optimize.b_tolerance = cfg.b_tolerance;
  opts.max_size = cfg.max_size;

  std::vector<SpectrumRecord> all;
  bool warnings = false;
  for (const int m : cfg.m_values) {
    for (const double lambda : grid) {
      SpectrumRecord rec = converge(m, lambda, cfg.levels, cfg.converge_tol, opts);
      if (rec.failed) {
        std::cerr << "warning: m=" << m << " lambda=" << lambda
                  << " failed: " << rec.message << '\n';
        warnings = true;
      } else if (!rec.converged) {
        std::cerr << "warning: m=" << m << " lambda=" << lambda
                  << " not converged: " << rec.message << '\n';
        warnings = true;
      }
      all.push_back(std::move(rec));
    }
  }

  std::ostringstream payload;
  if (chosen_format(cfg) == "csv")
    write_records_csv(payload, all);
  else
    write_records_json(payload, all);
  const int rc = write_output(cfg, payload.str());
  return rc != exit_ok ? rc : (warnings ? exit_warnings : exit_ok);
}

int run_oracle_check(const RunConfig& cfg) {
  const std::vector<double> grid = lambda_grid(cfg);
  ConvergeOptions copts;
  copts.optimize.b_tolerance = cfg.b_tolerance;
  copts.max_size = cfg.max_size;

  std::ostringstream payload;
  payload << "lambda,m,level,rr_energy,fd_energy,rel_diff\n";
  bool warnings = false;
  for (const int m : cfg.m_values) {
    for (const double lambda : grid) {
      const SpectrumRecord rr = converge(m, lambda, cfg.levels, cfg.converge_tol, copts);
      if (rr.failed) {
        std::cerr << "warning: variational solve failed at m=" << m
                  << " lambda=" << lambda << ": " << rr.message << '\n';
        warnings = true;
        continue;
      }
      GridSpec gspec{cfg.box, cfg.box, cfg.fd_points, cfg.fd_points};
      const std::vector<double> fd =
          fd_lowest_extrapolated({lambda, m}, gspec, cfg.levels);
      for (int r = 0; r < cfg.levels; ++r) {
        const double rel = std::abs(rr.energies[r] - fd[r]) /
                           std::max(std::abs(fd[r]), 1e-30);
        payload << format_sig(lambda) << ',' << m << ',' << r << ','
                << format_sig(rr.energies[r]) << ',' << format_sig(fd[r]) << ','
                << format_sig(rel) << '\n';
        if (rel > cfg.check_tol) {
          std::cerr << "warning: m=" << m << " lambda=" << lambda << " level "
                    << r << " deviates by " << rel << " (allowed "
                    << cfg.check_tol << ")\n";
          warnings = true;
        }
      }
    }
  }
  const int rc = write_output(cfg, payload.str());
  return rc != exit_ok ? rc : (warnings ? exit_warnings : exit_ok);
}

}  // namespace

std::vector<double> lambda_grid(const RunConfig& cfg) {
  if (cfg.lambda_range) return parse_range(*cfg.lambda_range);
  if (cfg.lambda) return {*cfg.lambda};
  throw std::invalid_argument("no lambda value or range given");
}

ParseResult parse_args(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app{
      "Bound states of the harmonic oscillator threaded by a screw "
      "dislocation: variational spectra, dislocation-parameter sweeps, "
      "avoided-crossing reports and finite-difference cross-checks."};
  app.require_subcommand(1);
  app.fallthrough(false);

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "levels of one or more m-blocks at a single lambda");
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "levels along a lambda grid (CSV/JSON table)");
  CLI::App* crossings = app.add_subcommand(
      "crossings", "locate and refine avoided crossings along a lambda grid");
  CLI::App* converge_cmd = app.add_subcommand(
      "converge", "grow the basis until the levels settle");
  CLI::App* oracle = app.add_subcommand(
      "oracle-check", "compare variational levels against the finite-difference solver");

  if (argc <= 1) {
    std::cerr << app.help();
    return {std::nullopt, exit_error};
  }

  add_common(spectrum, cfg);
  add_common(sweep_cmd, cfg);
  add_common(crossings, cfg);
  add_common(converge_cmd, cfg);
  add_common(oracle, cfg);

  crossings->add_option("--refine-tol", cfg.refine_tol,
                        "lambda width of crossing refinement")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  for (CLI::App* sub : {converge_cmd, oracle}) {
    sub->add_option("--tol", cfg.converge_tol, "per-level convergence target")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--max-size", cfg.max_size, "basis size cap")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }
  oracle->add_option("--grid", cfg.fd_points, "finite-difference points per direction")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  oracle->add_option("--box", cfg.box, "finite-difference box half-width")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  oracle->add_option("--check-tol", cfg.check_tol, "allowed relative deviation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep_cmd->add_flag("--no-truncation-estimate", cfg.no_truncation_estimate,
                      "skip the basis-escalation error probe");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return {std::nullopt, app.exit(e)};
  }

  if (spectrum->parsed()) cfg.command = Command::spectrum;
  if (sweep_cmd->parsed()) cfg.command = Command::sweep;
  if (crossings->parsed()) cfg.command = Command::crossings;
  if (converge_cmd->parsed()) cfg.command = Command::converge;
  if (oracle->parsed()) cfg.command = Command::oracle_check;
  return {cfg, exit_ok};
}

int run(const RunConfig& cfg) {
  try {
    switch (cfg.command) {
      case Command::spectrum:
      case Command::sweep:
        return run_tabular(cfg);
      case Command::crossings:
        return run_crossings(cfg);
      case Command::converge:
        return run_converge(cfg);
      case Command::oracle_check:
        return run_oracle_check(cfg);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_error;
  }
  return exit_error;
}

}  // namespace dislospec::cli
