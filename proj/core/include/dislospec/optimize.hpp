#pragma once

#include "dislospec/gevp.hpp"
#include "dislospec/model.hpp"

namespace dislospec {

enum class Objective {
  lowest_eigenvalue,  // default: minimize the block's lowest level
  sum_of_lowest,      // minimize the sum of the lowest `level_count` levels
  target_level,       // minimize level index `level_count`
};

struct OptimizeConfig {
  Objective objective = Objective::lowest_eigenvalue;
  int level_count = 1;        // K for sum_of_lowest, r for target_level
  double b_tolerance = 1e-8;  // final bracket width in b
  int max_iterations = 200;
  double b_min = 1e-6;        // search confined to (b_min, b_max]
  double b_max = 2.0;
};

struct OptimizeResult {
  double b_opt = 0.0;
  EigenSolution solution;      // pencil solution at b_opt
  bool bracket_warning = false; // no interior bracket: best found returned
  int evaluations = 0;
};

/// Radial exponent slaved to the axial width: s = sqrt(b lambda^2 + m^2).
double fix_s(const ModelParams& params, double b);

/// Minimizes the configured objective over the nonlinear parameter b by
/// golden-section search after a geometric bracket expansion seeded at the
/// simple-ansatz width. Every trial b reassembles the basis with
/// s = fix_s(params, b) and re-solves the pencil.
OptimizeResult optimize_b(const ModelParams& params, int radial_terms,
                          int axial_terms, const OptimizeConfig& cfg = {});

}  // namespace dislospec
