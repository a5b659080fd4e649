#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dislospec/assembly.hpp"

namespace dislospec {

/// Solution of the pencil H c = E S c. Energies ascend; coefficient columns
/// are aligned with them, S-orthonormal, and phase-fixed (first nonzero
/// coordinate real positive) so repeated solves are bit-stable.
struct EigenSolution {
  std::vector<double> energies;
  Eigen::MatrixXcd coefficients;
  double overlap_condition = 0.0;  // ratio of extreme overlap eigenvalues
  int discarded = 0;               // basis directions dropped by regularization
  double max_residual = 0.0;       // max ||H c - E S c|| / ||H c||
};

struct PencilOptions {
  double condition_limit = 1e12;    // beyond this, use canonical orthogonalization
  double discard_threshold = 1e-12; // relative overlap-eigenvalue cutoff
};

/// Solves the generalized Hermitian eigenproblem. The default path is
/// Cholesky reduction of S; if S is numerically indefinite or its condition
/// exceeds the limit, falls back to canonical orthogonalization (diagonalize
/// S, drop near-null directions, solve in the retained subspace).
/// Throws std::invalid_argument on dimension mismatch and
/// degenerate_basis_error when nothing survives the discard threshold.
EigenSolution solve_pencil(const MatrixPair& mats, const PencilOptions& opts = {});

}  // namespace dislospec
