#pragma once

#include <vector>

#include "dislospec/model.hpp"

namespace dislospec {

/// Finite-difference discretization box. The radial grid is staggered,
/// rho_p = (p + 1/2) h_rho, which sidesteps the rho = 0 coordinate
/// singularity with second-order accuracy; Dirichlet walls sit at
/// rho = rho_max and z = +/- z_max.
struct GridSpec {
  double rho_max = 7.0;
  double z_max = 7.0;
  int rho_points = 200;
  int z_points = 200;
};

struct FdOptions {
  double residual_tol = 1e-8;
  int max_iterations = 200;
  int block_extra = 6;  // guard vectors beyond the requested count
};

/// Lowest `levels` eigenvalues of the reduced operator discretized with the
/// conservative radial stencil and central differences in z, computed by
/// shift-invert subspace iteration on the (explicitly symmetrized) complex
/// Hermitian matrix. Independent of the Rayleigh-Ritz path; used to
/// cross-validate it. Throws convergence_error with the residual history if
/// the iteration stalls.
std::vector<double> fd_lowest(const ModelParams& params, const GridSpec& grid,
                              int levels, const FdOptions& opts = {});

/// Richardson extrapolation over `grid` and the same box at half resolution;
/// cancels the leading h^2 discretization error.
std::vector<double> fd_lowest_extrapolated(const ModelParams& params,
                                           const GridSpec& grid, int levels,
                                           const FdOptions& opts = {});

}  // namespace dislospec
