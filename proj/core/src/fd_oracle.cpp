#include "dislospec/fd_oracle.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "dislospec/errors.hpp"

namespace dislospec {

namespace {

using SparseC = Eigen::SparseMatrix<std::complex<double>>;

// Discrete reduced operator, symmetrized under the rho-weighted inner
// product via the similarity diag(sqrt(rho)) A diag(1/sqrt(rho)). The
// conservative radial stencil keeps the weighted matrix Hermitian, and the
// staggered grid makes the rho = 0 flux vanish without a boundary row.
SparseC build_operator(const ModelParams& params, const GridSpec& grid) {
  const int np = grid.rho_points;
  const int nz = grid.z_points;
  const double h_rho = grid.rho_max / np;
  const double h_z = 2.0 * grid.z_max / (nz + 1);
  const double lam = params.lambda;
  const double m2 = static_cast<double>(params.m) * params.m;

  auto rho = [&](int p) { return (p + 0.5) * h_rho; };
  auto zed = [&](int t) { return -grid.z_max + (t + 1) * h_z; };
  auto idx = [&](int p, int t) { return p * nz + t; };

  std::vector<Eigen::Triplet<std::complex<double>>> trip;
  trip.reserve(static_cast<std::size_t>(np) * nz * 6);

  for (int p = 0; p < np; ++p) {
    const double rp = rho(p);
    const double inv_r2 = 1.0 / (rp * rp);
    const double cz = 1.0 + lam * lam * inv_r2;    // -(1 + lambda^2/rho^2) d_z^2
    const double cim = 2.0 * params.m * lam * inv_r2 / (2.0 * h_z);
    // radial coupling to p+1 after symmetrization
    const double off_r = p + 1 < np
        ? -(p + 1.0) * h_rho / (h_rho * h_rho * std::sqrt(rho(p) * rho(p + 1)))
        : 0.0;
    for (int t = 0; t < nz; ++t) {
      const double zt = zed(t);
      const int row = idx(p, t);
      const double diag = 2.0 / (h_rho * h_rho) + 2.0 * cz / (h_z * h_z) +
                          m2 * inv_r2 + rp * rp + zt * zt;
      trip.emplace_back(row, row, diag);
      if (p + 1 < np) {
        trip.emplace_back(row, idx(p + 1, t), off_r);
        trip.emplace_back(idx(p + 1, t), row, off_r);
      }
      if (t + 1 < nz) {
        const std::complex<double> up(-cz / (h_z * h_z), cim);
        trip.emplace_back(row, idx(p, t + 1), up);
        trip.emplace_back(idx(p, t + 1), row, std::conj(up));
      }
    }
  }

  SparseC mat(np * nz, np * nz);
  mat.setFromTriplets(trip.begin(), trip.end());
  return mat;
}

}  // namespace

std::vector<double> fd_lowest(const ModelParams& params, const GridSpec& grid,
                              int levels, const FdOptions& opts) {
  if (levels < 1) throw std::invalid_argument("fd_lowest: levels must be positive");
  if (grid.rho_points < 3 || grid.z_points < 3 || !(grid.rho_max > 0.0) ||
      !(grid.z_max > 0.0))
    throw std::invalid_argument("fd_lowest: invalid grid");
  const int n = grid.rho_points * grid.z_points;
  if (levels + opts.block_extra >= n)
    throw std::invalid_argument("fd_lowest: grid too small for requested levels");

  const SparseC A = build_operator(params, grid);
  Eigen::SimplicialLDLT<SparseC> solver(A);
  if (solver.info() != Eigen::Success)
    throw numerical_error("fd_lowest: sparse factorization failed");

  // Shift-invert (shift 0: the operator is positive definite) subspace
  // iteration with Rayleigh-Ritz extraction; the block handles the
  // degenerate lambda = 0 multiplets that single-vector iteration misses.
  const int k = std::min(n, levels + opts.block_extra);
  std::mt19937 rng(0x5eed);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd X(n, k);
  for (int c = 0; c < k; ++c)
    for (int r = 0; r < n; ++r) X(r, c) = {gauss(rng), gauss(rng)};

  std::vector<double> history;
  Eigen::VectorXd theta;
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    const Eigen::MatrixXcd Y = solver.solve(X);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Y);
    const Eigen::MatrixXcd Q =
        qr.householderQ() * Eigen::MatrixXcd::Identity(n, k);
    const Eigen::MatrixXcd AQ = A * Q;
    Eigen::MatrixXcd T = Q.adjoint() * AQ;
    T = (0.5 * (T + T.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(T);
    if (eig.info() != Eigen::Success)
      throw numerical_error("fd_lowest: projected eigensolve failed");
    theta = eig.eigenvalues();
    X = Q * eig.eigenvectors();
    const Eigen::MatrixXcd AX = AQ * eig.eigenvectors();

    double worst = 0.0;
    for (int j = 0; j < levels; ++j) {
      const double denom = AX.col(j).norm();
      const double r = denom > 0.0
          ? (AX.col(j) - theta(j) * X.col(j)).norm() / denom
          : 1.0;
      worst = std::max(worst, r);
    }
    history.push_back(worst);
    if (worst <= opts.residual_tol)
      return {theta.data(), theta.data() + levels};
  }

  std::ostringstream msg;
  msg << "fd_lowest: subspace iteration did not reach residual "
      << opts.residual_tol << " in " << opts.max_iterations
      << " iterations (last " << history.back() << ")";
  throw convergence_error(msg.str(), history);
}

std::vector<double> fd_lowest_extrapolated(const ModelParams& params,
                                           const GridSpec& grid, int levels,
                                           const FdOptions& opts) {
  GridSpec coarse = grid;
  coarse.rho_points = std::max(3, grid.rho_points / 2);
  coarse.z_points = std::max(3, grid.z_points / 2);
  const std::vector<double> fine = fd_lowest(params, grid, levels, opts);
  const std::vector<double> half = fd_lowest(params, coarse, levels, opts);
  std::vector<double> out(levels);
  for (int j = 0; j < levels; ++j)
    out[j] = fine[j] + (fine[j] - half[j]) / 3.0;  // cancels the h^2 term
  return out;
}

}  // namespace dislospec
