#include "dislospec/gevp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "dislospec/errors.hpp"

namespace dislospec {

namespace {

// First coordinate carrying weight is rotated to the positive real axis;
// keeps eigenvector output stable across runs and solver branches.
void fix_phases(Eigen::MatrixXcd& vecs) {
  for (int c = 0; c < vecs.cols(); ++c) {
    const double top = vecs.col(c).cwiseAbs().maxCoeff();
    if (top == 0.0) continue;
    for (int r = 0; r < vecs.rows(); ++r) {
      const std::complex<double> v = vecs(r, c);
      if (std::abs(v) > 1e-12 * top) {
        vecs.col(c) *= std::conj(v) / std::abs(v);
        break;
      }
    }
  }
}

}  // namespace

EigenSolution solve_pencil(const MatrixPair& mats, const PencilOptions& opts) {
  const Eigen::MatrixXcd& H = mats.hamiltonian;
  const Eigen::MatrixXd& S = mats.overlap;
  const int n = static_cast<int>(H.rows());
  if (H.cols() != n || S.rows() != n || S.cols() != n)
    throw std::invalid_argument("solve_pencil: dimension mismatch between H and S");
  if (n == 0) throw std::invalid_argument("solve_pencil: empty pencil");

  // Rescale to unit overlap diagonal. This leaves every generalized
  // eigenvalue unchanged but removes the huge dynamic range of raw monomial
  // moments from the conditioning of the factorization.
  Eigen::VectorXd d(n);
  bool diag_ok = true;
  for (int i = 0; i < n; ++i) {
    diag_ok = diag_ok && S(i, i) > 0.0;
    d(i) = diag_ok ? 1.0 / std::sqrt(S(i, i)) : 1.0;
  }
  if (!diag_ok) d.setOnes();
  const Eigen::MatrixXd S1 = d.asDiagonal() * S * d.asDiagonal();
  const Eigen::MatrixXcd H1 =
      d.asDiagonal() * H * d.asDiagonal();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s_eig(S1);
  if (s_eig.info() != Eigen::Success)
    throw numerical_error("solve_pencil: overlap eigendecomposition failed");
  const Eigen::VectorXd sigma = s_eig.eigenvalues();  // ascending
  const double sig_max = sigma(n - 1);
  if (!(sig_max > 0.0))
    throw degenerate_basis_error("solve_pencil: overlap matrix is not positive");

  EigenSolution out;
  out.overlap_condition = sigma(0) > 0.0
                              ? sig_max / sigma(0)
                              : std::numeric_limits<double>::infinity();

  Eigen::MatrixXcd coeffs_scaled;
  bool cholesky_done = false;
  if (diag_ok && sigma(0) > 0.0 && out.overlap_condition <= opts.condition_limit) {
    Eigen::LLT<Eigen::MatrixXd> llt(S1);
    if (llt.info() == Eigen::Success) {
      const Eigen::MatrixXcd L = llt.matrixL().toDenseMatrix().cast<std::complex<double>>();
      // A = L^-1 H1 L^-dagger, self-adjoint by construction
      Eigen::MatrixXcd T = L.triangularView<Eigen::Lower>().solve(H1);
      Eigen::MatrixXcd A =
          L.triangularView<Eigen::Lower>().solve(T.adjoint().eval()).adjoint();
      A = (0.5 * (A + A.adjoint())).eval();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> h_eig(A);
      if (h_eig.info() == Eigen::Success) {
        const Eigen::MatrixXcd U = L.adjoint();
        coeffs_scaled = U.triangularView<Eigen::Upper>().solve(h_eig.eigenvectors());
        out.energies.assign(h_eig.eigenvalues().data(),
                            h_eig.eigenvalues().data() + n);
        out.discarded = 0;
        cholesky_done = true;
      }
    }
  }

  if (!cholesky_done) {
    // Canonical orthogonalization: keep overlap eigendirections above the
    // relative threshold, solve in the retained subspace. Variational bounds
    // survive because the retained space is a subspace of the original.
    const double cutoff = opts.discard_threshold * sig_max;
    int kept = 0;
    for (int i = 0; i < n; ++i)
      if (sigma(i) >= cutoff) ++kept;
    if (kept == 0)
      throw degenerate_basis_error(
          "solve_pencil: every overlap eigenvalue is below the discard threshold");
    Eigen::MatrixXd X(n, kept);
    int c = 0;
    for (int i = 0; i < n; ++i) {
      if (sigma(i) < cutoff) continue;
      X.col(c++) = s_eig.eigenvectors().col(i) / std::sqrt(sigma(i));
    }
    const Eigen::MatrixXcd Xc = X.cast<std::complex<double>>();
    Eigen::MatrixXcd A = Xc.adjoint() * H1 * Xc;
    A = (0.5 * (A + A.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> h_eig(A);
    if (h_eig.info() != Eigen::Success)
      throw numerical_error("solve_pencil: projected eigensolve failed");
    coeffs_scaled = Xc * h_eig.eigenvectors();
    out.energies.assign(h_eig.eigenvalues().data(),
                        h_eig.eigenvalues().data() + kept);
    out.discarded = n - kept;
  }

  out.coefficients = d.asDiagonal() * coeffs_scaled;
  fix_phases(out.coefficients);

  const int found = static_cast<int>(out.energies.size());
  for (int t = 0; t < found; ++t) {
    const Eigen::VectorXcd hc = H * out.coefficients.col(t);
    const double hn = hc.norm();
    if (hn == 0.0) continue;
    const double r =
        (hc - out.energies[t] * (S * out.coefficients.col(t))).norm() / hn;
    if (r > out.max_residual) out.max_residual = r;
  }
  return out;
}

}  // namespace dislospec
