#pragma once

#include <Eigen/Dense>
#include <complex>
#include <iosfwd>
#include <utility>

#include "dislospec/model.hpp"

namespace dislospec {

/// Truncated nonorthogonal product basis
///
///   chi_{ij}(rho, z) = rho^(i+s) z^j exp(-rho^2/2 - b z^2),
///   i = 0..radial_terms-1,  j = 0..axial_terms-1.
///
/// Linear dimension is radial_terms * axial_terms; flattening is row-major in
/// (i, j) and is part of the stable interface (eigenvector coordinates,
/// matrix dumps and golden files all use it).
struct BasisSpec {
  int radial_terms = 1;  // M
  int axial_terms = 1;   // N
  double s = 0.0;
  double b = 0.5;

  int dimension() const { return radial_terms * axial_terms; }
  int flat_index(int i, int j) const { return i * axial_terms + j; }
  std::pair<int, int> unflatten(int idx) const {
    return {idx / axial_terms, idx % axial_terms};
  }
};

/// Matrices of the reduced m-block operator
///
///   H = -(1/rho) d_rho rho d_rho - (1 + lambda^2/rho^2) d_z^2
///       + (2 i m lambda / rho^2) d_z + m^2/rho^2 + rho^2 + z^2
///
/// over the basis above, with the cylindrical measure rho drho dz (the
/// constant azimuthal factor is dropped globally; it cancels in every
/// Rayleigh quotient). H is Hermitian, S symmetric positive definite as long
/// as the basis is numerically independent. With lambda = 0 or m = 0 the
/// imaginary part of H vanishes identically.
struct MatrixPair {
  Eigen::MatrixXcd hamiltonian;
  Eigen::MatrixXd overlap;
  // max |H - H^dagger| / max |H| measured before symmetrization
  double hermiticity_defect = 0.0;
};

/// One overlap entry <chi_ij | chi_i'j'>.
double overlap_entry(int i, int j, int ip, int jp, const BasisSpec& basis);

/// One Hamiltonian entry <chi_ij | H | chi_i'j'>. Throws
/// singular_basis_error if a divergent radial moment is hit with a nonzero
/// coefficient (the basis exponent s is inconsistent with lambda, m).
std::complex<double> hamiltonian_entry(int i, int j, int ip, int jp,
                                       const BasisSpec& basis,
                                       const ModelParams& params);

/// Full (H, S) pair. All entries of H are assembled independently, the
/// Hermiticity defect is recorded, then H is replaced by (H + H^dagger)/2.
MatrixPair assemble(const BasisSpec& basis, const ModelParams& params);

/// Text dump for golden-file tests: one header line
/// "dim M N lambda m s b" (values, space separated), then dim rows of H and
/// dim rows of S as space-separated "re,im" pairs.
void write_matrix_dump(std::ostream& out, const MatrixPair& mats,
                       const BasisSpec& basis, const ModelParams& params);

}  // namespace dislospec
