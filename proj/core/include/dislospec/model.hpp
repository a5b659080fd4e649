#pragma once

#include <utility>
#include <vector>

namespace dislospec {

/// Parameters of one angular-momentum block of the dislocated oscillator.
///
/// Everything is dimensionless: lengths are in units of sqrt(hbar/(mass*omega))
/// and energies in units of hbar*omega/2. `lambda` is the dislocation strength
/// (torsion length over oscillator length); `m` labels the conserved
/// z-component of angular momentum. The spectrum depends only on lambda^2 and
/// m^2, so canonical() maps to nonnegative representatives without changing
/// any computed energy.
struct ModelParams {
  double lambda = 0.0;
  int m = 0;

  ModelParams canonical() const { return {lambda < 0 ? -lambda : lambda, m < 0 ? -m : m}; }
};

/// Separable quantum numbers of the lambda=0 problem: n radial, k axial,
/// m azimuthal. Only m survives as a good quantum number for lambda != 0.
struct QuantumLabel {
  int n = 0;
  int k = 0;
  int m = 0;
};

/// Result of the closed-form one-function variational treatment of the
/// lowest state of an m-block: trial function rho^s exp(-rho^2/2 - b z^2).
struct SimpleAnsatz {
  double s = 0.0;       // radial exponent, sqrt(b*lambda^2 + m^2)
  double b = 0.5;       // axial Gaussian width, root in (0, 1/2]
  double energy = 3.0;  // variational upper bound for the block's lowest level
};

/// Exact lambda=0 energy 4n + 2k + 2|m| + 3.
/// Throws std::invalid_argument for negative n or k.
double exact_energy(const QuantumLabel& label);

/// All (n, k) whose lambda=0 energy with |m| = m_abs equals e0, sorted by
/// descending n. Empty when no such states exist.
std::vector<std::pair<int, int>> multiplet_members(int e0, int m_abs);

/// Number of states (n >= 0, k >= 0, m integer) in the lambda=0 shell of
/// energy e0, counted by direct enumeration. Returns 0 for e0 < 3.
int degeneracy(int e0);

/// Variational bound W(s(b), b) for a given axial width b > 0, with the
/// radial exponent slaved to s = sqrt(b*lambda^2 + m^2).
double simple_ansatz_energy(const ModelParams& params, double b);

/// Optimal simple-ansatz parameters: b is the root of
/// (4b^2 - 1) sqrt(b lambda^2 + m^2) + 4 b^2 lambda^2 = 0 in (0, 1/2],
/// located by bisection; s and the bound follow in closed form.
SimpleAnsatz solve_simple_ansatz(const ModelParams& params);

/// Exact lambda=0 spectrum of one m-block: the `count` lowest energies,
/// ascending, with multiplicity.
std::vector<double> exact_block_spectrum(int m, int count);

}  // namespace dislospec
