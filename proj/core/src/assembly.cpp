#include "dislospec/assembly.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "dislospec/errors.hpp"
#include "dislospec/integrals.hpp"

namespace dislospec {

namespace {

// Moment tables shared by every entry of one assembly. Radial moments are
// indexed by the integer offset t, holding R(2s - 1 + t); the t = 0 slot is
// NaN when 2s - 1 <= -1 (s = 0), which is legal as long as every coefficient
// multiplying it vanishes identically.
struct MomentTables {
  std::vector<double> radial;  // R(2s - 1 + t)
  std::vector<double> axial;   // Z(q), odd q stored as 0
  double s;

  MomentTables(const BasisSpec& basis) : s(basis.s) {
    const int t_max = 2 * basis.radial_terms + 3;
    radial.resize(t_max + 1);
    for (int t = 0; t <= t_max; ++t) {
      const double p = 2.0 * basis.s - 1.0 + t;
      radial[t] = p > -1.0 ? radial_integral(p)
                           : std::numeric_limits<double>::quiet_NaN();
    }
    const int q_max = 2 * basis.axial_terms + 1;
    axial.resize(q_max + 1);
    for (int q = 0; q <= q_max; ++q)
      axial[q] = (q % 2 == 1) ? 0.0 : axial_integral(q, basis.b);
  }

  double rad(int t) const {
    const double v = radial[t];
    if (std::isnan(v)) {
      std::ostringstream msg;
      msg << "radial moment with exponent " << 2.0 * s - 1.0 + t
          << " diverges; basis exponent s=" << s
          << " is inconsistent with the operator coefficients";
      throw singular_basis_error(msg.str());
    }
    return v;
  }

  double ax(int q) const { return q < 0 ? 0.0 : axial[q]; }
};

// <chi_ij | H | chi_i'j'> as a sum of coefficient * R * Z terms. Terms whose
// scalar coefficient vanishes are skipped before their moments are touched;
// that is what keeps the s = 0 (lambda = m = 0) case finite.
std::complex<double> entry_impl(int i, int j, int ip, int jp,
                                const BasisSpec& basis,
                                const ModelParams& params,
                                const MomentTables& tab) {
  const double a = ip + basis.s;
  const double b = basis.b;
  const int q = j + jp;
  const int t = i + ip;  // tab.rad(t) == R(P - 2) with P = i + i' + 2s + 1
  const double lam2 = params.lambda * params.lambda;
  const double m2 = static_cast<double>(params.m) * params.m;

  double re = 0.0;
  auto add = [&](double coef, int rt, double zval) {
    if (coef == 0.0 || zval == 0.0) return;
    re += coef * tab.rad(rt) * zval;
  };

  const double zq = tab.ax(q);
  const double zqm2 = tab.ax(q - 2);
  const double zqp2 = tab.ax(q + 2);
  const double jj = static_cast<double>(jp) * (jp - 1);

  // radial kinetic term
  add(-a * a, t, zq);
  add(2.0 * a + 2.0, t + 2, zq);
  add(-1.0, t + 4, zq);
  // -d_z^2
  add(-jj, t + 2, zqm2);
  add(2.0 * b * (2.0 * jp + 1.0), t + 2, zq);
  add(-4.0 * b * b, t + 2, zqp2);
  // -(lambda^2 / rho^2) d_z^2
  add(-lam2 * jj, t, zqm2);
  add(lam2 * 2.0 * b * (2.0 * jp + 1.0), t, zq);
  add(-lam2 * 4.0 * b * b, t, zqp2);
  // centrifugal m^2 / rho^2
  add(m2, t, zq);
  // confinement rho^2 + z^2
  add(1.0, t + 4, zq);
  add(1.0, t + 2, zqp2);

  // (2 i m lambda / rho^2) d_z -- the only imaginary contribution
  double im = 0.0;
  const double ml = 2.0 * params.m * params.lambda;
  if (ml != 0.0) {
    const double zpart = jp * tab.ax(q - 1) - 2.0 * b * tab.ax(q + 1);
    if (zpart != 0.0) im = ml * zpart * tab.rad(t);
  }

  return {re, im};
}

void check_indices(int i, int j, int ip, int jp, const BasisSpec& basis) {
  if (basis.radial_terms < 1 || basis.axial_terms < 1)
    throw std::invalid_argument("basis must have at least one term per axis");
  if (!(basis.b > 0.0)) throw std::invalid_argument("basis width b must be positive");
  if (!(basis.s >= 0.0)) throw std::invalid_argument("basis exponent s must be nonnegative");
  if (i < 0 || ip < 0 || i >= basis.radial_terms || ip >= basis.radial_terms ||
      j < 0 || jp < 0 || j >= basis.axial_terms || jp >= basis.axial_terms)
    throw std::invalid_argument("basis indices out of range");
}

}  // namespace

double overlap_entry(int i, int j, int ip, int jp, const BasisSpec& basis) {
  check_indices(i, j, ip, jp, basis);
  return radial_integral(i + ip + 2.0 * basis.s + 1.0) *
         axial_integral(j + jp, basis.b);
}

std::complex<double> hamiltonian_entry(int i, int j, int ip, int jp,
                                       const BasisSpec& basis,
                                       const ModelParams& params) {
  check_indices(i, j, ip, jp, basis);
  const MomentTables tab(basis);
  return entry_impl(i, j, ip, jp, basis, params, tab);
}

MatrixPair assemble(const BasisSpec& basis, const ModelParams& params) {
  check_indices(0, 0, 0, 0, basis);
  const int dim = basis.dimension();
  const MomentTables tab(basis);

  MatrixPair mats;
  mats.hamiltonian.resize(dim, dim);
  mats.overlap.resize(dim, dim);

  // S: upper triangle, mirrored, so it is symmetric by construction.
  for (int r = 0; r < dim; ++r) {
    const auto [i, j] = basis.unflatten(r);
    for (int c = r; c < dim; ++c) {
      const auto [ip, jp] = basis.unflatten(c);
      const double v = tab.rad(i + ip + 2) * tab.ax(j + jp);
      mats.overlap(r, c) = v;
      mats.overlap(c, r) = v;
    }
  }

  // H: every entry assembled independently so the Hermiticity defect is a
  // genuine diagnostic of the moment evaluation, then symmetrized.
  for (int r = 0; r < dim; ++r) {
    const auto [i, j] = basis.unflatten(r);
    for (int c = 0; c < dim; ++c) {
      const auto [ip, jp] = basis.unflatten(c);
      mats.hamiltonian(r, c) = entry_impl(i, j, ip, jp, basis, params, tab);
    }
  }

  const double scale = mats.hamiltonian.cwiseAbs().maxCoeff();
  const double defect =
      (mats.hamiltonian - mats.hamiltonian.adjoint()).cwiseAbs().maxCoeff();
  mats.hermiticity_defect = scale > 0.0 ? defect / scale : 0.0;
  mats.hamiltonian = 0.5 * (mats.hamiltonian + mats.hamiltonian.adjoint()).eval();
  return mats;
}

void write_matrix_dump(std::ostream& out, const MatrixPair& mats,
                       const BasisSpec& basis, const ModelParams& params) {
  const int dim = basis.dimension();
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.12g", v);
    out << buf;
  };
  put(dim);
  out << ' ';
  put(basis.radial_terms);
  out << ' ';
  put(basis.axial_terms);
  out << ' ';
  put(params.lambda);
  out << ' ';
  put(params.m);
  out << ' ';
  put(basis.s);
  out << ' ';
  put(basis.b);
  out << '\n';
  auto row = [&](auto&& value_at) {
    for (int r = 0; r < dim; ++r) {
      for (int c = 0; c < dim; ++c) {
        const std::complex<double> v = value_at(r, c);
        if (c) out << ' ';
        put(v.real());
        out << ',';
        put(v.imag());
      }
      out << '\n';
    }
  };
  row([&](int r, int c) { return mats.hamiltonian(r, c); });
  row([&](int r, int c) { return std::complex<double>(mats.overlap(r, c), 0.0); });
}

}  // namespace dislospec
