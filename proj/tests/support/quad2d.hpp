#pragma once

// Independent route to the matrix entries: the reduced operator is applied
// to the ket pointwise (plain calculus on rho^a z^j exp(-rho^2/2 - b z^2)),
// and the resulting 2-D integral is done by nested tanh-sinh quadrature.
// No Gamma functions, no moment tables; this is the oracle the closed-form
// assembly is checked against.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

#include "dislospec/assembly.hpp"
#include "dislospec/model.hpp"

namespace dislospec::testing {

// tanh-sinh on (lo, hi) for a complex integrand; fixed level schedule with
// an error cut on the last refinement.
inline std::complex<double> ts_integrate(
    const std::function<std::complex<double>(double)>& f, double lo, double hi,
    double rel_tol, double abs_tol) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double half_pi = 1.5707963267948966;
  const double t_max = 6.5;

  auto eval = [&](double t) -> std::complex<double> {
    const double u = half_pi * std::sinh(t);
    const double ch = std::cosh(u);
    const double w = half_pi * std::cosh(t) / (ch * ch);
    const double delta = 2.0 / (1.0 + std::exp(2.0 * std::abs(u)));
    const double x = t < 0.0 ? lo + half * delta
                   : t > 0.0 ? hi - half * delta
                             : mid;
    if (!(x > lo && x < hi)) return {0.0, 0.0};
    const std::complex<double> v = f(x) * (w * half);
    // so deep into an endpoint that the factored 1/rho^2 terms overflow;
    // the true contribution there is below 1e-40 of the integral
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return {0.0, 0.0};
    return v;
  };

  double h = 1.0;
  std::complex<double> sum = eval(0.0);
  double mass = std::abs(sum);  // rounding floor of the accumulated sum
  for (int k = 1; k * h <= t_max; ++k) {
    const std::complex<double> vp = eval(k * h);
    const std::complex<double> vm = eval(-k * h);
    sum += vp + vm;
    mass += std::abs(vp) + std::abs(vm);
  }
  std::complex<double> estimate = sum * h;
  for (int level = 1; level <= 12; ++level) {
    h *= 0.5;
    std::complex<double> add = 0.0;
    for (int k = 1; k * h <= t_max; k += 2) {
      const std::complex<double> vp = eval(k * h);
      const std::complex<double> vm = eval(-k * h);
      add += vp + vm;
      mass += std::abs(vp) + std::abs(vm);
    }
    sum += add;
    const std::complex<double> previous = estimate;
    estimate = sum * h;
    const double err = std::abs(estimate - previous);
    if (level >= 3 &&
        err <= std::max({rel_tol * std::abs(estimate), abs_tol, 1e-14 * mass * h}))
      return estimate;
  }
  throw std::runtime_error("ts_integrate: no convergence");
}

// x^e with nonnegative-exponent guard: terms always carry a vanishing
// coefficient when e < 0, so the value is irrelevant but must be finite.
inline double safe_pow(double x, int e) { return e < 0 ? 0.0 : std::pow(x, e); }

// H applied to chi(rho, z) = rho^a z^j exp(-rho^2/2 - b z^2), with the
// common Gaussian factor divided out: a pointwise prefactor, plain calculus
// on the explicit function, no moment tables anywhere.
inline std::complex<double> operator_on_ket(double rho, double z, double a,
                                            int j, double b,
                                            const ModelParams& params) {
  const double lam = params.lambda;
  const double m2 = static_cast<double>(params.m) * params.m;
  const double ra = std::pow(rho, a);
  const double zj = safe_pow(z, j);

  // -(1/rho) d_rho rho d_rho acting on rho^a exp(-rho^2/2):
  //   -a^2 rho^(a-2) + (2a+2) rho^a - rho^(a+2)
  double radial_kin = (2.0 * a + 2.0) * ra - std::pow(rho, a + 2.0);
  if (a != 0.0) radial_kin -= a * a * std::pow(rho, a - 2.0);

  // d_z and d_z^2 acting on z^j exp(-b z^2), Gaussian divided out
  const double dz = j * safe_pow(z, j - 1) - 2.0 * b * safe_pow(z, j + 1);
  const double dzz = j * (j - 1.0) * safe_pow(z, j - 2) -
                     2.0 * b * (2.0 * j + 1.0) * zj +
                     4.0 * b * b * safe_pow(z, j + 2);

  double re = radial_kin * zj;
  re -= (1.0 + lam * lam / (rho * rho)) * dzz * ra;
  re += (m2 / (rho * rho) + rho * rho + z * z) * ra * zj;
  const double im = (2.0 * params.m * lam / (rho * rho)) * dz * ra;
  return {re, im};
}

// <chi_ij | H | chi_i'j'> by nested adaptive quadrature.
inline std::complex<double> hamiltonian_entry_quadrature(
    int i, int j, int ip, int jp, const BasisSpec& basis,
    const ModelParams& params, double rel_tol = 1e-10) {
  const double s = basis.s;
  const double b = basis.b;
  const double a = ip + s;
  const double rho_cut = 12.0;
  const double z_cut = std::sqrt((50.0 + 5.0 * (j + jp + 2)) / (2.0 * b));

  // crude magnitude scale for the absolute error floors of the inner runs
  const double scale = std::pow(rho_cut * 0.3, i + ip) * std::pow(z_cut * 0.3, j + jp);

  auto outer = [&](double rho) -> std::complex<double> {
    const double bra_rho = std::pow(rho, i + s) * std::exp(-0.5 * rho * rho);
    auto inner = [&](double z) -> std::complex<double> {
      const double gauss = std::exp(-0.5 * rho * rho - b * z * z);
      const std::complex<double> hket = operator_on_ket(rho, z, a, jp, b, params) * gauss;
      const double bra = bra_rho * safe_pow(z, j) * std::exp(-b * z * z);
      return bra * hket * rho;  // cylindrical measure
    };
    return ts_integrate(inner, -z_cut, z_cut, 0.1 * rel_tol, 1e-16 * scale);
  };
  return ts_integrate(outer, 0.0, rho_cut, rel_tol, 1e-15 * scale);
}

// <chi_ij | chi_i'j'> by the same machinery.
inline double overlap_entry_quadrature(int i, int j, int ip, int jp,
                                       const BasisSpec& basis,
                                       double rel_tol = 1e-10) {
  const double s = basis.s;
  const double b = basis.b;
  const double rho_cut = 12.0;
  const double z_cut = std::sqrt((50.0 + 5.0 * (j + jp)) / (2.0 * b));
  const double scale = std::pow(rho_cut * 0.3, i + ip) * std::pow(z_cut * 0.3, j + jp);

  auto outer = [&](double rho) -> std::complex<double> {
    auto inner = [&](double z) -> std::complex<double> {
      return std::pow(rho, i + ip + 2.0 * s) * safe_pow(z, j + jp) *
             std::exp(-rho * rho - 2.0 * b * z * z) * rho;
    };
    return ts_integrate(inner, -z_cut, z_cut, 0.1 * rel_tol, 1e-16 * scale);
  };
  return ts_integrate(outer, 0.0, rho_cut, rel_tol, 1e-15 * scale).real();
}

}  // namespace dislospec::testing
