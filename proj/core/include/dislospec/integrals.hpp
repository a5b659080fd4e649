#pragma once

#include <functional>

namespace dislospec {

/// Radial Gaussian moment: integral of rho^p exp(-rho^2) over (0, inf),
/// equal to Gamma((p+1)/2) / 2. Defined for p > -1; throws
/// divergent_integral_error otherwise. Evaluated through log-Gamma so large
/// p does not overflow.
double radial_integral(double p);

/// Axial Gaussian moment: integral of z^q exp(-2 b z^2) over the real line.
/// Zero for odd q, Gamma((q+1)/2) / (2b)^((q+1)/2) for even q.
/// Requires q >= 0 and b > 0 (std::invalid_argument otherwise).
double axial_integral(int q, double b);

struct QuadratureOptions {
  double rel_tol = 1e-10;  // target relative error of the estimate
  double abs_tol = 0.0;    // absolute floor, for integrals that vanish
  int max_levels = 12;     // tanh-sinh refinement budget
};

/// Adaptive quadrature of f over the finite interval (lo, hi) by the
/// tanh-sinh rule with successive level refinement. Endpoints are never
/// evaluated, so integrable endpoint singularities (rho^p with p > -1) are
/// handled. Throws quadrature_error with the last two estimates when the
/// level budget runs out before the error target is met.
double integrate_adaptive(const std::function<double(double)>& f, double lo,
                          double hi, const QuadratureOptions& opts = {});

}  // namespace dislospec
