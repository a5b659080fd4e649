#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dislospec {

/// Base class for failures of the numerical machinery (as opposed to
/// precondition violations, which throw std::invalid_argument).
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A moment integral with exponent <= -1 was requested with a nonzero
/// coefficient.
class divergent_integral_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

/// Adaptive quadrature exhausted its refinement budget. Carries the last
/// two global estimates so the caller can judge how far apart they were.
class quadrature_error : public numerical_error {
 public:
  quadrature_error(const std::string& what, double last, double previous)
      : numerical_error(what), last_estimate(last), previous_estimate(previous) {}
  double last_estimate;
  double previous_estimate;
};

/// The basis exponent s is inconsistent with (lambda, m): a divergent
/// radial moment appeared with a nonzero coefficient.
class singular_basis_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

/// Every overlap eigendirection fell below the discard threshold.
class degenerate_basis_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

/// An iterative eigensolve failed to reach its residual target.
class convergence_error : public numerical_error {
 public:
  convergence_error(const std::string& what, std::vector<double> history)
      : numerical_error(what), residual_history(std::move(history)) {}
  std::vector<double> residual_history;
};

}  // namespace dislospec
