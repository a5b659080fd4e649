#include "dislospec/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "dislospec/errors.hpp"

namespace dislospec {

double exact_energy(const QuantumLabel& label) {
  if (label.n < 0 || label.k < 0) {
    std::ostringstream msg;
    msg << "invalid quantum label (n=" << label.n << ", k=" << label.k
        << "): n and k must be nonnegative";
    throw std::invalid_argument(msg.str());
  }
  return 4.0 * label.n + 2.0 * label.k + 2.0 * std::abs(label.m) + 3.0;
}

std::vector<std::pair<int, int>> multiplet_members(int e0, int m_abs) {
  std::vector<std::pair<int, int>> members;
  const int rest = e0 - 2 * m_abs - 3;  // = 4n + 2k
  if (m_abs < 0 || rest < 0 || rest % 2 != 0) return members;
  for (int n = rest / 4; n >= 0; --n) {
    members.emplace_back(n, (rest - 4 * n) / 2);
  }
  return members;
}

int degeneracy(int e0) {
  const int shell = e0 - 3;  // = 4n + 2k + 2|m|
  if (shell < 0 || shell % 2 != 0) return 0;
  int count = 0;
  for (int m = -shell / 2; m <= shell / 2; ++m) {
    const int rest = shell - 2 * std::abs(m);
    for (int n = 0; 4 * n <= rest; ++n) ++count;  // k = (rest - 4n)/2 >= 0
  }
  return count;
}

namespace {

// Stationarity condition for the axial width: zero at the optimal b.
double width_condition(double b, double lambda, double m2) {
  const double root = std::sqrt(b * lambda * lambda + m2);
  return (4.0 * b * b - 1.0) * root + 4.0 * b * b * lambda * lambda;
}

}  // namespace

double simple_ansatz_energy(const ModelParams& params, double b) {
  if (!(b > 0.0)) throw std::invalid_argument("simple_ansatz_energy: b must be positive");
  const double m2 = static_cast<double>(params.m) * params.m;
  const double root = std::sqrt(b * params.lambda * params.lambda + m2);
  return (8.0 * b * root + 4.0 * b * b + 8.0 * b + 1.0) / (4.0 * b);
}

SimpleAnsatz solve_simple_ansatz(const ModelParams& params) {
  const double m2 = static_cast<double>(params.m) * params.m;
  if (params.lambda == 0.0) {
    // the width condition degenerates; b = 1/2 minimizes the bound directly
    return {std::abs(static_cast<double>(params.m)), 0.5,
            2.0 * std::abs(static_cast<double>(params.m)) + 3.0};
  }

  // Bisection on (eps, 1/2]: the condition is negative near 0 and equals
  // lambda^2 > 0 at b = 1/2. Chosen over Newton because the square-root
  // factor has unbounded derivative as b -> 0.
  double lo = 1e-10;
  double hi = 0.5;
  double flo = width_condition(lo, params.lambda, m2);
  const double fhi = width_condition(hi, params.lambda, m2);
  if (!(flo < 0.0) || !(fhi > 0.0)) {
    std::ostringstream msg;
    msg << "simple-ansatz width bracketing failed: f(" << lo << ")=" << flo
        << ", f(" << hi << ")=" << fhi;
    throw numerical_error(msg.str());
  }
  for (int iter = 0; iter < 200 && hi - lo > 1e-14; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = width_condition(mid, params.lambda, m2);
    if (fmid <= 0.0) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  const double b = 0.5 * (lo + hi);
  const double s = std::sqrt(b * params.lambda * params.lambda + m2);
  return {s, b, simple_ansatz_energy(params, b)};
}

std::vector<double> exact_block_spectrum(int m, int count) {
  if (count < 0) throw std::invalid_argument("exact_block_spectrum: count < 0");
  std::vector<double> energies;
  if (count == 0) return energies;
  // 4n + 2k + 2|m| + 3 <= E covers all levels up to the count-th one once
  // E = 2|m| + 3 + 2*(count-1) + 2 (k alone already yields `count` levels).
  const int budget = 2 * count + 2;
  for (int n = 0; 4 * n <= budget; ++n)
    for (int k = 0; 4 * n + 2 * k <= budget; ++k)
      energies.push_back(exact_energy({n, k, m}));
  std::sort(energies.begin(), energies.end());
  energies.resize(count);
  return energies;
}

}  // namespace dislospec
