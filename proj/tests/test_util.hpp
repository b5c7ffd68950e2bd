#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

#include "ctcsim/quantum.hpp"
#include "ctcsim/random.hpp"

namespace ctcsim::testing {

// Random normalized (alpha, beta).
inline std::pair<Complex, Complex> random_amplitudes(Rng& rng) {
  const Complex a = complex_normal(rng), b = complex_normal(rng);
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  return {a / n, b / n};
}

inline DensityOperator diag_state(double p0, double p1) {
  return DensityOperator(Matrix::diagonal(std::vector<double>{p0, p1}), SubsystemShape{2});
}

inline DensityOperator projector(const PureState& psi) { return DensityOperator::from_pure(psi); }

inline DensityOperator half_identity() { return DensityOperator::maximally_mixed(SubsystemShape{2}); }

}  // namespace ctcsim::testing
