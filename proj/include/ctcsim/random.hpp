#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "ctcsim/linalg.hpp"
#include "ctcsim/quantum.hpp"

namespace ctcsim {

using Rng = std::mt19937_64;

inline Complex complex_normal(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

// Haar-distributed unitary from the QR decomposition of a complex Ginibre
// matrix. Gram-Schmidt produces R with a positive real diagonal, which is
// the phase-fixed decomposition. A second pass reorthogonalizes so that
// U†U - I sits at rounding level.
inline Matrix haar_unitary_matrix(std::size_t n, Rng& rng) {
  Matrix q(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q(i, j) = complex_normal(rng);

  const auto orthonormalize = [&] {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < k; ++j) {
        Complex proj = 0.0;
        for (std::size_t i = 0; i < n; ++i) proj += std::conj(q(i, j)) * q(i, k);
        for (std::size_t i = 0; i < n; ++i) q(i, k) -= proj * q(i, j);
      }
      double norm = 0.0;
      for (std::size_t i = 0; i < n; ++i) norm += std::norm(q(i, k));
      norm = std::sqrt(norm);
      for (std::size_t i = 0; i < n; ++i) q(i, k) /= norm;
    }
  };
  orthonormalize();
  orthonormalize();
  return q;
}

inline UnitaryGate haar_unitary(const SubsystemShape& shape, Rng& rng) {
  return UnitaryGate(haar_unitary_matrix(shape.total(), rng), shape);
}

inline PureState random_pure_state(const SubsystemShape& shape, Rng& rng) {
  std::vector<Complex> v(shape.total());
  for (auto& a : v) a = complex_normal(rng);
  return PureState::normalized(std::move(v), shape);
}

// Hilbert-Schmidt random mixed state: G G† / Tr for a Ginibre G.
inline DensityOperator random_density(const SubsystemShape& shape, Rng& rng) {
  const std::size_t n = shape.total();
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = complex_normal(rng);
  return DensityOperator::sanitized(g * g.adjoint(), shape);
}

inline Matrix random_hermitian(std::size_t n, Rng& rng) {
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = complex_normal(rng);
  return 0.5 * (g + g.adjoint());
}

}  // namespace ctcsim
