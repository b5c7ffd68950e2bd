#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ctcsim/errors.hpp"
#include "ctcsim/linalg.hpp"

namespace ctcsim {

inline constexpr double kTolState = 1e-10;

/// Normalized state vector over a tensor-product shape. Basis ordering puts
/// the first factor (rail 1) in the most significant position.
class PureState {
 public:
  PureState(std::vector<Complex> amplitudes, SubsystemShape shape)
      : amplitudes_(std::move(amplitudes)), shape_(std::move(shape)) {
    if (amplitudes_.size() != shape_.total())
      throw ShapeMismatch("state vector length does not match shape " + to_string(shape_));
    double norm = 0.0;
    for (const auto& a : amplitudes_) {
      if (!is_finite(a)) throw InvalidState("state amplitudes must be finite");
      norm += std::norm(a);
    }
    if (std::abs(norm - 1.0) > kTolState)
      throw InvalidState("state vector is not normalized (norm^2 = " + std::to_string(norm) + ")");
  }

  // Rescales `v` to unit norm. Throws InvalidState for the zero vector.
  static PureState normalized(std::vector<Complex> v, SubsystemShape shape) {
    double norm = 0.0;
    for (const auto& a : v) norm += std::norm(a);
    if (!(norm > 0.0) || !std::isfinite(norm)) throw InvalidState("cannot normalize a zero vector");
    const double s = 1.0 / std::sqrt(norm);
    for (auto& a : v) a *= s;
    return PureState(std::move(v), std::move(shape));
  }

  static PureState basis(std::size_t index, SubsystemShape shape) {
    std::vector<Complex> v(shape.total());
    if (index >= v.size()) throw ShapeMismatch("basis index out of range");
    v[index] = 1.0;
    return PureState(std::move(v), std::move(shape));
  }

  // alpha|0> + beta|1>, normalized.
  static PureState qubit(Complex alpha, Complex beta) {
    return normalized({alpha, beta}, SubsystemShape{2});
  }

  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  const SubsystemShape& shape() const noexcept { return shape_; }
  std::size_t dim() const noexcept { return amplitudes_.size(); }
  Complex operator[](std::size_t i) const { return amplitudes_[i]; }

 private:
  std::vector<Complex> amplitudes_;
  SubsystemShape shape_;
};

// Single-factor state of dimension amplitudes.size().
inline PureState make_state(std::vector<Complex> amplitudes) {
  const std::size_t n = amplitudes.size();
  return PureState(std::move(amplitudes), SubsystemShape{n});
}

inline PureState tensor(const PureState& a, const PureState& b) {
  std::vector<std::size_t> dims = a.shape().dims;
  dims.insert(dims.end(), b.shape().dims.begin(), b.shape().dims.end());
  return PureState(kron(a.amplitudes(), b.amplitudes()), SubsystemShape(std::move(dims)));
}

inline Complex inner(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) throw ShapeMismatch("inner product: dimensions differ");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

/// Positive semidefinite, unit-trace, Hermitian operator with a subsystem shape.
class DensityOperator {
 public:
  DensityOperator(Matrix m, SubsystemShape shape) : matrix_(std::move(m)), shape_(std::move(shape)) {
    if (!matrix_.is_square() || matrix_.rows() != shape_.total())
      throw ShapeMismatch("density matrix dimension does not match shape " + to_string(shape_));
    for (const auto& z : matrix_.entries())
      if (!is_finite(z)) throw InvalidState("density matrix entries must be finite");
    const double herm = hermiticity_defect(matrix_);
    if (herm > kTolState)
      throw InvalidState("density matrix is not Hermitian (defect " + std::to_string(herm) + ")");
    const Complex tr = matrix_.trace();
    if (std::abs(tr - 1.0) > kTolState)
      throw InvalidState("density matrix trace is not 1 (trace " + std::to_string(tr.real()) + ")");
    spectrum_ = eigvals_hermitian(matrix_);
    if (!spectrum_.empty() && spectrum_.front() < -kTolState)
      throw InvalidState("density matrix has a negative eigenvalue " + std::to_string(spectrum_.front()));
  }

  static DensityOperator from_pure(const PureState& psi) {
    return DensityOperator(Matrix::outer(psi.amplitudes(), psi.amplitudes()), psi.shape());
  }

  static DensityOperator maximally_mixed(SubsystemShape shape) {
    const std::size_t n = shape.total();
    return DensityOperator(Matrix::identity(n) * (1.0 / static_cast<double>(n)), std::move(shape));
  }

  // Hermitian-symmetrizes, clips eigenvalues below zero and renormalizes
  // the trace. For results of numerically exact channels whose rounding
  // would otherwise trip the invariant checks.
  static DensityOperator sanitized(const Matrix& m, SubsystemShape shape) {
    Matrix h = 0.5 * (m + m.adjoint());
    const auto e = eig_hermitian(h);
    if (!e.values.empty() && e.values.front() < 0.0) {
      h = hermitian_function(h, [](double x) { return x > 0.0 ? x : 0.0; });
    }
    const double tr = h.trace().real();
    if (!(tr > 0.0)) throw InvalidState("operator has no positive part to normalize");
    h *= 1.0 / tr;
    return DensityOperator(0.5 * (h + h.adjoint()), std::move(shape));
  }

  const Matrix& matrix() const noexcept { return matrix_; }
  const SubsystemShape& shape() const noexcept { return shape_; }
  std::size_t dim() const noexcept { return matrix_.rows(); }
  // Ascending eigenvalues, computed once at construction.
  std::span<const double> spectrum() const noexcept { return spectrum_; }

 private:
  Matrix matrix_;
  SubsystemShape shape_;
  std::vector<double> spectrum_;
};

class UnitaryGate {
 public:
  UnitaryGate(Matrix m, SubsystemShape shape) : matrix_(std::move(m)), shape_(std::move(shape)) {
    if (!matrix_.is_square() || matrix_.rows() != shape_.total())
      throw ShapeMismatch("gate dimension does not match shape " + to_string(shape_));
    const double dev = max_abs_diff(matrix_.adjoint() * matrix_, Matrix::identity(matrix_.rows()));
    if (dev > kTolState)
      throw InvalidState("gate is not unitary (max |U^dagger U - I| = " + std::to_string(dev) + ")");
  }

  const Matrix& matrix() const noexcept { return matrix_; }
  const SubsystemShape& shape() const noexcept { return shape_; }
  std::size_t dim() const noexcept { return matrix_.rows(); }

  friend UnitaryGate operator*(const UnitaryGate& a, const UnitaryGate& b) {
    if (a.shape_ != b.shape_) throw ShapeMismatch("gate composition: shapes differ");
    return UnitaryGate(a.matrix_ * b.matrix_, a.shape_);
  }

 private:
  Matrix matrix_;
  SubsystemShape shape_;
};

inline UnitaryGate tensor(const UnitaryGate& a, const UnitaryGate& b) {
  std::vector<std::size_t> dims = a.shape().dims;
  dims.insert(dims.end(), b.shape().dims.begin(), b.shape().dims.end());
  return UnitaryGate(kron(a.matrix(), b.matrix()), SubsystemShape(std::move(dims)));
}

inline PureState apply(const UnitaryGate& u, const PureState& psi) {
  if (u.dim() != psi.dim()) throw ShapeMismatch("gate and state dimensions differ");
  return PureState::normalized(u.matrix() * psi.amplitudes(), psi.shape());
}

inline DensityOperator apply(const UnitaryGate& u, const DensityOperator& rho) {
  if (u.dim() != rho.dim()) throw ShapeMismatch("gate and state dimensions differ");
  return DensityOperator::sanitized(u.matrix() * rho.matrix() * u.matrix().adjoint(), rho.shape());
}

// ---------------------------------------------------------------------------
// Named states and gates

// Listed in the order |00>+|11>, |00>-|11>, |01>+|10>, |01>-|10> (each /√2).
enum class BellKind { phi_plus, phi_minus, psi_plus, psi_minus };

inline constexpr std::array<BellKind, 4> kBellKinds{BellKind::phi_plus, BellKind::phi_minus,
                                                    BellKind::psi_plus, BellKind::psi_minus};

inline std::string_view to_string(BellKind k) {
  switch (k) {
    case BellKind::phi_plus: return "phi_plus";
    case BellKind::phi_minus: return "phi_minus";
    case BellKind::psi_plus: return "psi_plus";
    case BellKind::psi_minus: return "psi_minus";
  }
  return "?";
}

inline BellKind parse_bell_kind(std::string_view s) {
  for (auto k : kBellKinds)
    if (to_string(k) == s) return k;
  throw UnknownName("unknown Bell state '" + std::string(s) + "'");
}

inline PureState bell_state(BellKind kind) {
  const double h = 1.0 / std::numbers::sqrt2;
  std::vector<Complex> v(4);
  switch (kind) {
    case BellKind::phi_plus: v = {h, 0, 0, h}; break;
    case BellKind::phi_minus: v = {h, 0, 0, -h}; break;
    case BellKind::psi_plus: v = {0, h, h, 0}; break;
    case BellKind::psi_minus: v = {0, h, -h, 0}; break;
  }
  return PureState(std::move(v), SubsystemShape::qubits(2));
}

enum class GateName { I, X, Z, H, CNOT, SWAP };

inline GateName parse_gate_name(std::string_view s) {
  if (s == "I") return GateName::I;
  if (s == "X") return GateName::X;
  if (s == "Z") return GateName::Z;
  if (s == "H") return GateName::H;
  if (s == "CNOT") return GateName::CNOT;
  if (s == "SWAP") return GateName::SWAP;
  throw UnknownName("unknown gate '" + std::string(s) + "'");
}

// CNOT flips the target iff the control is |1>. Rails are numbered from 1,
// rail 1 being the most significant factor; the control defaults to rail 1.
inline UnitaryGate standard_gate(GateName name, std::optional<int> control_rail = std::nullopt) {
  if (control_rail && name != GateName::CNOT)
    throw std::invalid_argument("control_rail applies only to CNOT");
  const double h = 1.0 / std::numbers::sqrt2;
  switch (name) {
    case GateName::I: return UnitaryGate(Matrix::identity(2), SubsystemShape{2});
    case GateName::X: return UnitaryGate(Matrix{{0, 1}, {1, 0}}, SubsystemShape{2});
    case GateName::Z: return UnitaryGate(Matrix{{1, 0}, {0, -1}}, SubsystemShape{2});
    case GateName::H: return UnitaryGate(Matrix{{h, h}, {h, -h}}, SubsystemShape{2});
    case GateName::SWAP:
      return UnitaryGate(Matrix{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}},
                         SubsystemShape::qubits(2));
    case GateName::CNOT: {
      const int control = control_rail.value_or(1);
      if (control == 1)
        return UnitaryGate(Matrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}},
                           SubsystemShape::qubits(2));
      if (control == 2)
        return UnitaryGate(Matrix{{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}},
                           SubsystemShape::qubits(2));
      throw std::invalid_argument("CNOT control_rail must be 1 or 2");
    }
  }
  throw UnknownName("unknown gate");
}

inline UnitaryGate standard_gate(std::string_view name, std::optional<int> control_rail = std::nullopt) {
  return standard_gate(parse_gate_name(name), control_rail);
}

// ---------------------------------------------------------------------------
// Reduced states and information measures

inline DensityOperator partial_trace(const DensityOperator& rho, std::size_t traced_index) {
  return DensityOperator::sanitized(partial_trace(rho.matrix(), rho.shape(), traced_index),
                                    rho.shape().without(traced_index));
}

// Reduced state of a bipartite pure state computed from its coefficient
// matrix (avoids forming the full projector for large truncations).
inline DensityOperator reduced_state(const PureState& psi, std::size_t keep_index) {
  const auto& s = psi.shape();
  if (s.factors() != 2) throw ShapeMismatch("reduced_state requires a bipartite state");
  if (keep_index > 1) throw ShapeMismatch("keep_index must be 0 or 1");
  const std::size_t da = s.dims[0], db = s.dims[1];
  const std::size_t dk = keep_index == 0 ? da : db;
  Matrix out(dk, dk);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j) {
      const Complex cij = psi[i * db + j];
      if (cij == Complex{}) continue;
      if (keep_index == 0) {
        for (std::size_t ip = 0; ip < da; ++ip) out(ip, i) += psi[ip * db + j] * std::conj(cij);
      } else {
        for (std::size_t jp = 0; jp < db; ++jp) out(jp, j) += psi[i * db + jp] * std::conj(cij);
      }
    }
  return DensityOperator::sanitized(out, SubsystemShape{dk});
}

inline double purity(const DensityOperator& rho) {
  return hs_inner(rho.matrix(), rho.matrix()).real();
}

// Shannon entropy in bits of a spectrum, with 0 log 0 = 0.
inline double entropy_bits(std::span<const double> probabilities) {
  double s = 0.0;
  for (double p : probabilities)
    if (p > 0.0) s -= p * std::log2(p);
  return s;
}

inline double von_neumann_entropy(const DensityOperator& rho) { return entropy_bits(rho.spectrum()); }

inline double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw ShapeMismatch("trace_distance: dimensions differ");
  double s = 0.0;
  for (double l : eigvals_hermitian(rho.matrix() - sigma.matrix())) s += std::abs(l);
  return 0.5 * s;
}

inline double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw ShapeMismatch("fidelity: dimensions differ");
  const auto clip_sqrt = [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; };
  const Matrix sr = hermitian_function(rho.matrix(), clip_sqrt);
  Matrix inner_m = sr * sigma.matrix() * sr;
  inner_m = 0.5 * (inner_m + inner_m.adjoint());
  double root_sum = 0.0;
  for (double l : eigvals_hermitian(inner_m)) root_sum += clip_sqrt(l);
  return root_sum * root_sum;
}

// |<a|b>|^2, insensitive to global phase.
inline double fidelity(const PureState& a, const PureState& b) { return std::norm(inner(a, b)); }

// <psi|rho|psi>. Exact when one side is pure, whereas the general route
// carries ~sqrt(machine epsilon) error for rank-deficient arguments.
inline double fidelity(const DensityOperator& rho, const PureState& psi) {
  if (rho.dim() != psi.dim()) throw ShapeMismatch("fidelity: dimensions differ");
  const auto v = rho.matrix() * psi.amplitudes();
  Complex s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += std::conj(psi[i]) * v[i];
  return s.real();
}

inline double negativity(const DensityOperator& rho, std::size_t transposed_index = 1) {
  if (rho.shape().factors() < 2) throw ShapeMismatch("negativity requires a declared bipartition");
  double s = 0.0;
  for (double l : eigvals_hermitian(partial_transpose(rho.matrix(), rho.shape(), transposed_index)))
    if (l < 0.0) s -= l;
  return s;
}

inline DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  std::vector<std::size_t> dims = a.shape().dims;
  dims.insert(dims.end(), b.shape().dims.begin(), b.shape().dims.end());
  return DensityOperator::sanitized(kron(a.matrix(), b.matrix()), SubsystemShape(std::move(dims)));
}

}  // namespace ctcsim
