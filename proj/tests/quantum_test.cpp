#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ctcsim/quantum.hpp"
#include "ctcsim/random.hpp"
#include "test_util.hpp"

namespace ctcsim {
namespace {

using testing::diag_state;
using testing::half_identity;
using testing::projector;

const double kH = 1.0 / std::numbers::sqrt2;

TEST(BellState, SingletHasOppositeSigns) {
  const PureState singlet = bell_state(BellKind::psi_minus);
  EXPECT_NEAR(singlet[1].real(), kH, 1e-15);
  EXPECT_NEAR(singlet[2].real(), -kH, 1e-15);
  EXPECT_EQ(singlet[0], Complex{});
  EXPECT_EQ(singlet[3], Complex{});
}

TEST(BellState, ListedOrder) {
  const PureState pp = bell_state(BellKind::phi_plus);
  const PureState pm = bell_state(BellKind::phi_minus);
  EXPECT_NEAR(pp[0].real(), kH, 1e-15);
  EXPECT_NEAR(pp[3].real(), kH, 1e-15);
  EXPECT_NEAR(pm[0].real(), kH, 1e-15);
  EXPECT_NEAR(pm[3].real(), -kH, 1e-15);
}

TEST(BellState, PsiPlusIsMaximallyEntangled) {
  const PureState psi = bell_state(BellKind::psi_plus);
  EXPECT_NEAR(psi[1].real(), kH, 1e-15);
  EXPECT_NEAR(psi[2].real(), kH, 1e-15);
  const auto rho = projector(psi);
  for (std::size_t k = 0; k < 2; ++k)
    EXPECT_LE(trace_distance(partial_trace(rho, k), half_identity()), 1e-14);
}

TEST(BellState, Orthonormal) {
  for (auto a : kBellKinds)
    for (auto b : kBellKinds)
      EXPECT_NEAR(std::abs(inner(bell_state(a), bell_state(b))), a == b ? 1.0 : 0.0, 1e-15);
}

TEST(BellState, ParseRoundTrip) {
  for (auto k : kBellKinds) EXPECT_EQ(parse_bell_kind(to_string(k)), k);
  EXPECT_THROW(parse_bell_kind("phi"), UnknownName);
}

TEST(Entanglement, WholeIsPureWhilePartsAreMaximallyMixed) {
  for (auto k : kBellKinds) {
    const auto rho = projector(bell_state(k));
    EXPECT_LE(von_neumann_entropy(rho), 1e-9);
    EXPECT_NEAR(von_neumann_entropy(partial_trace(rho, 0)), 1.0, 1e-9);
    EXPECT_NEAR(von_neumann_entropy(partial_trace(rho, 1)), 1.0, 1e-9);
  }
}

TEST(StandardGate, CnotFlipsTargetWhenControlIsOne) {
  const auto cnot = standard_gate(GateName::CNOT, 1);
  const auto out = apply(cnot, PureState::basis(2, SubsystemShape::qubits(2)));  // |1>|0>
  EXPECT_NEAR(std::abs(out[3]), 1.0, 1e-15);                                     // |1>|1>
  const auto keep = apply(cnot, PureState::basis(1, SubsystemShape::qubits(2)));  // |0>|1>
  EXPECT_NEAR(std::abs(keep[1]), 1.0, 1e-15);
}

TEST(StandardGate, CnotControlRailTwo) {
  const auto cnot = standard_gate(GateName::CNOT, 2);
  const auto out = apply(cnot, PureState::basis(1, SubsystemShape::qubits(2)));  // |0>|1>
  EXPECT_NEAR(std::abs(out[3]), 1.0, 1e-15);
}

TEST(StandardGate, SwapExchangesBasisStates) {
  const auto swap = standard_gate(GateName::SWAP);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      const auto out = apply(swap, PureState::basis(a * 2 + b, SubsystemShape::qubits(2)));
      EXPECT_NEAR(std::abs(out[b * 2 + a]), 1.0, 1e-15);
    }
}

TEST(StandardGate, XIsAnInvolution) {
  const auto x = standard_gate(GateName::X);
  EXPECT_EQ(max_abs_diff((x * x).matrix(), Matrix::identity(2)), 0.0);
}

TEST(StandardGate, Errors) {
  EXPECT_THROW(standard_gate(GateName::X, 1), std::invalid_argument);
  EXPECT_THROW(standard_gate(GateName::CNOT, 3), std::invalid_argument);
  EXPECT_THROW(standard_gate("Y"), UnknownName);
}

TEST(UnitaryGate, RejectsNonUnitary) {
  EXPECT_THROW(UnitaryGate(Matrix{{1, 1}, {0, 1}}, SubsystemShape{2}), InvalidState);
}

TEST(Entropy, PureStateIsZero) {
  EXPECT_NEAR(von_neumann_entropy(projector(PureState::qubit(0.6, Complex(0, 0.8)))), 0.0, 1e-12);
}

TEST(Entropy, MaximallyMixedQubitIsOneBit) {
  EXPECT_DOUBLE_EQ(von_neumann_entropy(half_identity()), 1.0);
}

TEST(Entropy, DiagonalQuarterThreeQuarters) {
  // -Σ λ log2 λ evaluated directly: 0.8112781244591328.
  EXPECT_NEAR(von_neumann_entropy(diag_state(0.25, 0.75)), 0.8112781244591328, 1e-15);
}

TEST(Purity, Examples) {
  EXPECT_DOUBLE_EQ(purity(half_identity()), 0.5);
  EXPECT_DOUBLE_EQ(purity(diag_state(1.0, 0.0)), 1.0);
}

TEST(Negativity, BellProjector) {
  EXPECT_NEAR(negativity(projector(bell_state(BellKind::phi_plus))), 0.5, 1e-14);
  EXPECT_NEAR(negativity(projector(bell_state(BellKind::psi_minus))), 0.5, 1e-14);
}

TEST(Negativity, RequiresBipartition) {
  EXPECT_THROW(negativity(half_identity()), ShapeMismatch);
}

TEST(TraceDistance, SelfIsZero) {
  Rng rng(1);
  for (int i = 0; i < 10; ++i) {
    const auto rho = random_density(SubsystemShape{2, 2}, rng);
    EXPECT_NEAR(trace_distance(rho, rho), 0.0, 1e-15);
  }
}

TEST(TraceDistance, ShapeMismatch) {
  EXPECT_THROW(trace_distance(half_identity(), DensityOperator::maximally_mixed(SubsystemShape{4})),
               ShapeMismatch);
}

TEST(Fidelity, AgreesWithPureOverlapAndIsSymmetric) {
  Rng rng(7);
  for (int i = 0; i < 20; ++i) {
    const auto a = random_pure_state(SubsystemShape{3}, rng);
    const auto b = random_pure_state(SubsystemShape{3}, rng);
    // The spectral route loses half the digits on rank-one arguments.
    EXPECT_NEAR(fidelity(projector(a), projector(b)), fidelity(a, b), 1e-7);
    EXPECT_NEAR(fidelity(projector(a), b), fidelity(a, b), 1e-14);
    const auto r = random_density(SubsystemShape{3}, rng);
    const auto s = random_density(SubsystemShape{3}, rng);
    EXPECT_NEAR(fidelity(r, s), fidelity(s, r), 1e-10);
    EXPECT_NEAR(fidelity(r, r), 1.0, 1e-10);
  }
}

TEST(DensityOperator, ConstructorRejectsViolations) {
  EXPECT_THROW(DensityOperator(Matrix{{0.5, 0.1}, {0.2, 0.5}}, SubsystemShape{2}), InvalidState);
  EXPECT_THROW(DensityOperator(Matrix{{0.6, 0}, {0, 0.6}}, SubsystemShape{2}), InvalidState);
  EXPECT_THROW(DensityOperator(Matrix{{1.5, 0}, {0, -0.5}}, SubsystemShape{2}), InvalidState);
  EXPECT_THROW(DensityOperator(Matrix::identity(2) * 0.5, SubsystemShape{3}), ShapeMismatch);
}

TEST(PureState, RejectsUnnormalized) {
  EXPECT_THROW(PureState({1.0, 1.0}, SubsystemShape{2}), InvalidState);
  EXPECT_THROW(PureState::normalized({0.0, 0.0}, SubsystemShape{2}), InvalidState);
}

TEST(Properties, RandomPureProjectorsHaveZeroEntropy) {
  Rng rng(17);
  for (int i = 0; i < 50; ++i) {
    const auto psi = random_pure_state(SubsystemShape{2, 2}, rng);
    EXPECT_LE(von_neumann_entropy(projector(psi)), 1e-9);
  }
}

TEST(Properties, SchmidtSymmetryOfReducedEntropies) {
  Rng rng(23);
  for (int i = 0; i < 50; ++i) {
    const auto psi = random_pure_state(SubsystemShape{2, 3}, rng);
    const auto rho = projector(psi);
    EXPECT_NEAR(von_neumann_entropy(partial_trace(rho, 0)), von_neumann_entropy(partial_trace(rho, 1)),
                1e-9);
  }
}

TEST(Properties, ProductStatesHaveZeroNegativity) {
  Rng rng(29);
  for (int i = 0; i < 50; ++i) {
    const auto a = random_density(SubsystemShape{2}, rng);
    const auto b = random_density(SubsystemShape{2}, rng);
    EXPECT_LE(negativity(tensor(a, b)), 1e-10);
  }
}

TEST(Properties, ConstructedStatesSatisfyInvariants) {
  Rng rng(31);
  for (int i = 0; i < 50; ++i) {
    const auto rho = random_density(SubsystemShape{2, 2}, rng);
    EXPECT_LE(hermiticity_defect(rho.matrix()), 1e-10);
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-10);
    EXPECT_GE(rho.spectrum().front(), -1e-10);
  }
}

TEST(ReducedState, MatchesPartialTraceOfProjector) {
  Rng rng(37);
  for (int i = 0; i < 10; ++i) {
    const auto psi = random_pure_state(SubsystemShape{3, 2}, rng);
    const auto rho = projector(psi);
    EXPECT_LE(max_abs_diff(reduced_state(psi, 0).matrix(), partial_trace(rho, 1).matrix()), 1e-14);
    EXPECT_LE(max_abs_diff(reduced_state(psi, 1).matrix(), partial_trace(rho, 0).matrix()), 1e-14);
  }
}

}  // namespace
}  // namespace ctcsim
