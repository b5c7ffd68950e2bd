#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ctcsim/ctc.hpp"
#include "ctcsim/random.hpp"
#include "ctcsim/teleport.hpp"
#include "test_util.hpp"

namespace ctcsim {
namespace {

using testing::random_amplitudes;

const double kH = 1.0 / std::numbers::sqrt2;
const double kPi = std::numbers::pi;

TEST(Timeline, RequiresOrderedTimes) {
  EXPECT_NO_THROW(TeleportTimeline(0, 1, 2));
  EXPECT_THROW(TeleportTimeline(1, 1, 2), std::invalid_argument);
  EXPECT_THROW(TeleportTimeline(0, 3, 2), std::invalid_argument);
}

TEST(Evolve, ZeroIntervalIsIdentity) {
  const auto psi = PureState::qubit(0.6, Complex(0, 0.8));
  const auto out = evolve(psi, 3.0, 0.0);
  EXPECT_EQ(out[0], psi[0]);
  EXPECT_EQ(out[1], psi[1]);
}

TEST(Evolve, GroundStateIsStationary) {
  const auto out = evolve(PureState::qubit(1, 0), 2.5, 17.0);
  EXPECT_EQ(out[0], Complex(1.0));
  EXPECT_EQ(out[1], Complex(0.0));
}

TEST(Evolve, HalfTurnFlipsRelativeSign) {
  const auto out = evolve(PureState::qubit(kH, kH), 1.0, kPi);
  EXPECT_NEAR(std::abs(out[0] - kH), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out[1] + kH), 0.0, 1e-15);
}

TEST(Evolve, RejectsWideStates) {
  EXPECT_THROW(evolve(bell_state(BellKind::phi_plus), 1.0, 1.0), ShapeMismatch);
}

TEST(BellProbabilities, MaximallyEntangledResourceGivesQuarters) {
  Rng rng(1);
  for (auto kind : kBellKinds) {
    for (int i = 0; i < 20; ++i) {
      const auto p = bell_probabilities(random_pure_state(SubsystemShape{2}, rng), bell_state(kind));
      for (double x : p) EXPECT_NEAR(x, 0.25, 1e-12);
    }
  }
}

TEST(BellProbabilities, ProductResource) {
  const auto zero_zero = PureState::basis(0, SubsystemShape::qubits(2));
  const auto p = bell_probabilities(PureState::qubit(1, 0), zero_zero);
  const double expected[] = {0.5, 0.5, 0.0, 0.0};
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(p[k], expected[k], 1e-15);
}

TEST(BellProbabilities, CompletenessOnRandomInputs) {
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const auto p = bell_probabilities(random_pure_state(SubsystemShape{2}, rng),
                                      random_pure_state(SubsystemShape{2, 2}, rng));
    double sum = 0.0;
    for (double x : p) {
      EXPECT_GE(x, 0.0);
      sum += x;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(BellProbabilities, ShapeChecks) {
  EXPECT_THROW(bell_probabilities(bell_state(BellKind::phi_plus), bell_state(BellKind::phi_plus)),
               ShapeMismatch);
  EXPECT_THROW(bell_probabilities(PureState::qubit(1, 0), PureState::qubit(1, 0)), ShapeMismatch);
}

TEST(Retrodiction, BasisStateKeepsOnlyAPhase) {
  const TeleportTimeline tl(0.0, 1.0, 2.0);
  const auto out = retrodict_source({PureState::qubit(1, 0), 4.0, 1.0}, tl);
  EXPECT_NEAR(fidelity(out, PureState::qubit(1, 0)), 1.0, 1e-15);
}

TEST(Retrodiction, MatchesTimeRetardedState) {
  Rng rng(3);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int i = 0; i < 20; ++i) {
    const auto [mu, nu] = random_amplitudes(rng);
    const double omega = u(rng), ts = u(rng);
    const TeleportTimeline tl(ts, ts + 1.0 + u(rng), ts + 7.0 + u(rng));
    const auto out = retrodict_source({PureState::qubit(mu, nu), omega, tl.t_p}, tl);
    const auto expected = PureState::qubit(mu * std::polar(1.0, (tl.t_s - tl.t_p) * omega), nu);
    EXPECT_NEAR(std::abs(inner(expected, out)), 1.0, 1e-12);
  }
}

TEST(Retrodiction, RoundTripRecoversPreparedState) {
  Rng rng(4);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    const auto [mu, nu] = random_amplitudes(rng);
    const double omega = u(rng), ts = u(rng) - 5.0;
    const TeleportTimeline tl(ts, ts + 0.1 + u(rng), ts + 10.2 + u(rng));
    const TimedQubit q{PureState::qubit(mu, nu), omega, tl.t_p};
    const auto back = retrodict_source(q, tl);
    EXPECT_GE(fidelity(evolve(back, omega, tl.t_p - tl.t_s), q.state), 1.0 - 1e-12);
  }
}

TEST(Retrodiction, BobAtMeasurementTime) {
  const auto [mu, nu] = std::pair<Complex, Complex>{0.6, Complex(0, 0.8)};
  const double omega = 1.3;
  const TeleportTimeline tl(-2.0, 0.5, 4.0);
  const auto back = retrodict_source({PureState::qubit(mu, nu), omega, tl.t_p}, tl);
  const auto at_m = evolve(back, omega, tl.t_m - tl.t_s);
  const auto expected = PureState::qubit(mu, std::polar(1.0, -(tl.t_m - tl.t_p) * omega) * nu);
  EXPECT_NEAR(fidelity(at_m, expected), 1.0, 1e-14);
}

TEST(Retrodiction, CreationTimeMustMatchTimeline) {
  const TeleportTimeline tl(0.0, 1.0, 2.0);
  EXPECT_THROW(retrodict_source({PureState::qubit(1, 0), 1.0, 0.5}, tl), std::invalid_argument);
}

TEST(LoopWeight, Examples) {
  EXPECT_EQ(loop_consistency_weight(standard_gate(GateName::X)), 0.0);
  EXPECT_EQ(loop_consistency_weight(standard_gate(GateName::I)), 1.0);
  EXPECT_EQ(loop_consistency_weight(standard_gate(GateName::Z)), 0.0);
  EXPECT_NEAR(loop_consistency_weight(standard_gate(GateName::H)), 0.0, 1e-30);
}

TEST(LoopWeight, GlobalPhaseIsHarmless) {
  for (double theta = 0.0; theta < 2 * kPi; theta += 0.1) {
    const UnitaryGate f(Matrix::identity(2) * std::polar(1.0, theta), SubsystemShape{2});
    EXPECT_NEAR(loop_consistency_weight(f), 1.0, 1e-15);
  }
}

TEST(LoopWeight, AgreesWithPostSelectedCircuit) {
  // Bob applies f and sends the qubit back: wiring (f ⊗ I)·SWAP, whose
  // contraction is (Tr f / 2) I, so every input survives with the loop weight.
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    const auto f = haar_unitary(SubsystemShape{2}, rng);
    const CtcWiring w(tensor(f, standard_gate(GateName::I)) * standard_gate(GateName::SWAP));
    EXPECT_LE(max_abs_diff(pctc_operator(w), Matrix::identity(2) * (f.matrix().trace() / 2.0)), 1e-15);
    const auto psi = random_pure_state(SubsystemShape{2}, rng);
    EXPECT_NEAR(apply_pctc(psi, w).consistency_weight, loop_consistency_weight(f), 1e-14);
  }
  const CtcWiring flip(tensor(standard_gate(GateName::X), standard_gate(GateName::I)) *
                       standard_gate(GateName::SWAP));
  EXPECT_THROW(apply_pctc(PureState::qubit(1, 0), flip), ParadoxError);
}

}  // namespace
}  // namespace ctcsim
