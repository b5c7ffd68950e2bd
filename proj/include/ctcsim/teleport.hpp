#pragma once

// Teleportation read as a post-selected time machine. Qubits are built from
// energy eigenstates, so free evolution only rotates the |1> phase.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "ctcsim/errors.hpp"
#include "ctcsim/quantum.hpp"

namespace ctcsim {

struct TimedQubit {
  PureState state;
  double omega = 0.0;       // rad/s
  double created_at = 0.0;  // s
};

struct TeleportTimeline {
  double t_s;  // Bell pair created
  double t_p;  // Alice prepares her qubit
  double t_m;  // Bell measurement

  TeleportTimeline(double source, double prepare, double measure)
      : t_s(source), t_p(prepare), t_m(measure) {
    if (!(t_s < t_p && t_p < t_m)) throw std::invalid_argument("timeline requires t_s < t_p < t_m");
  }
};

// mu|0> + e^{-i omega tau} nu|1>
inline PureState evolve(const PureState& psi, double omega, double tau) {
  if (psi.dim() != 2) throw ShapeMismatch("evolve expects a single qubit");
  return PureState({psi[0], std::polar(1.0, -omega * tau) * psi[1]}, psi.shape());
}

inline PureState evolve(const TimedQubit& q, double tau) { return evolve(q.state, q.omega, tau); }

// Entanglement resource shared by Alice and Bob: (|01> + |10>)/√2.
inline PureState teleport_resource() { return bell_state(BellKind::psi_plus); }

// Born probabilities of the four Bell outcomes (kBellKinds order) when
// `prepared` is measured jointly with qubit 0 of `resource` (the arm sent to
// Alice); qubit 1 stays with Bob.
inline std::array<double, 4> bell_probabilities(const PureState& prepared, const PureState& resource) {
  if (prepared.dim() != 2) throw ShapeMismatch("prepared state must be one qubit");
  if (resource.dim() != 4) throw ShapeMismatch("resource state must be two qubits");
  const PureState joint = tensor(prepared, resource);  // (prepared, alice arm, bob)
  std::array<double, 4> p{};
  for (std::size_t k = 0; k < 4; ++k) {
    const PureState bell = bell_state(kBellKinds[k]);
    for (std::size_t bob = 0; bob < 2; ++bob) {
      Complex amp = 0.0;
      for (std::size_t i = 0; i < 4; ++i) amp += std::conj(bell[i]) * joint[i * 2 + bob];
      p[k] += std::norm(amp);
    }
  }
  return p;
}

namespace detail {

// Contracts qubit 0 of a two-qubit state with <bra| and returns qubit 1.
inline std::vector<Complex> contract_first(const PureState& bra, const PureState& two_qubit) {
  std::vector<Complex> out(2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) out[j] += std::conj(bra[i]) * two_qubit[i * 2 + j];
  return out;
}

}  // namespace detail

// Bob's state at t_s inferred from the |phi+> outcome: project the measured
// Bell state onto Alice's preparation, evolve the remaining arm back to the
// source, and project onto the source state. The result is the
// time-retarded copy mu e^{i(t_s - t_p) omega}|0> + nu|1>.
inline PureState retrodict_source(const TimedQubit& prepared, const TeleportTimeline& timeline) {
  if (prepared.state.dim() != 2) throw ShapeMismatch("prepared state must be one qubit");
  if (prepared.created_at != timeline.t_p)
    throw std::invalid_argument("prepared qubit must be created at the timeline's t_p");
  const PureState resource = teleport_resource();
  const PureState alice_arm =
      PureState::normalized(detail::contract_first(prepared.state, resource), SubsystemShape{2});
  const PureState at_source = evolve(alice_arm, prepared.omega, timeline.t_s - timeline.t_p);
  return PureState::normalized(detail::contract_first(at_source, resource), SubsystemShape{2});
}

// |Tr f / 2|^2: relative weight of the self-consistent loop in which Bob
// applies f to the qubit he receives and has it teleported back into the
// past. Zero means the loop never happens.
inline double loop_consistency_weight(const UnitaryGate& f) {
  if (f.dim() != 2) throw ShapeMismatch("loop_consistency_weight expects a single-qubit gate");
  return std::norm(f.matrix().trace() / 2.0);
}

}  // namespace ctcsim
