#pragma once

// Temperatures of accelerated observers and black holes, Rindler
// coordinates, the Rindler-mode expansion of the Minkowski vacuum (one
// mode at a time), Schwarzschild clock rates and Morris-Thorne wormhole
// transit estimates.
//
// Rindler and vacuum-mode functions use natural units (c = ħ = k = 1);
// temperature, mass and wormhole functions take SI inputs.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ctcsim/errors.hpp"
#include "ctcsim/quantum.hpp"

namespace ctcsim::relativity {

// CODATA 2018.
struct PhysicalConstants {
  double hbar = 1.054571817e-34;    // J s
  double k_boltzmann = 1.380649e-23;  // J/K
  double c = 299792458.0;           // m/s
  double G = 6.67430e-11;           // m^3 kg^-1 s^-2
};

inline constexpr PhysicalConstants kCodata2018{};

inline constexpr double kSolarMass = 1.989e30;  // kg

namespace detail {
inline void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument(std::string(what) + " must be positive");
}
}  // namespace detail

// T = a ħ / (2π k c)
inline double unruh_temperature(double acceleration, const PhysicalConstants& pc = kCodata2018) {
  detail::require_positive(acceleration, "acceleration");
  return acceleration * pc.hbar / (2.0 * std::numbers::pi * pc.k_boltzmann * pc.c);
}

inline double unruh_acceleration(double temperature, const PhysicalConstants& pc = kCodata2018) {
  detail::require_positive(temperature, "temperature");
  return temperature * 2.0 * std::numbers::pi * pc.k_boltzmann * pc.c / pc.hbar;
}

// T_H = ħ c^3 / (8π G M k)
inline double hawking_temperature(double mass_kg, const PhysicalConstants& pc = kCodata2018) {
  detail::require_positive(mass_kg, "mass");
  return pc.hbar * pc.c * pc.c * pc.c /
         (8.0 * std::numbers::pi * pc.G * mass_kg * pc.k_boltzmann);
}

// G M / c^2, the mass in metres.
inline double geometric_mass(double mass_kg, const PhysicalConstants& pc = kCodata2018) {
  detail::require_positive(mass_kg, "mass");
  return pc.G * mass_kg / (pc.c * pc.c);
}

enum class Wedge { right, left };

struct MinkowskiPoint {
  double t;
  double z;
};

inline MinkowskiPoint rindler_to_minkowski(double eta, double xi, double a, Wedge wedge) {
  detail::require_positive(a, "acceleration");
  const double r = std::exp(a * xi) / a;
  const double sign = wedge == Wedge::right ? 1.0 : -1.0;
  return {sign * r * std::sinh(a * eta), sign * r * std::cosh(a * eta)};
}

inline constexpr std::size_t kDefaultTruncation = 60;
inline constexpr double kTailWarning = 1e-9;

/// One Rindler mode pair of the Minkowski vacuum,
///   Σ_n c q^n |n>_R |n>_L,   q = exp(-π ω / a),
/// truncated at n_max and renormalized.
struct TwoModeSqueezedState {
  double q = 0.0;
  std::size_t n_max = 0;
  std::vector<double> amplitudes;  // c q^n, unit norm after truncation
  double tail_mass = 0.0;          // norm discarded by truncation, q^{2(n_max+1)}
  bool truncation_warning = false;

  // |n>_R |n>_L as a (n_max+1)^2 state vector, right wedge first.
  PureState joint_state() const {
    const std::size_t d = n_max + 1;
    std::vector<Complex> v(d * d);
    for (std::size_t n = 0; n < d; ++n) v[n * d + n] = amplitudes[n];
    return PureState(std::move(v), SubsystemShape{d, d});
  }

  // Diagonal weights of either wedge's reduced state.
  std::vector<double> wedge_populations() const {
    std::vector<double> p(amplitudes.size());
    for (std::size_t n = 0; n < p.size(); ++n) p[n] = amplitudes[n] * amplitudes[n];
    return p;
  }

  double mean_occupation() const {
    double s = 0.0;
    for (std::size_t n = 0; n < amplitudes.size(); ++n) s += static_cast<double>(n) * amplitudes[n] * amplitudes[n];
    return s;
  }
};

inline TwoModeSqueezedState vacuum_mode_state(double omega_over_a, std::size_t n_max = kDefaultTruncation) {
  detail::require_positive(omega_over_a, "omega_over_a");
  if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
  TwoModeSqueezedState s;
  s.q = std::exp(-std::numbers::pi * omega_over_a);
  s.n_max = n_max;
  s.amplitudes.resize(n_max + 1);
  double norm = 0.0;
  double qn = 1.0;
  for (std::size_t n = 0; n <= n_max; ++n) {
    s.amplitudes[n] = qn;
    norm += qn * qn;
    qn *= s.q;
  }
  norm = std::sqrt(norm);
  for (auto& c : s.amplitudes) c /= norm;
  s.tail_mass = std::pow(s.q, 2.0 * static_cast<double>(n_max + 1));
  s.truncation_warning = s.tail_mass > kTailWarning;
  return s;
}

// Bose occupation of a Rindler mode, 1/(e^{2π ω/a} - 1).
inline double thermal_occupation(double omega_over_a) {
  detail::require_positive(omega_over_a, "omega_over_a");
  return 1.0 / std::expm1(2.0 * std::numbers::pi * omega_over_a);
}

// Entropy in bits of a thermal mode with mean occupation nbar.
inline double thermal_entropy_bits(double nbar) {
  if (nbar < 0.0) throw std::invalid_argument("mean occupation must be non-negative");
  if (nbar == 0.0) return 0.0;
  return (nbar + 1.0) * std::log2(nbar + 1.0) - nbar * std::log2(nbar);
}

// Stationary-observer proper-time rate sqrt(1 - 2M/r), M and r in metres.
inline double schwarzschild_dilation(double mass_m, double r) {
  detail::require_positive(mass_m, "geometric mass");
  if (!(r > 2.0 * mass_m))
    throw std::domain_error("radius " + std::to_string(r) + " is at or inside the horizon r = 2M");
  return std::sqrt(1.0 - 2.0 * mass_m / r);
}

struct WormholeGeometry {
  double b0;  // throat radius, m
  double a0;  // transition-shell thickness, m
  double v;   // radial speed, m/s

  WormholeGeometry(double throat, double shell, double speed, const PhysicalConstants& pc = kCodata2018)
      : b0(throat), a0(shell), v(speed) {
    detail::require_positive(b0, "b0");
    detail::require_positive(a0, "a0");
    detail::require_positive(v, "v");
    if (!(v < pc.c)) throw std::invalid_argument("v must be below the speed of light");
  }

  // Shape function b(r) for r >= b0.
  double shape(double r) const {
    if (r < b0) throw std::domain_error("shape function is defined for r >= b0");
    if (r >= b0 + a0) return 0.0;
    const double u = 1.0 - (r - b0) / a0;
    return b0 * u * u;
  }
};

inline constexpr double kTidalLength = 1e8;  // m

struct WormholeTransit {
  double tau;          // π a0 / v, seconds
  double lower_bound;  // sqrt(a0 / b0), seconds
  double tidal_ratio;  // (v/c)^2 / (a0 b0 / L^2); <= 1 is benign
  bool tidal_ok;
};

inline WormholeTransit wormhole_transit(const WormholeGeometry& g, const PhysicalConstants& pc = kCodata2018) {
  const double beta = g.v / pc.c;
  const double lhs = beta * beta;
  const double rhs = g.a0 * g.b0 / (kTidalLength * kTidalLength);
  return {std::numbers::pi * g.a0 / g.v, std::sqrt(g.a0 / g.b0), lhs / rhs, lhs <= rhs};
}

}  // namespace ctcsim::relativity
