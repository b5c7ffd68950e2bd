// Acceptance checks. One PASS/FAIL line per criterion; nonzero exit on any failure.

#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "ctcsim/ctc.hpp"
#include "ctcsim/random.hpp"
#include "ctcsim/relativity.hpp"
#include "ctcsim/scenarios.hpp"
#include "ctcsim/teleport.hpp"

namespace {

using namespace ctcsim;
namespace rel = ctcsim::relativity;

// Returns an empty string on success, a reason otherwise.
using Check = std::function<std::string()>;

std::string fail(const char* fmt, double x) {
  char buf[160];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

DensityOperator diag(std::vector<double> p) {
  const std::size_t n = p.size();
  return DensityOperator(Matrix::diagonal(std::move(p)), SubsystemShape{n});
}

std::string deutsch_cnot() {
  Rng rng(101);
  const auto w = detail::cnot_wiring();
  double worst_fp = 0, worst_out = 0, worst_res = 0;
  for (int i = 0; i < 50; ++i) {
    const PureState psi = random_pure_state(SubsystemShape{2}, rng);
    const double a2 = std::norm(psi[0]), b2 = std::norm(psi[1]);
    const auto s = solve_deutsch_iterative(DensityOperator::from_pure(psi), w);
    worst_fp = std::max(worst_fp, trace_distance(s.fixed_point, diag({a2, b2})));
    worst_out = std::max(worst_out, trace_distance(s.output, diag({a2 * a2 + b2 * b2, 2 * a2 * b2})));
    worst_res = std::max(worst_res, s.residual);
  }
  if (worst_fp > 1e-9) return fail("fixed point off by %.3g", worst_fp);
  if (worst_out > 1e-9) return fail("output off by %.3g", worst_out);
  if (worst_res > 1e-9) return fail("residual %.3g", worst_res);
  return {};
}

std::string pctc_cnot() {
  Rng rng(102);
  const auto w = detail::cnot_wiring();
  const PureState zero = PureState::qubit(1, 0);
  double worst = 1;
  for (int n = 0; n < 50;) {
    const PureState psi = random_pure_state(SubsystemShape{2}, rng);
    if (std::abs(psi[0] + psi[1]) <= 0.1) continue;
    ++n;
    worst = std::min(worst, fidelity(apply_pctc(psi, w).state, zero));
  }
  if (worst < 1 - 1e-10) return fail("fidelity with |0> only %.15g", worst);
  const double h = 1 / std::numbers::sqrt2;
  try {
    apply_pctc(PureState::qubit(h, -h), w);
    return "alpha = -beta did not raise ParadoxError";
  } catch (const ParadoxError&) {
  }
  return {};
}

std::string swap_limit() {
  Rng rng(103);
  const auto w = detail::swap_wiring();
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const auto rho = random_density(SubsystemShape{2}, rng);
    worst = std::max(worst, trace_distance(solve_deutsch_iterative(rho, w).output, rho));
    worst = std::max(worst, trace_distance(apply_pctc(rho, w).state, rho));
  }
  if (worst > 1e-10) return fail("output differs from input by %.3g", worst);
  return {};
}

std::string entangled_ctc() {
  const auto pc = run_scenario("entangled_ctc", {{"method", "pctc"}});
  const auto dt = run_scenario("entangled_ctc", {{"method", "deutsch"}});
  if (pc.get<double>("fidelity_plus_zero") < 1 - 1e-10)
    return fail("pctc fidelity with |+>|0> %.15g", pc.get<double>("fidelity_plus_zero"));
  if (dt.get<double>("distance_to_maximally_mixed") > 1e-10)
    return fail("deutsch distance to I/4 %.3g", dt.get<double>("distance_to_maximally_mixed"));
  if (std::abs(pc.get<double>("alice_purity") - 1) > 1e-10)
    return fail("pctc Alice purity %.15g", pc.get<double>("alice_purity"));
  if (std::abs(dt.get<double>("alice_purity") - 0.5) > 1e-10)
    return fail("deutsch Alice purity %.15g", dt.get<double>("alice_purity"));
  return {};
}

std::string equivalence_sweep() {
  const auto r = run_scenario("equivalence_sweep", {{"count", "500"}});
  if (r.get<double>("consistent_fraction") != 1.0)
    return fail("consistent fraction %.6g", r.get<double>("consistent_fraction"));
  if (r.get<double>("max_iterative_residual") > 1e-8)
    return fail("iterative residual %.3g", r.get<double>("max_iterative_residual"));
  if (r.get<double>("agreement_rate") < 0.99) return fail("agreement rate %.4f", r.get<double>("agreement_rate"));
  // Every disagreement has to carry a contraction rate diagnostic.
  const Table& slow = r.get<Table>("disagreements");
  for (const auto& row : slow.rows)
    if (!(row.at(3) > 0)) return "disagreement without a contraction rate";
  return {};
}

std::string teleportation() {
  Rng rng(106);
  const PureState resource = teleport_resource();
  for (int i = 0; i < 100; ++i) {
    const auto probs = bell_probabilities(random_pure_state(SubsystemShape{2}, rng), resource);
    for (double p : probs)
      if (std::abs(p - 0.25) > 1e-12) return fail("Bell outcome probability %.15g", p);
  }
  std::uniform_real_distribution<double> u(0.0, 10.0);
  double worst = 1;
  for (int i = 0; i < 100; ++i) {
    const double omega = u(rng), ts = u(rng) - 5;
    const TeleportTimeline tl(ts, ts + 0.1 + u(rng), ts + 10.2 + u(rng));
    const TimedQubit q{random_pure_state(SubsystemShape{2}, rng), omega, tl.t_p};
    const PureState back = retrodict_source(q, tl);
    worst = std::min(worst, fidelity(evolve(back, omega, tl.t_p - tl.t_s), q.state));
  }
  if (worst < 1 - 1e-12) return fail("round trip fidelity %.15g", worst);
  if (loop_consistency_weight(standard_gate(GateName::X)) != 0.0) return "weight(X) is not exactly 0";
  if (loop_consistency_weight(standard_gate(GateName::I)) != 1.0) return "weight(I) is not exactly 1";
  return {};
}

std::string unruh() {
  const double a = rel::unruh_acceleration(1.0);
  if (std::abs(a / 2.466e20 - 1) > 1e-3) return fail("a(1 K) = %.6g", a);
  return {};
}

std::string hawking() {
  const double t = rel::hawking_temperature(1.989e30);
  if (std::abs(t / 6.17e-8 - 1) > 1e-2) return fail("T(solar mass) = %.6g", t);
  return {};
}

std::string vacuum_thermality() {
  for (double x : {0.1, 0.25, 0.5, 1.0}) {
    const auto s = rel::vacuum_mode_state(x, 60);
    const DensityOperator wedge = reduced_state(s.joint_state(), 0);
    const double q2 = std::exp(-2 * std::numbers::pi * x);
    std::vector<double> thermal(61);
    for (std::size_t n = 0; n <= 60; ++n) thermal[n] = (1 - q2) * std::pow(q2, static_cast<double>(n));
    double bc = 0;
    const auto p = s.wedge_populations();
    for (std::size_t n = 0; n <= 60; ++n) bc += std::sqrt(p[n] * thermal[n]);
    const double f_closed = bc * bc;
    const double f_state = fidelity(wedge, diag(p));
    if (f_closed < 1 - 1e-8) return fail("fidelity with thermal weights %.15g", f_closed);
    if (std::abs(f_state - 1) > 1e-10) return fail("traced wedge is not diagonal in n, fidelity %.15g", f_state);
    const double nbar = 1 / std::expm1(2 * std::numbers::pi * x);
    if (std::abs(s.mean_occupation() / nbar - 1) > 1e-10)
      return fail("mean occupation relative error %.3g", s.mean_occupation() / nbar - 1);
  }
  return {};
}

std::string wormhole() {
  const double c = rel::kCodata2018.c;
  for (double a0 : {1.0, 1e4, 3.7e5}) {
    const double v = 1e-4 * c;
    const auto t = rel::wormhole_transit(rel::WormholeGeometry(a0, a0, v));
    if (t.lower_bound != 1.0) return fail("lower bound %.17g", t.lower_bound);
    const double tau = std::numbers::pi * a0 / v;
    if (std::abs(t.tau / tau - 1) > 1e-12) return fail("tau relative error %.3g", t.tau / tau - 1);
  }
  // Walk speeds across the threshold one ulp at a time.
  const double a0 = 2e4, b0 = 5e3, limit = a0 * b0 / (1e8 * 1e8);
  double v = std::sqrt(limit) * c;
  for (int i = 0; i < 8; ++i) v = std::nextafter(v, 0.0);
  bool saw_ok = false, saw_flag = false;
  for (int i = 0; i < 16; ++i, v = std::nextafter(v, c)) {
    const double beta = v / c;
    const bool expect_ok = beta * beta <= limit;
    const bool ok = rel::wormhole_transit(rel::WormholeGeometry(b0, a0, v)).tidal_ok;
    if (ok != expect_ok) return fail("tidal flag wrong at v = %.17g", v);
    (ok ? saw_ok : saw_flag) = true;
  }
  if (!(saw_ok && saw_flag)) return "threshold walk did not cross the flip";
  return {};
}

std::string nonlinearity() {
  const auto w = detail::cnot_wiring();
  const double h = 1 / std::numbers::sqrt2;
  const auto s1 = DensityOperator::from_pure(PureState::qubit(1, 0));
  const auto s2 = DensityOperator::from_pure(PureState::qubit(h, h));
  const DensityOperator mix(0.5 * (s1.matrix() + s2.matrix()), SubsystemShape{2});
  const Matrix avg =
      0.5 * (solve_deutsch_iterative(s1, w).output.matrix() + solve_deutsch_iterative(s2, w).output.matrix());
  const double gap = trace_distance(solve_deutsch_iterative(mix, w).output, DensityOperator(avg, SubsystemShape{2}));
  if (!(gap > 0.1)) return fail("linearity gap only %.6g", gap);
  return {};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Check>> criteria{
      {"deutsch_cnot closed forms", deutsch_cnot},
      {"pctc_cnot ground state and paradox", pctc_cnot},
      {"swap limit", swap_limit},
      {"entangled ctc", entangled_ctc},
      {"equivalence sweep", equivalence_sweep},
      {"teleportation", teleportation},
      {"unruh acceleration at 1 K", unruh},
      {"hawking temperature of the sun", hawking},
      {"vacuum thermality", vacuum_thermality},
      {"wormhole transit", wormhole},
      {"deutsch nonlinearity witness", nonlinearity},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string why;
    try {
      why = criteria[i].second();
    } catch (const std::exception& e) {
      why = std::string("threw: ") + e.what();
    }
    if (why.empty()) {
      std::printf("PASS %2zu %s\n", i + 1, criteria[i].first);
    } else {
      ++failures;
      std::printf("FAIL %2zu %s: %s\n", i + 1, criteria[i].first, why.c_str());
    }
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
