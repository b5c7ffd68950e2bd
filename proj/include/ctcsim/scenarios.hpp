#pragma once

// Named, parameterized reproductions of the worked results. Each scenario
// reads string parameters (unknown keys are rejected), applies defaults,
// and returns an ordered table of outputs.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ctcsim/ctc.hpp"
#include "ctcsim/errors.hpp"
#include "ctcsim/quantum.hpp"
#include "ctcsim/random.hpp"
#include "ctcsim/relativity.hpp"
#include "ctcsim/teleport.hpp"

namespace ctcsim {

class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

using Output = std::variant<DensityOperator, PureState, double, bool, Table, std::string>;
using ParamMap = std::map<std::string, std::string>;

struct ScenarioResult {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;  // resolved, defaults included
  std::vector<std::pair<std::string, Output>> outputs;      // in report order
  std::vector<std::string> notes;

  void put(std::string key, Output value) { outputs.emplace_back(std::move(key), std::move(value)); }

  const Output& at(std::string_view key) const {
    for (const auto& [k, v] : outputs)
      if (k == key) return v;
    throw UnknownName("no output named '" + std::string(key) + "' in " + name);
  }

  template <typename T>
  const T& get(std::string_view key) const {
    return std::get<T>(at(key));
  }
};

// Seed and solver settings shared by every scenario.
struct RunOptions {
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::optional<std::size_t> max_iter;

  IterationOptions iteration() const {
    IterationOptions o;
    if (tol) o.tol = *tol;
    if (max_iter) o.max_iter = *max_iter;
    return o;
  }
};

// Shortest decimal form that reads back to the same double.
inline std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general);
  return std::string(buf, r.ptr);
}

inline std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return format_double(z.real());
  return "(" + format_double(z.real()) + "," + format_double(z.imag()) + ")";
}

namespace detail {

inline double parse_double(std::string_view key, std::string_view text) {
  double x = 0.0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), x);
  if (r.ec != std::errc() || r.ptr != text.data() + text.size() || !std::isfinite(x))
    throw InvalidParameter("parameter " + std::string(key) + ": '" + std::string(text) + "' is not a number");
  return x;
}

// Tracks which keys were read so leftovers can be reported.
class ParamReader {
 public:
  ParamReader(std::string scenario, const ParamMap& given) : scenario_(std::move(scenario)), given_(given) {}

  double real(const std::string& key, double fallback) {
    const double x = raw(key) ? parse_double(key, *raw(key)) : fallback;
    record(key, format_double(x));
    return x;
  }

  double positive(const std::string& key, double fallback) {
    const double x = real(key, fallback);
    if (!(x > 0.0)) throw InvalidParameter(where(key) + " must be positive");
    return x;
  }

  // Accepts "re" or "(re,im)".
  Complex complex(const std::string& key, Complex fallback) {
    Complex z = fallback;
    if (const auto text = raw(key)) {
      if (!text->empty() && text->front() == '(') {
        std::istringstream in(*text);
        in >> z;
        if (!in || in.peek() != std::char_traits<char>::eof() || !std::isfinite(z.real()) ||
            !std::isfinite(z.imag()))
          throw InvalidParameter(where(key) + ": '" + *text + "' is not a complex number");
      } else {
        z = parse_double(key, *text);
      }
    }
    record(key, format_complex(z));
    return z;
  }

  std::size_t count(const std::string& key, std::size_t fallback, std::size_t min = 1) {
    std::size_t n = fallback;
    if (const auto text = raw(key)) {
      const auto r = std::from_chars(text->data(), text->data() + text->size(), n);
      if (r.ec != std::errc() || r.ptr != text->data() + text->size())
        throw InvalidParameter(where(key) + ": '" + *text + "' is not a non-negative integer");
    }
    if (n < min) throw InvalidParameter(where(key) + " must be at least " + std::to_string(min));
    record(key, std::to_string(n));
    return n;
  }

  std::string choice(const std::string& key, const std::string& fallback,
                     std::initializer_list<std::string_view> allowed) {
    const std::string v = raw(key) ? *raw(key) : fallback;
    if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
      std::string list;
      for (auto a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
      throw InvalidParameter(where(key) + ": '" + v + "' is not one of " + list);
    }
    record(key, v);
    return v;
  }

  // Comma-separated positive reals.
  std::vector<double> positives(const std::string& key, const std::vector<double>& fallback) {
    std::vector<double> xs = fallback;
    if (const auto text = raw(key)) {
      xs.clear();
      std::string_view rest = *text;
      while (true) {
        const auto comma = rest.find(',');
        xs.push_back(parse_double(key, rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
      }
    }
    std::string shown;
    for (double x : xs) {
      if (!(x > 0.0)) throw InvalidParameter(where(key) + " entries must be positive");
      shown += (shown.empty() ? "" : ",") + format_double(x);
    }
    record(key, shown);
    return xs;
  }

  // Throws for any given key no scenario code asked for.
  std::vector<std::pair<std::string, std::string>> finish() const {
    for (const auto& [k, v] : given_)
      if (!used_.count(k)) throw InvalidParameter("scenario " + scenario_ + " has no parameter '" + k + "'");
    return resolved_;
  }

 private:
  std::optional<std::string> raw(const std::string& key) const {
    const auto it = given_.find(key);
    if (it == given_.end()) return std::nullopt;
    return it->second;
  }
  void record(const std::string& key, std::string shown) {
    used_.insert(key);
    resolved_.emplace_back(key, std::move(shown));
  }
  std::string where(const std::string& key) const { return scenario_ + " parameter " + key; }

  std::string scenario_;
  const ParamMap& given_;
  std::set<std::string> used_;
  std::vector<std::pair<std::string, std::string>> resolved_;
};

inline CtcWiring cnot_wiring() { return CtcWiring(standard_gate(GateName::CNOT, 1)); }
inline CtcWiring swap_wiring() { return CtcWiring(standard_gate(GateName::SWAP)); }

// (X ⊗ I)·SWAP: the CTC qubit comes back flipped; C = 0.
inline CtcWiring grandfather_wiring() {
  return CtcWiring(tensor(standard_gate(GateName::X), standard_gate(GateName::I)) * standard_gate(GateName::SWAP));
}

inline DensityOperator projector(const PureState& psi) { return DensityOperator::from_pure(psi); }

inline PureState read_qubit(ParamReader& p, Complex alpha, Complex beta) {
  const Complex a = p.complex("alpha", alpha);
  const Complex b = p.complex("beta", beta);
  try {
    return PureState::qubit(a, b);
  } catch (const InvalidState&) {
    throw InvalidParameter("alpha and beta cannot both be zero");
  }
}

inline CtcMethod parse_method(const std::string& m) {
  if (m == "pctc") return CtcMethod::pctc;
  if (m == "deutsch_nullspace") return CtcMethod::deutsch_nullspace;
  return CtcMethod::deutsch_iterative;
}

inline PureState named_qubit(const std::string& name, Rng& rng) {
  const double h = 1.0 / std::numbers::sqrt2;
  if (name == "zero") return PureState::qubit(1, 0);
  if (name == "one") return PureState::qubit(0, 1);
  if (name == "plus") return PureState::qubit(h, h);
  if (name == "minus") return PureState::qubit(h, -h);
  return random_pure_state(SubsystemShape{2}, rng);
}

inline void put_solution(ScenarioResult& r, const CtcSolution& s) {
  r.put("fixed_point", s.fixed_point);
  r.put("rho_out", s.output);
  r.put("residual", s.residual);
  r.put("iterations", static_cast<double>(s.iterations));
  r.put("fallback", std::string(to_string(s.fallback)));
  if (s.fixed_point_set_dimension) r.put("fixed_point_set_dimension", static_cast<double>(*s.fixed_point_set_dimension));
}

inline CtcSolution solve(CtcMethod m, const DensityOperator& rho_in, const CtcWiring& w, const RunOptions& o) {
  if (m == CtcMethod::deutsch_nullspace) {
    NullspaceOptions n;
    n.tol = o.iteration().tol;
    n.fallback = o.iteration();
    return solve_deutsch_nullspace(rho_in, w, n);
  }
  return solve_deutsch_iterative(rho_in, w, o.iteration());
}

// Prefixes the scenario name so surfaced errors carry context.
template <typename F>
decltype(auto) with_context(const std::string& scenario, F&& f) {
  try {
    return f();
  } catch (const ParadoxError& e) {
    throw ParadoxError(scenario + ": " + e.what(), e.weight());
  } catch (const NonConvergence& e) {
    throw NonConvergence(scenario + ": " + e.what(), e.residual(), e.iterations());
  }
}

// --- CTC scenarios ---------------------------------------------------------

inline void deutsch_cnot(ParamReader& p, ScenarioResult& r, const RunOptions& o, Rng&) {
  const double h = 1.0 / std::numbers::sqrt2;
  const PureState psi = read_qubit(p, h, h);
  const CtcMethod m = parse_method(p.choice("method", "deutsch", {"deutsch", "deutsch_nullspace"}));
  const DensityOperator rho_in = projector(psi);
  const CtcSolution s = solve(m, rho_in, cnot_wiring(), o);
  const double pa = std::norm(psi[0]), pb = std::norm(psi[1]);
  const DensityOperator fp_closed(Matrix::diagonal(std::vector<double>{pa, pb}), SubsystemShape{2});
  const DensityOperator out_closed(Matrix::diagonal(std::vector<double>{pa * pa + pb * pb, 2 * pa * pb}),
                                   SubsystemShape{2});
  r.put("rho_in", rho_in);
  put_solution(r, s);
  r.put("fixed_point_closed_form", fp_closed);
  r.put("rho_out_closed_form", out_closed);
  r.put("fixed_point_error", trace_distance(s.fixed_point, fp_closed));
  r.put("rho_out_error", trace_distance(s.output, out_closed));
  r.notes.push_back("fixed point |alpha|^2|0><0| + |beta|^2|1><1|; output (|alpha|^4+|beta|^4)|0><0| + 2|alpha beta|^2|1><1|");
  r.notes.push_back("a pure input leaves as a mixed state: the map is not unitary");
}

inline void pctc_cnot(ParamReader& p, ScenarioResult& r, const RunOptions&, Rng&) {
  const double h = 1.0 / std::numbers::sqrt2;
  const PureState psi = read_qubit(p, h, h);
  r.put("psi_in", psi);
  const auto res = apply_pctc(psi, cnot_wiring());
  r.put("psi_out", res.state);
  r.put("consistency_weight", res.consistency_weight);
  r.put("ground_state_fidelity", fidelity(res.state, PureState::qubit(1, 0)));
  r.notes.push_back("C is proportional to |0>(<0| + <1|): the output is always the ground state");
  r.notes.push_back("alpha = -beta has zero weight and raises a paradox");
}

inline void swap_identity(ParamReader& p, ScenarioResult& r, const RunOptions& o, Rng& rng) {
  const std::string which = p.choice("state", "random", {"random", "zero", "one", "plus", "minus"});
  const PureState psi = named_qubit(which, rng);
  const DensityOperator rho_in = projector(psi);
  const CtcSolution s = solve_deutsch_iterative(rho_in, swap_wiring(), o.iteration());
  const auto pc = apply_pctc(rho_in, swap_wiring());
  r.put("rho_in", rho_in);
  r.put("rho_out_deutsch", s.output);
  r.put("rho_out_pctc", pc.state);
  r.put("deutsch_error", trace_distance(s.output, rho_in));
  r.put("pctc_error", trace_distance(pc.state, rho_in));
  r.put("consistency_weight", pc.consistency_weight);
  r.notes.push_back("U = SWAP: the system and the CTC never interact and both rules return the input");
}

inline void grandfather_pctc(ParamReader& p, ScenarioResult& r, const RunOptions&, Rng&) {
  const PureState psi = read_qubit(p, 1.0, 0.0);
  const CtcWiring w = grandfather_wiring();
  r.put("psi_in", psi);
  r.put("contraction_norm", frobenius_norm(pctc_operator(w)));
  double weight = 0.0;
  bool paradox = false;
  try {
    weight = apply_pctc(psi, w).consistency_weight;
  } catch (const ParadoxError& e) {
    weight = e.weight();
    paradox = true;
  }
  r.put("consistency_weight", weight);
  r.put("suppressed", paradox);
  r.notes.push_back("C = 0: every history is inconsistent and suppressed");
}

inline void grandfather_deutsch(ParamReader& p, ScenarioResult& r, const RunOptions& o, Rng&) {
  const PureState psi = read_qubit(p, 1.0, 0.0);
  const DensityOperator rho_in = projector(psi);
  const CtcSolution s = solve_deutsch_iterative(rho_in, grandfather_wiring(), o.iteration());
  r.put("rho_in", rho_in);
  put_solution(r, s);
  r.put("rho_out_equals_rho_in", trace_distance(s.output, rho_in) <= 1e-10);
  r.notes.push_back("the CTC qubit is maximally mixed; the bit flip leaves it unchanged, so a fixed point exists");
  r.notes.push_back("the detector receives rho_in: the flipped history is replaced by an even mixture");
}

inline void equivalence_sweep(ParamReader& p, ScenarioResult& r, const RunOptions& o, Rng& rng) {
  const std::size_t n = p.count("count", 500);
  const double agree_tol = 1e-6;
  std::size_t consistent = 0, unique = 0, agree = 0;
  double max_residual = 0.0, max_gap = 0.0;
  Table slow{{"case", "trace_distance", "iterations", "contraction_rate", "iterative_residual"}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    const CtcWiring w(haar_unitary(SubsystemShape{2, 2}, rng));
    const DensityOperator rho_in = projector(random_pure_state(SubsystemShape{2}, rng));
    const CtcSolution it = solve_deutsch_iterative(rho_in, w, o.iteration());
    max_residual = std::max(max_residual, it.residual);
    if (it.residual <= 1e-8) ++consistent;
    const CtcSolution ns = solve(CtcMethod::deutsch_nullspace, rho_in, w, o);
    if (*ns.fixed_point_set_dimension != 0) continue;
    ++unique;
    const double gap = std::max(trace_distance(it.fixed_point, ns.fixed_point), trace_distance(it.output, ns.output));
    max_gap = std::max(max_gap, gap);
    if (gap <= agree_tol) {
      ++agree;
    } else {
      slow.rows.push_back({static_cast<double>(i), gap, static_cast<double>(it.iterations), it.contraction_rate,
                           it.residual});
    }
  }
  r.put("count", static_cast<double>(n));
  r.put("consistent_fraction", static_cast<double>(consistent) / n);
  r.put("max_iterative_residual", max_residual);
  r.put("unique_count", static_cast<double>(unique));
  r.put("agreement_rate", unique ? static_cast<double>(agree) / unique : 1.0);
  r.put("max_disagreement", max_gap);
  r.put("disagreements", slow);
  r.notes.push_back("iteration from I/d versus the nullspace of the linearized consistency map");
  r.notes.push_back("disagreements list the iterative solver's contraction rate; values near 1 mean slow convergence");
}

inline PureState read_resource(ParamReader& p) {
  return bell_state(parse_bell_kind(p.choice("resource", "psi_plus", {"phi_plus", "phi_minus", "psi_plus", "psi_minus"})));
}

inline void entangled_ctc(ParamReader& p, ScenarioResult& r, const RunOptions& o, Rng&) {
  const CtcMethod m = parse_method(p.choice("method", "pctc", {"deutsch", "deutsch_nullspace", "pctc"}));
  const PureState resource = read_resource(p);
  const auto res = extend_to_entangled(projector(resource), 1, cnot_wiring(), m, o.iteration());
  const DensityOperator alice = partial_trace(res.state, 1);
  r.put("rho_out", res.state);
  r.put("alice_marginal", alice);
  r.put("alice_purity", purity(alice));
  r.put("negativity", negativity(res.state));
  if (m == CtcMethod::pctc) {
    r.put("consistency_weight", res.consistency_weight);
    const double h = 1.0 / std::numbers::sqrt2;
    r.put("fidelity_plus_zero", fidelity(res.state, tensor(PureState::qubit(h, h), PureState::qubit(1, 0))));
  } else {
    r.put("fixed_point", *res.fixed_point);
    r.put("distance_to_maximally_mixed",
          trace_distance(res.state, DensityOperator::maximally_mixed(SubsystemShape{2, 2})));
  }
  r.notes.push_back("Bob's half of the pair meets the CNOT CTC; Alice's half is untouched");
  r.notes.push_back("pctc renormalizes to (|0>+|1>)/sqrt2 ⊗ |0>; deutsch leaves both halves completely decohered");
}

inline void retro_signal_witness(ParamReader& p, ScenarioResult& r, const RunOptions& o, Rng&) {
  const PureState resource = read_resource(p);
  const auto pc = extend_to_entangled(projector(resource), 1, cnot_wiring(), CtcMethod::pctc, o.iteration());
  const auto dt = extend_to_entangled(projector(resource), 1, cnot_wiring(), CtcMethod::deutsch_iterative, o.iteration());
  const DensityOperator alice_pc = partial_trace(pc.state, 1), alice_dt = partial_trace(dt.state, 1);
  r.put("alice_marginal_pctc", alice_pc);
  r.put("alice_marginal_deutsch", alice_dt);
  r.put("alice_purity_pctc", purity(alice_pc));
  r.put("alice_purity_deutsch", purity(alice_dt));
  r.put("purity_gap", purity(alice_pc) - purity(alice_dt));
  r.put("alice_can_predict", purity(alice_pc) > 1.0 - 1e-10);
  r.notes.push_back("under pctc Alice's qubit is pure and fixed by Bob's later gate: she can predict his action");
  r.notes.push_back("under deutsch Alice's qubit stays maximally mixed whatever Bob does");
}

// --- teleportation ----------------------------------------------------------

inline void teleport_retrodiction(ParamReader& p, ScenarioResult& r, const RunOptions&, Rng&) {
  const Complex mu = p.complex("mu", 0.6), nu = p.complex("nu", Complex(0, 0.8));
  const double omega = p.real("omega", 1.0);
  const double ts = p.real("t_s", 0.0), tp = p.real("t_p", 1.0), tm = p.real("t_m", 2.0);
  const TeleportTimeline tl(ts, tp, tm);
  const TimedQubit q{PureState::qubit(mu, nu), omega, tp};
  const PureState back = retrodict_source(q, tl);
  const PureState at_m = evolve(back, omega, tm - ts);
  const auto probs = bell_probabilities(q.state, teleport_resource());
  Table bell{{"phi_plus", "phi_minus", "psi_plus", "psi_minus"}, {{probs[0], probs[1], probs[2], probs[3]}}};
  r.put("prepared", q.state);
  r.put("bell_probabilities", bell);
  r.put("bob_at_source", back);
  r.put("round_trip_fidelity", fidelity(evolve(back, omega, tp - ts), q.state));
  r.put("bob_at_measurement", at_m);
  r.put("measurement_fidelity", fidelity(at_m, evolve(q, tm - tp)));
  r.notes.push_back("retrodicted from the outcome matching the source pair, so no correction is needed");
  r.notes.push_back("Bob holds a time-retarded copy of the prepared qubit before it was created");
}

inline void teleport_paradox(ParamReader& p, ScenarioResult& r, const RunOptions&, Rng&) {
  const std::string gate = p.choice("gate", "X", {"I", "X", "Z", "H"});
  const UnitaryGate f = standard_gate(gate);
  const double w = loop_consistency_weight(f);
  const CtcWiring loop(tensor(f, standard_gate(GateName::I)) * standard_gate(GateName::SWAP));
  r.put("loop_weight", w);
  r.put("pctc_contraction_norm", frobenius_norm(pctc_operator(loop)));
  r.put("suppressed", w == 0.0);
  r.notes.push_back("Bob applies the gate to the qubit he received and has it teleported back into the past");
  r.notes.push_back("an orthogonal (bit flipped) history has probability zero: the time machine never works");
}

// --- relativity -------------------------------------------------------------

inline void unruh_curve(ParamReader& p, ScenarioResult& r, const RunOptions&, Rng&) {
  const double lo = p.positive("t_min", 1e-6), hi = p.positive("t_max", 1e6);
  if (!(lo <= hi)) throw InvalidParameter("unruh_curve parameter t_min must not exceed t_max");
  Table t{{"a", "T"}, {}};
  const int k0 = static_cast<int>(std::ceil(std::log10(lo) - 1e-9)), k1 = static_cast<int>(std::floor(std::log10(hi) + 1e-9));
  for (int k = k0; k <= k1; ++k) {
    const double temp = std::pow(10.0, k);
    t.rows.push_back({relativity::unruh_acceleration(temp), temp});
  }
  r.put("curve", t);
  r.notes.push_back("T = a hbar / (2 pi k c); 1 K needs about 2.47e20 m/s^2");
}

inline void vacuum_thermality(ParamReader& p, ScenarioResult& r, const RunOptions&, Rng&) {
  const auto omegas = p.positives("omega_over_a", {0.1, 0.25, 0.5, 1.0});
  const std::size_t n_max = p.count("n_max", relativity::kDefaultTruncation);
  Table t{{"omega_over_a", "q", "mean_occupation", "bose_occupation", "fidelity", "entropy_bits", "thermal_entropy_bits", "tail_mass"}, {}};
  bool warned = false;
  for (double x : omegas) {
    const auto s = relativity::vacuum_mode_state(x, n_max);
    warned = warned || s.truncation_warning;
    const DensityOperator wedge = reduced_state(s.joint_state(), 0);
    std::vector<double> thermal(n_max + 1);
    const double q2 = s.q * s.q;
    for (std::size_t n = 0; n <= n_max; ++n) thermal[n] = (1 - q2) * std::pow(q2, static_cast<double>(n));
    double total = 0.0;
    for (double w : thermal) total += w;
    for (double& w : thermal) w /= total;
    const DensityOperator closed(Matrix::diagonal(thermal), SubsystemShape{n_max + 1});
    const double nbar = relativity::thermal_occupation(x);
    t.rows.push_back({x, s.q, s.mean_occupation(), nbar, fidelity(wedge, closed), von_neumann_entropy(wedge),
                      relativity::thermal_entropy_bits(nbar), s.tail_mass});
  }
  r.put("modes", t);
  r.put("truncation_warning", warned);
  r.notes.push_back("one Rindler mode of the Minkowski vacuum; tracing the left wedge leaves a thermal state");
}

inline void hawking_table(ParamReader& p, ScenarioResult& r, const RunOptions&, Rng&) {
  const auto masses = p.positives("solar_masses", {1e-8, 1e-3, 1.0, 10.0, 4e6});
  Table t{{"solar_masses", "mass_kg", "T_H"}, {}};
  for (double m : masses) {
    const double kg = m * relativity::kSolarMass;
    t.rows.push_back({m, kg, relativity::hawking_temperature(kg)});
  }
  r.put("temperatures", t);
  r.put("solar_mass_temperature", relativity::hawking_temperature(relativity::kSolarMass));
  r.notes.push_back("T_H = hbar c^3 / (8 pi G M k), inversely proportional to mass");
}

inline void schwarzschild_clock(ParamReader& p, ScenarioResult& r, const RunOptions&, Rng&) {
  const double kg = p.positive("mass_kg", relativity::kSolarMass);
  const auto radii = p.positives("r_over_m", {2.000002, 2.002, 2.2, 3.0, 4.0, 10.0, 100.0, 1e6});
  const double m = relativity::geometric_mass(kg);
  Table t{{"r_over_m", "r_m", "dilation"}, {}};
  for (double x : radii) {
    if (!(x > 2.0)) throw InvalidParameter("schwarzschild_clock radii must lie outside r = 2M");
    t.rows.push_back({x, x * m, relativity::schwarzschild_dilation(m, x * m)});
  }
  r.put("geometric_mass_m", m);
  r.put("clock_rates", t);
  r.notes.push_back("stationary clock rate sqrt(1 - 2M/r): clocks appear to stop as r approaches 2M");
}

inline void wormhole_transit(ParamReader& p, ScenarioResult& r, const RunOptions&, Rng&) {
  const double b0 = p.positive("b0", 1e4), a0 = p.positive("a0", 1e4);
  const double v = p.positive("v_over_c", 1e-4) * relativity::kCodata2018.c;
  const relativity::WormholeGeometry g(b0, a0, v);
  const auto t = relativity::wormhole_transit(g);
  r.put("tau", t.tau);
  r.put("lower_bound", t.lower_bound);
  r.put("tidal_ratio", t.tidal_ratio);
  r.put("tidal_ok", t.tidal_ok);
  r.notes.push_back("tau = pi a0 / v, at least sqrt(a0/b0) seconds");
  r.notes.push_back("tidal forces are negligible when (v/c)^2 <= a0 b0 / (1e8 m)^2");
}

using ScenarioFn = void (*)(ParamReader&, ScenarioResult&, const RunOptions&, Rng&);

struct CatalogEntry {
  std::string_view name;
  ScenarioFn run;
  std::vector<std::string_view> keys;
};

inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> c{
      {"deutsch_cnot", deutsch_cnot, {"alpha", "beta", "method"}},
      {"pctc_cnot", pctc_cnot, {"alpha", "beta"}},
      {"swap_identity", swap_identity, {"state"}},
      {"grandfather_pctc", grandfather_pctc, {"alpha", "beta"}},
      {"grandfather_deutsch", grandfather_deutsch, {"alpha", "beta"}},
      {"equivalence_sweep", equivalence_sweep, {"count"}},
      {"entangled_ctc", entangled_ctc, {"method", "resource"}},
      {"retro_signal_witness", retro_signal_witness, {"resource"}},
      {"teleport_retrodiction", teleport_retrodiction, {"mu", "nu", "omega", "t_s", "t_p", "t_m"}},
      {"teleport_paradox", teleport_paradox, {"gate"}},
      {"unruh_curve", unruh_curve, {"t_min", "t_max"}},
      {"vacuum_thermality", vacuum_thermality, {"omega_over_a", "n_max"}},
      {"hawking_table", hawking_table, {"solar_masses"}},
      {"schwarzschild_clock", schwarzschild_clock, {"mass_kg", "r_over_m"}},
      {"wormhole_transit", wormhole_transit, {"b0", "a0", "v_over_c"}},
  };
  return c;
}

}  // namespace detail

inline std::vector<std::string> scenario_names() {
  std::vector<std::string> names;
  for (const auto& e : detail::catalog()) names.emplace_back(e.name);
  return names;
}

inline ScenarioResult run_scenario(const std::string& name, const ParamMap& params = {}, const RunOptions& opts = {}) {
  const auto& c = detail::catalog();
  const auto it = std::find_if(c.begin(), c.end(), [&](const auto& e) { return e.name == name; });
  if (it == c.end()) throw UnknownName("unknown scenario '" + name + "'");
  for (const auto& [k, v] : params)
    if (std::find(it->keys.begin(), it->keys.end(), k) == it->keys.end())
      throw InvalidParameter("scenario " + name + " has no parameter '" + k + "'");
  if (opts.tol && !(*opts.tol > 0.0)) throw InvalidParameter("tol must be positive");
  if (opts.max_iter && *opts.max_iter == 0) throw InvalidParameter("max_iter must be positive");
  ScenarioResult r;
  r.name = name;
  detail::ParamReader reader(name, params);
  Rng rng(opts.seed);
  detail::with_context(name, [&] {
    it->run(reader, r, opts, rng);
    r.params = reader.finish();
  });
  return r;
}

}  // namespace ctcsim
