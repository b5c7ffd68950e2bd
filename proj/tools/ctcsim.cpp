// ctcsim: run catalog scenarios or solve a CTC problem from matrix documents.
//
// Exit codes: 0 success, 1 usage or validation, 2 paradox, 3 non-convergence.

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ctcsim/ctc.hpp"
#include "ctcsim/matrix_document.hpp"
#include "ctcsim/report.hpp"
#include "ctcsim/scenarios.hpp"

namespace {

using namespace ctcsim;

enum Exit { kOk = 0, kUsage = 1, kParadox = 2, kNoConvergence = 3 };

struct Common {
  std::string format = "text";
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::optional<std::size_t> max_iter;

  RunOptions run_options() const { return {seed, tol, max_iter}; }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_option("--seed", c.seed, "Random seed");
  cmd->add_option("--tol", c.tol, "Solver tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--max-iter", c.max_iter, "Solver iteration cap")->check(CLI::PositiveNumber);
}

ParamMap parse_params(const std::vector<std::string>& items) {
  ParamMap out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw InvalidParameter("--param expects k=v, got '" + item + "'");
    if (!out.emplace(item.substr(0, eq), item.substr(eq + 1)).second)
      throw InvalidParameter("parameter '" + item.substr(0, eq) + "' given twice");
  }
  return out;
}

ScenarioResult solve_documents(const std::string& unitary_path, const std::string& input_path,
                               const std::string& method, const Common& c) {
  const CtcWiring w(load_document(unitary_path).unitary());
  const MatrixDocument input = load_document(input_path);
  ScenarioResult r;
  r.name = "solve";
  r.params = {{"unitary", unitary_path}, {"input", input_path}, {"method", method}};
  if (method == "pctc") {
    if (input.kind == DocumentKind::state_vector) {
      const auto res = apply_pctc(input.state(), w);
      r.put("psi_in", input.state());
      r.put("psi_out", res.state);
      r.put("consistency_weight", res.consistency_weight);
    } else {
      const auto res = apply_pctc(input.density(), w);
      r.put("rho_in", input.density());
      r.put("rho_out", res.state);
      r.put("consistency_weight", res.consistency_weight);
    }
    return r;
  }
  const DensityOperator rho_in = input.as_density();
  const IterationOptions it = c.run_options().iteration();
  CtcSolution s = method == "deutsch_nullspace" ? solve_deutsch_nullspace(rho_in, w, NullspaceOptions{it.tol, 1e-7, 5000, it})
                                                : solve_deutsch_iterative(rho_in, w, it);
  r.put("rho_in", rho_in);
  r.put("fixed_point", s.fixed_point);
  r.put("rho_out", s.output);
  r.put("residual", s.residual);
  r.put("iterations", static_cast<double>(s.iterations));
  r.put("fallback", std::string(to_string(s.fallback)));
  if (s.fixed_point_set_dimension) r.put("fixed_point_set_dimension", static_cast<double>(*s.fixed_point_set_dimension));
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum closed-timelike-curve simulator"};
  app.require_subcommand(1);

  Common common;
  std::string scenario;
  std::vector<std::string> params;
  auto* run = app.add_subcommand("run", "Run a catalog scenario");
  run->add_option("scenario", scenario, "Scenario name")->required();
  run->add_option("--param", params, "Parameter override k=v (repeatable)")->take_all();
  add_common(run, common);

  std::string unitary, input, method = "deutsch";
  auto* solve = app.add_subcommand("solve", "Solve a CTC problem from matrix documents");
  solve->add_option("--unitary", unitary, "Two-rail unitary document")->required();
  solve->add_option("--input", input, "Input state or density document")->required();
  solve->add_option("--method", method, "Boundary condition")
      ->check(CLI::IsMember({"deutsch", "deutsch_nullspace", "pctc"}));
  add_common(solve, common);

  app.add_subcommand("list", "List scenario names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (app.got_subcommand("list")) {
      for (const auto& n : scenario_names()) std::cout << n << '\n';
      return kOk;
    }
    const ReportFormat format = parse_report_format(common.format);
    const ScenarioResult r = run->parsed()
                                 ? run_scenario(scenario, parse_params(params), common.run_options())
                                 : solve_documents(unitary, input, method, common);
    std::cout << render(r, format);
    return kOk;
  } catch (const ParadoxError& e) {
    std::cerr << "paradox: " << e.what() << " (consistency weight " << format_double(e.weight()) << ")\n";
    return kParadox;
  } catch (const NonConvergence& e) {
    std::cerr << "no convergence: " << e.what() << '\n';
    return kNoConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
