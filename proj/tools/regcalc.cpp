// Copyright 2026 The regcalc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// regcalc: verify scenario files, run the law suites, inspect registers.
//
// Exit codes: 0 success, 1 a check or law failed, 2 usage, parse or type
// error.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "regcalc/errors.hpp"
#include "regcalc/hoare.hpp"
#include "regcalc/laws.hpp"
#include "regcalc/lifting.hpp"
#include "regcalc/qregister.hpp"
#include "regcalc/scenario_file.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

int cmd_verify(const std::string& path, std::optional<double> tol_flag) {
  using namespace regcalc;
  ScenarioFile file;
  double tol = 0.0;
  try {
    file = parse_scenario(path);
    tol = effective_tolerance(tol_flag, file);
  } catch (const ScenarioError& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  }
  std::vector<CheckOutcome> outcomes;
  try {
    outcomes = run_scenario_file(file, Tolerance(tol));
  } catch (const ScenarioError& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return kUsage;
  }
  std::size_t failed = 0;
  std::cout << std::scientific << std::setprecision(3);
  for (const auto& o : outcomes) {
    std::cout << (o.result.passed ? "PASS " : "FAIL ") << o.result.name << "  (residual "
              << o.result.residual << ")\n";
    if (!o.result.passed) {
      ++failed;
      if (!o.result.detail.empty()) std::cout << "  " << o.result.detail << "\n";
    }
  }
  std::cout << outcomes.size() << " checks, " << failed << " failed (tolerance " << tol << ")\n";
  return failed == 0 ? kOk : kFailed;
}

int cmd_laws(const std::string& suite, std::uint64_t seed, std::size_t cases, std::size_t max_dim,
             const std::string& mutant) {
  using namespace regcalc;
  LawOptions opts;
  opts.seed = seed;
  opts.cases = cases;
  opts.max_dim = max_dim;
  if (mutant == "unchecked-pair") opts.pair = unchecked_pair();
  const std::vector<std::string> suites =
      suite == "all" ? suite_names() : std::vector<std::string>{suite};
  bool ok = true;
  for (const auto& name : suites) {
    const SuiteReport r = run_suite(name, opts);
    std::cout << format_report(r);
    ok = ok && r.passed();
  }
  std::cout << (ok ? "all laws hold" : "some laws failed") << " (seed " << seed << ", " << cases
            << " cases, codomain dim <= " << max_dim << ")\n";
  return ok ? kOk : kFailed;
}

int cmd_emit(const std::string& name, const std::string& out) {
  using namespace regcalc;
  const std::string text = emit_scenario(builtin_scenario(name));
  if (out.empty() || out == "-") {
    std::cout << text;
    return kOk;
  }
  std::ofstream f(out);
  if (!f) {
    std::cerr << "cannot write '" << out << "'\n";
    return kUsage;
  }
  f << text;
  return f ? kOk : kUsage;
}

int cmd_inspect(const std::string& expr, const std::string& layout) {
  using namespace regcalc;
  try {
    const Memory mem(parse_layout(layout));
    const RegExprPtr e = parse_register_expr(expr);
    const Resolved r = resolve(e, mem);
    const QRegister& f = r.reg;
    std::cout << "expression:        " << to_string(*e) << "\n"
              << "layout:            " << to_string(*mem.type()) << "\n"
              << "domain type:       " << to_string(*r.domain) << "\n"
              << "canonical form:    m = " << f.domain_dim() << ", k = " << f.env_dim()
              << ", n = " << f.codomain_dim() << "\n"
              << "iso-register:      " << (as_iso(f) ? "yes" : "no") << "\n"
              << "complement domain: " << complement(f).domain_dim() << "\n"
              << "eta-regular:       " << (is_eta_regular(f, mem.tolerance()) ? "yes" : "no")
              << "\n";
    return kOk;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Register calculus: scenario verification, law suites and register inspection"};
  app.require_subcommand(1);

  std::string verify_path;
  std::optional<double> verify_tol;
  auto* verify = app.add_subcommand("verify", "Check every assertion in a scenario file");
  verify->add_option("file", verify_path, "Scenario JSON file")->required();
  verify->add_option("--tol", verify_tol,
                     "Tolerance (default: the file's, then REGCALC_TOL, then 1e-9)")
      ->check(CLI::PositiveNumber);

  std::string suite = "all";
  std::uint64_t seed = 1;
  std::size_t cases = 100;
  std::size_t max_dim = 16;
  std::string mutant = "none";
  auto* laws = app.add_subcommand("laws", "Run the seeded randomized law suites");
  laws->add_option("--suite", suite, "fig2, fig4, lifting, classical or all")
      ->check(CLI::IsMember({"fig2", "fig4", "lifting", "classical", "all"}));
  laws->add_option("--seed", seed, "Random seed");
  laws->add_option("--cases", cases, "Non-vacuous cases per law")->check(CLI::PositiveNumber);
  laws->add_option("--max-dim", max_dim, "Largest codomain dimension")->check(CLI::PositiveNumber);
  laws->add_option("--mutant", mutant, "Replace pair by a faulty variant (unchecked-pair)")
      ->check(CLI::IsMember({"none", "unchecked-pair"}));

  std::string expr;
  std::string layout = "A=2,B=2";
  std::string emit;
  std::string out;
  auto* inspect = app.add_subcommand("inspect", "Describe a register expression or emit a scenario");
  inspect->add_option("expr", expr, "Register expression, e.g. \"pair(fst, snd)\"");
  inspect->add_option("--layout", layout, "Memory layout, e.g. \"A=2,Phi=2x2\"");
  auto* emit_opt = inspect->add_option("--emit", emit, "Built-in scenario to write")
                       ->check(CLI::IsMember({"teleport", "triple_cnot", "mixed_circuit"}));
  inspect->add_option("--out", out, "Output path for --emit (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (verify->parsed()) return cmd_verify(verify_path, verify_tol);
  if (laws->parsed()) return cmd_laws(suite, seed, cases, max_dim, mutant);
  if (emit_opt->count() > 0) {
    if (!expr.empty()) {
      std::cerr << "inspect takes an expression or --emit, not both\n";
      return kUsage;
    }
    return cmd_emit(emit, out);
  }
  if (expr.empty()) {
    std::cerr << "inspect needs an expression or --emit\n";
    return kUsage;
  }
  return cmd_inspect(expr, layout);
}
