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

// Scenario files: a JSON description of a memory layout, named constants,
// registers, programs, predicates and checks, with a parser that reports
// errors by JSON pointer and an emitter for the built-in scenarios.

#ifndef REGCALC_SCENARIO_FILE_HPP
#define REGCALC_SCENARIO_FILE_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "regcalc/hoare.hpp"
#include "regcalc/linalg.hpp"
#include "regcalc/scenarios.hpp"

namespace regcalc {

/// A malformed or inconsistent scenario. `pointer()` is a JSON pointer to
/// the offending node and `line()` is set for syntax errors.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string pointer, const std::string& msg, std::optional<std::size_t> line = {});
  const std::string& pointer() const { return pointer_; }
  std::optional<std::size_t> line() const { return line_; }

 private:
  std::string pointer_;
  std::optional<std::size_t> line_;
};

/// "pair[1].chain[0]" becomes "/pair/1/chain/0".
std::string type_path_to_pointer(const std::string& path);

// File syntax -----------------------------------------------------------------

/// A matrix or state written inline or by constant name.
struct MatrixRef {
  std::string name;
  CMatrix literal;
  /// Written as a flat array (a state) rather than a nested one.
  bool is_vector = false;
};

struct Constant {
  std::string name;
  CMatrix value;
  bool is_vector = false;
};

struct RegNode {
  RegisterExpr::Kind kind = RegisterExpr::Kind::id;
  std::string name;
  MatrixRef u;
  std::vector<RegNode> args;
};

struct CommandNode {
  Command::Kind kind = Command::Kind::apply;
  RegNode reg;
  MatrixRef u;
  std::size_t x = 0;
};

struct ProgramDef {
  std::string name;
  std::vector<CommandNode> commands;
};

struct PredNode {
  enum class Kind { qeq, intersect, apply_op, full, zero, ref };
  Kind kind = Kind::full;
  RegNode reg;
  MatrixRef state;  // qeq
  MatrixRef op;     // apply_op
  std::string name; // ref
  std::vector<PredNode> args;
};

/// Either a program name or an inline command list.
struct ProgramRef {
  std::string name;
  std::vector<CommandNode> inline_commands;
};

/// Operators on the memory or on register domains.
struct OpExpr {
  enum class Kind { matrix, program, lift, lift_mixed, product, scale, evolve };
  Kind kind = Kind::matrix;
  MatrixRef matrix;          // matrix
  ProgramRef program;        // program, evolve
  RegNode reg;               // lift
  std::vector<RegNode> regs; // lift_mixed
  Complex factor{1.0, 0.0};  // scale
  std::vector<OpExpr> args;  // lift (1), lift_mixed, product, scale (1), evolve (1)
};

/// States on the memory or on register domains.
struct StateExpr {
  enum class Kind { vector, lift_pure, apply };
  Kind kind = Kind::vector;
  MatrixRef vector;
  std::vector<RegNode> regs;  // lift_pure
  std::vector<StateExpr> args;
  std::optional<OpExpr> op;   // apply
};

struct CheckNode {
  enum class Kind { triple, operator_equal, state_equal, mixed_state };
  Kind kind = Kind::triple;
  std::string name;
  PredNode pre;
  ProgramRef program;
  PredNode post;
  std::optional<OpExpr> lhs_op, rhs_op;        // operator_equal; mixed_state state/expected
  std::optional<StateExpr> lhs_state, rhs_state;
  RegNode reg;                                 // mixed_state
};

struct ScenarioFile {
  std::vector<Memory::Factor> layout;
  std::optional<double> tolerance;
  std::vector<Constant> constants;
  std::vector<std::pair<std::string, RegNode>> registers;
  std::vector<ProgramDef> programs;
  std::vector<std::pair<std::string, PredNode>> predicates;
  std::vector<CheckNode> checks;
};

/// Reads and dimension-checks a scenario. Throws ScenarioError.
ScenarioFile parse_scenario_text(const std::string& text, Tolerance tol = {});
/// Throws ScenarioError, including for unreadable files (pointer "").
ScenarioFile parse_scenario(const std::string& path, Tolerance tol = {});
/// Pretty-printed JSON with a trailing newline.
std::string emit_scenario(const ScenarioFile& file);

// Checking ----------------------------------------------------------------------

struct CheckOutcome {
  CheckResult result;
  /// A failing pre-state, for triples.
  std::optional<CVector> witness;
};

/// Runs every check. Malformed content raises ScenarioError; numerical
/// failures are reported per check.
std::vector<CheckOutcome> run_scenario_file(const ScenarioFile& file, Tolerance tol);

/// Resolution order: explicit value, the file's own tolerance, the
/// REGCALC_TOL environment variable, then 1e-9. Throws InvalidArgument for
/// an unparsable or non-positive REGCALC_TOL.
double effective_tolerance(std::optional<double> flag, const ScenarioFile& file);

// Built-in scenario files -------------------------------------------------------

/// "teleport", "triple_cnot", "mixed_circuit".
std::vector<std::string> builtin_scenario_names();
/// Throws InvalidArgument for unknown names.
ScenarioFile builtin_scenario(const std::string& name);

// Register expressions as text -------------------------------------------------

/// Parses "pair(fst, snd)", "chain(Phi, fst)", "Phi.fst", "mapped(H, X)".
/// The first argument of `mapped` names a gate. Throws InvalidArgument.
RegExprPtr parse_register_expr(const std::string& text);

/// "A=2,Phi=2x2": factor names with dimensions or shapes.
std::vector<Memory::Factor> parse_layout(const std::string& text);

}  // namespace regcalc

#endif  // REGCALC_SCENARIO_FILE_HPP
