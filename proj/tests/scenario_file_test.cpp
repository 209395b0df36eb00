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

#include "regcalc/scenario_file.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "regcalc/errors.hpp"
#include "regcalc/gates.hpp"

namespace regcalc {
namespace {

std::string data(const std::string& name) { return std::string(REGCALC_TEST_DATA) + "/" + name; }

std::string pointer_of(const std::string& text) {
  try {
    parse_scenario_text(text);
  } catch (const ScenarioError& e) {
    return e.pointer();
  }
  return "<accepted>";
}

bool all_pass(const std::vector<CheckOutcome>& outcomes) {
  return std::all_of(outcomes.begin(), outcomes.end(),
                     [](const CheckOutcome& o) { return o.result.passed; });
}

TEST(TypePath, ConvertsToJsonPointer) {
  EXPECT_EQ(type_path_to_pointer(""), "");
  EXPECT_EQ(type_path_to_pointer("pair[1]"), "/pair/1");
  EXPECT_EQ(type_path_to_pointer("pair[1].chain[0]"), "/pair/1/chain/0");
  EXPECT_EQ(type_path_to_pointer("mapped.u"), "/mapped/u");
  EXPECT_EQ(type_path_to_pointer("complement.mapped.of"), "/complement/mapped/of");
}

TEST(Builtins, RoundTripIsIdentity) {
  for (const auto& name : builtin_scenario_names()) {
    const std::string once = emit_scenario(builtin_scenario(name));
    const std::string twice = emit_scenario(parse_scenario_text(once));
    EXPECT_EQ(once, twice) << name;
  }
  EXPECT_THROW(builtin_scenario("nothing"), InvalidArgument);
}

TEST(Builtins, AllChecksPass) {
  for (const auto& name : builtin_scenario_names()) {
    const ScenarioFile f = parse_scenario_text(emit_scenario(builtin_scenario(name)));
    const auto outcomes = run_scenario_file(f, Tolerance(1e-9));
    EXPECT_FALSE(outcomes.empty()) << name;
    for (const auto& o : outcomes) EXPECT_TRUE(o.result.passed) << name << ": " << o.result.name;
  }
}

TEST(Builtins, TeleportFileShape) {
  const ScenarioFile f = builtin_scenario("teleport");
  ASSERT_EQ(f.layout.size(), 5u);
  std::size_t dim = 1;
  for (const auto& fac : f.layout) dim *= fac.dim;
  EXPECT_EQ(dim, 32u);
  EXPECT_EQ(f.programs.size(), 4u);
  for (const auto& p : f.programs) EXPECT_EQ(p.commands.size(), 6u);
  std::size_t triples = 0;
  for (const auto& c : f.checks) triples += c.kind == CheckNode::Kind::triple;
  EXPECT_EQ(triples, 4u * 12u);
}

TEST(Builtins, TeleportSurvivesLayoutPermutation) {
  ScenarioFile f = builtin_scenario("teleport");
  std::reverse(f.layout.begin(), f.layout.end());
  std::rotate(f.layout.begin(), f.layout.begin() + 2, f.layout.end());
  EXPECT_TRUE(all_pass(run_scenario_file(f, Tolerance(1e-9))));
}

TEST(Builtins, BrokenProgramsAreCaught) {
  ScenarioFile f = builtin_scenario("triple_cnot");
  f.programs[0].commands.pop_back();
  const auto outcomes = run_scenario_file(f, Tolerance(1e-9));
  EXPECT_FALSE(all_pass(outcomes));
  EXPECT_FALSE(outcomes.back().result.passed);
  EXPECT_GT(outcomes.back().result.residual, 0.5);

  ScenarioFile t = builtin_scenario("teleport");
  std::swap(t.programs[1].commands[4], t.programs[1].commands[5]);
  std::swap(t.programs[1].commands[4].u, t.programs[1].commands[5].u);
  t.programs[1].commands[5].u.name = "X";
  EXPECT_FALSE(all_pass(run_scenario_file(t, Tolerance(1e-9))));
}

TEST(Files, MinimalPasses) {
  const ScenarioFile f = parse_scenario(data("minimal.json"));
  const auto outcomes = run_scenario_file(f, Tolerance(1e-9));
  ASSERT_EQ(outcomes.size(), 1u);
  EXPECT_TRUE(outcomes[0].result.passed);
  EXPECT_EQ(outcomes[0].result.name, "full skip full");
}

TEST(Files, XFlipFailsWithWitness) {
  const auto outcomes = run_scenario_file(parse_scenario(data("x_flip.json")), Tolerance(1e-9));
  ASSERT_EQ(outcomes.size(), 1u);
  EXPECT_FALSE(outcomes[0].result.passed);
  ASSERT_TRUE(outcomes[0].witness.has_value());
  const CVector& w = *outcomes[0].witness;
  EXPECT_NEAR(std::abs(w(0)), w.norm(), 1e-12);
  EXPECT_NEAR(outcomes[0].result.residual, w.norm(), 1e-12);
}

TEST(Files, RoundTripOfHandWrittenFile) {
  std::ifstream in(data("x_flip.json"));
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string once = emit_scenario(parse_scenario_text(ss.str()));
  EXPECT_EQ(once, emit_scenario(parse_scenario_text(once)));
}

TEST(Files, Errors) {
  try {
    parse_scenario(data("bad_unitary.json"));
    FAIL() << "accepted a 3x2 unitary";
  } catch (const ScenarioError& e) {
    EXPECT_EQ(e.pointer(), "/registers/R/mapped/u");
    EXPECT_NE(std::string(e.what()).find("2x2"), std::string::npos) << e.what();
  }
  try {
    parse_scenario(data("syntax_error.json"));
    FAIL() << "accepted invalid JSON";
  } catch (const ScenarioError& e) {
    ASSERT_TRUE(e.line().has_value());
    EXPECT_EQ(*e.line(), 4u);
  }
  EXPECT_THROW(parse_scenario(data("missing.json")), ScenarioError);
}

TEST(Files, ErrorPointers) {
  const std::string head = R"({"layout": [{"name": "A", "dim": 2}, {"name": "B", "dim": 2}], )";
  EXPECT_EQ(pointer_of(R"({"layout": [], "extra": 1})"), "/extra");
  EXPECT_EQ(pointer_of(R"({"layout": [{"name": "A", "dim": 0}]})"), "/layout");
  EXPECT_EQ(pointer_of(R"({"layout": [{"name": "A", "dim": -1}]})"), "/layout/0/dim");
  EXPECT_EQ(pointer_of(R"({"layout": [{"name": "A", "dim": 4, "shape": [2, 3]}]})"), "/layout");
  EXPECT_EQ(pointer_of(head + R"("constants": {"c": [[1, 2, 3]]}})"), "/constants/c/0/0");
  EXPECT_EQ(pointer_of(head + R"("registers": {"R": {"pair": ["A", {"chain": ["B", "A"]}]}}})"),
            "/registers/R/pair/1/chain/1");
  EXPECT_EQ(pointer_of(head + R"("registers": {"R": {"pair": ["A", "A"]}}})"), "/registers/R");
  EXPECT_EQ(pointer_of(head + R"("registers": {"R": {"frob": null}}})"), "/registers/R/frob");
  EXPECT_EQ(pointer_of(head + R"("registers": {"R": {"mapped": {"u": "nope", "of": "A"}}}})"),
            "/registers/R/mapped/u");
  EXPECT_EQ(pointer_of(head + R"("registers": {"R": {"mapped": {"u": [[[1,0],[0,0]],[[1,0],[0,0]]], "of": "A"}}}})"),
            "/registers/R/mapped/u");
  EXPECT_EQ(pointer_of(head + R"("programs": {"P": [{"guard": {"reg": "A", "x": 2}}]}})"),
            "/programs/P/0/guard/x");
  EXPECT_EQ(pointer_of(head + R"("programs": {"P": [{"apply": {"reg": {"chain": ["A", {"fst": null}]}, "u": [[[1,0]]]}}]}})"),
            "/programs/P/0/apply/reg/chain/1");
  EXPECT_EQ(pointer_of(head + R"("checks": [{"triple": {"pre": {"pred": "later"}, "program": [], "post": {"full": null}}}]})"),
            "/checks/0/triple/pre/pred");
  EXPECT_EQ(pointer_of(head + R"("checks": [{"triple": {"pre": {"qeq": {"reg": "A", "state": [[1,0],[0,0],[0,0]]}}, "program": [], "post": {"full": null}}}]})"),
            "/checks/0/triple/pre/qeq/state");
  EXPECT_EQ(pointer_of(head + R"("checks": [{"operator_equal": {"lhs": {"program": []}, "rhs": [[[1,0]]]}}]})"),
            "/checks/0/operator_equal/rhs");
  EXPECT_EQ(pointer_of(head + R"("checks": [{"name": "x"}]})"), "/checks/0");
  EXPECT_EQ(pointer_of(head + R"("tolerance": -1})"), "/tolerance");
  EXPECT_EQ(pointer_of(head + R"("checks": [{"mixed_state": {"state": {"lift_mixed": {"regs": ["A"], "ops": [[[[1,0],[0,0]],[[0,0],[0,0]]]]}}, "reg": "A", "expected": [[[1,0],[0,0]],[[0,0],[0,0]]]}}]})"),
            "/checks/0/mixed_state/state/lift_mixed/regs");
}

TEST(Files, ShapedFactorsResolveProjections) {
  const std::string text = R"({
    "layout": [{"name": "Phi", "dim": 4, "shape": [2, 2]}, {"name": "C", "dim": 3}],
    "constants": {"ket1": [[0, 0], [1, 0]], "X": [[[0,0],[1,0]],[[1,0],[0,0]]]},
    "registers": {"PhiSnd": {"chain": ["Phi", {"snd": null}]}},
    "checks": [{"triple": {
      "pre": {"full": null},
      "program": [{"apply": {"reg": "PhiSnd", "u": "X"}}],
      "post": {"full": null}}}]
  })";
  const ScenarioFile f = parse_scenario_text(text);
  ASSERT_EQ(f.layout[0].shape, (std::vector<std::size_t>{2, 2}));
  EXPECT_TRUE(all_pass(run_scenario_file(f, Tolerance(1e-9))));
  EXPECT_EQ(emit_scenario(f), emit_scenario(parse_scenario_text(emit_scenario(f))));
}

TEST(Files, StateAndMixedChecks) {
  const std::string text = R"({
    "layout": [{"name": "A", "dim": 2}, {"name": "B", "dim": 2}],
    "constants": {
      "ket0": [[1, 0], [0, 0]], "ket1": [[0, 0], [1, 0]],
      "X": [[[0,0],[1,0]],[[1,0],[0,0]]],
      "P0": [[[1,0],[0,0]],[[0,0],[0,0]]], "P1": [[[0,0],[0,0]],[[0,0],[1,0]]]
    },
    "programs": {"flipA": [{"apply": {"reg": "A", "u": "X"}}]},
    "checks": [
      {"name": "flip", "state_equal": {
        "lhs": {"apply": {"op": {"program": "flipA"}, "of": {"lift_pure": {"regs": ["A", "B"], "states": ["ket0", "ket0"]}}}},
        "rhs": {"lift_pure": {"regs": ["A", "B"], "states": ["ket1", "ket0"]}}}},
      {"name": "reduced", "mixed_state": {
        "state": {"evolve": {"program": "flipA", "of": {"lift_mixed": {"regs": ["A", "B"], "ops": ["P0", "P1"]}}}},
        "reg": "A", "expected": "P1"}},
      {"name": "wrong", "mixed_state": {
        "state": {"lift_mixed": {"regs": ["A", "B"], "ops": ["P0", "P1"]}},
        "reg": "B", "expected": {"scale": {"by": [2, 0], "of": "P1"}}}}
    ]
  })";
  const auto outcomes = run_scenario_file(parse_scenario_text(text), Tolerance(1e-9));
  ASSERT_EQ(outcomes.size(), 3u);
  EXPECT_TRUE(outcomes[0].result.passed);
  EXPECT_TRUE(outcomes[1].result.passed);
  EXPECT_FALSE(outcomes[2].result.passed);
  EXPECT_NEAR(outcomes[2].result.residual, 1.0, 1e-12);
}

TEST(Tolerance, Precedence) {
  ScenarioFile f;
  unsetenv("REGCALC_TOL");
  EXPECT_EQ(effective_tolerance(std::nullopt, f), 1e-9);
  setenv("REGCALC_TOL", "1e-6", 1);
  EXPECT_EQ(effective_tolerance(std::nullopt, f), 1e-6);
  f.tolerance = 1e-7;
  EXPECT_EQ(effective_tolerance(std::nullopt, f), 1e-7);
  EXPECT_EQ(effective_tolerance(1e-3, f), 1e-3);
  f.tolerance.reset();
  setenv("REGCALC_TOL", "abc", 1);
  EXPECT_THROW(effective_tolerance(std::nullopt, f), InvalidArgument);
  setenv("REGCALC_TOL", "-1", 1);
  EXPECT_THROW(effective_tolerance(std::nullopt, f), InvalidArgument);
  unsetenv("REGCALC_TOL");
}

TEST(ExprText, Parses) {
  const Memory mem({{"Phi", 4, {2, 2}}, {"C", 3}});
  auto same = [&](const std::string& a, const RegExprPtr& b) {
    return same_action(resolve(parse_register_expr(a), mem).reg, resolve(b, mem).reg);
  };
  EXPECT_TRUE(same("Phi.fst", reg::chain(reg::named("Phi"), reg::fst())));
  EXPECT_TRUE(same("chain(Phi, snd)", reg::chain(reg::named("Phi"), reg::snd())));
  EXPECT_TRUE(same(" pair( Phi.snd , Phi.fst ) ",
                   reg::pair(reg::chain(reg::named("Phi"), reg::snd()),
                             reg::chain(reg::named("Phi"), reg::fst()))));
  EXPECT_TRUE(same("mapped(H, Phi.fst)",
                   reg::mapped(gates::hadamard(), reg::chain(reg::named("Phi"), reg::fst()))));
  EXPECT_TRUE(same("complement(C)", reg::complement(reg::named("C"))));
  EXPECT_TRUE(same("(Phi).swap.fst", reg::chain(reg::chain(reg::named("Phi"), reg::swap()), reg::fst())));
  for (const char* bad : {"", "pair(fst", "pair(fst,)", "mapped(Q, C)", "fst snd", "chain(a)"}) {
    EXPECT_THROW(parse_register_expr(bad), InvalidArgument) << bad;
  }
}

TEST(ExprText, Layouts) {
  const auto l = parse_layout("A=2, Phi=2x2,C = 3");
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[0].name, "A");
  EXPECT_EQ(l[1].dim, 4u);
  EXPECT_EQ(l[1].shape, (std::vector<std::size_t>{2, 2}));
  EXPECT_TRUE(l[2].shape.empty());
  EXPECT_EQ(l[2].dim, 3u);
  for (const char* bad : {"", "A", "A=0", "A=2x", "A=two"}) {
    EXPECT_THROW(parse_layout(bad), InvalidArgument) << bad;
  }
}

TEST(ExprText, InspectExamples) {
  const Memory two_by_two(parse_layout("A=2,B=2"));
  const QRegister p = resolve(parse_register_expr("pair(fst, snd)"), two_by_two).reg;
  EXPECT_TRUE(as_iso(p).has_value());
  EXPECT_EQ(p.env_dim(), 1u);

  for (std::size_t c : {1u, 2u, 5u}) {
    const Memory mem({{"Phi", 4, {2, 2}}, {"C", c}});
    const QRegister f = resolve(parse_register_expr("chain(Phi, fst)"), mem).reg;
    EXPECT_EQ(f.domain_dim(), 2u);
    EXPECT_EQ(complement(f).domain_dim(), 2 * (f.codomain_dim() / 4));
  }
}

}  // namespace
}  // namespace regcalc
