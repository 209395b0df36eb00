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

#include "regcalc/hoare.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <vector>

#include "regcalc/errors.hpp"
#include "regcalc/gates.hpp"
#include "regcalc/random.hpp"

namespace regcalc {
namespace {

const Tolerance kTol(1e-8);

Memory three_qubits() { return Memory({{"A", 2}, {"X", 2}, {"B", 2}}, kTol); }

TEST(Types, ProductStructure) {
  const Memory mem({{"A", 2}, {"B", 3}, {"C", 5}});
  EXPECT_EQ(mem.dim(), 30u);
  EXPECT_EQ(to_string(*mem.type()), "(2 x (3 x 5))");
  EXPECT_THROW(Memory({}), InvalidArgument);
  EXPECT_THROW(Memory({{"A", 2}, {"A", 2}}), InvalidArgument);
  EXPECT_THROW(Memory({{"A", 0}}), InvalidArgument);
}

TEST(Resolve, NamedIsTheDeclaredFactor) {
  const Memory mem = three_qubits();
  const std::array<std::size_t, 3> dims{2, 2, 2};
  const Resolved r = resolve(reg::named("X"), mem);
  EXPECT_TRUE(same_action(r.reg, factor_register(dims, 1), kTol));
  EXPECT_EQ(r.domain->dim, 2u);
}

TEST(Resolve, ChainThroughFst) {
  Memory mem({{"P1", 2}, {"P2", 2}, {"R", 3}}, kTol);
  mem.define("Phi", reg::pair(reg::named("P1"), reg::named("P2")));
  const Resolved phi = resolve(reg::named("Phi"), mem);
  EXPECT_EQ(phi.reg.domain_dim(), 4u);
  ASSERT_TRUE(phi.domain->is_product());

  const Resolved r = resolve(reg::chain(reg::named("Phi"), reg::fst()), mem);
  EXPECT_EQ(r.reg.domain_dim(), 2u);
  const std::array<std::size_t, 3> dims{2, 2, 3};
  EXPECT_TRUE(same_action(r.reg, factor_register(dims, 0), kTol));
  const Resolved s = resolve(reg::chain(reg::named("Phi"), reg::snd()), mem);
  EXPECT_TRUE(same_action(s.reg, factor_register(dims, 1), kTol));
}

TEST(Resolve, PairWithChainedComponent) {
  Memory mem({{"X", 2}, {"P1", 2}, {"P2", 2}}, kTol);
  mem.define("Phi", reg::pair(reg::named("P1"), reg::named("P2")));
  const Resolved r =
      resolve(reg::pair(reg::named("X"), reg::chain(reg::named("Phi"), reg::fst())), mem);
  EXPECT_EQ(r.reg.domain_dim(), 4u);
  // ⟨X, Φ.Fst⟩(CNOT) is CNOT on the first two qubits.
  EXPECT_TRUE(approx_eq(r.reg.apply(gates::cnot()), kron(gates::cnot(), identity(2)), kTol));
}

TEST(Resolve, StructuralNodes) {
  const Memory mem = three_qubits();
  const Resolved sw = resolve(reg::chain(reg::id(), reg::tensor(reg::id(), reg::swap())), mem);
  EXPECT_EQ(to_string(*sw.domain), "(2 x (2 x 2))");
  EXPECT_TRUE(approx_eq(sw.reg.apply(kron_all(std::vector<CMatrix>{
                            identity(2), gates::pauli_x(), gates::pauli_z()})),
                        kron_all(std::vector<CMatrix>{identity(2), gates::pauli_z(),
                                                      gates::pauli_x()}),
                        kTol));
  const Resolved a = resolve(reg::assoc(), mem);
  EXPECT_EQ(to_string(*a.domain), "((2 x 2) x 2)");
  const Resolved ai = resolve(reg::chain(reg::assoc(), reg::assoc_inv()), mem);
  EXPECT_EQ(to_string(*ai.domain), "(2 x (2 x 2))");
  EXPECT_TRUE(same_action(ai.reg, id_register(8), kTol));

  const Resolved c = resolve(reg::complement(reg::named("X")), mem);
  EXPECT_EQ(c.reg.domain_dim(), 4u);
  EXPECT_TRUE(is_complements(resolve(reg::named("X"), mem).reg, c.reg, kTol));

  const Resolved hx = resolve(reg::mapped(gates::hadamard(), reg::named("X")), mem);
  const Resolved x = resolve(reg::named("X"), mem);
  EXPECT_TRUE(approx_eq(hx.reg.apply(gates::pauli_z()), x.reg.apply(gates::pauli_x()), kTol));
}

TEST(Resolve, TypeErrorsCarryPaths) {
  const Memory mem = three_qubits();
  try {
    resolve(reg::pair(reg::named("A"), reg::chain(reg::named("X"), reg::fst())), mem);
    FAIL() << "expected TypeError";
  } catch (const TypeError& e) {
    EXPECT_EQ(e.path(), "pair[1].chain[1]");
  }
  try {
    resolve(reg::chain(reg::named("X"), reg::named("A")), mem);
    FAIL() << "expected TypeError";
  } catch (const TypeError& e) {
    EXPECT_EQ(e.path(), "chain[1]");
  }
  EXPECT_THROW(resolve(reg::named("nope"), mem), TypeError);
  EXPECT_THROW(resolve(reg::pair(reg::named("A"), reg::named("A")), mem), TypeError);
  EXPECT_THROW(resolve(reg::mapped(gates::cnot(), reg::named("A")), mem), TypeError);
  CMatrix not_unitary = identity(2);
  not_unitary(0, 0) = 2.0;
  EXPECT_THROW(resolve(reg::mapped(not_unitary, reg::named("A")), mem), TypeError);
}

TEST(Denote, Examples) {
  const Memory mem = three_qubits();
  EXPECT_TRUE(approx_eq(denote({}, mem), identity(8), kTol));
  const Program hh{Command::apply(reg::named("X"), gates::hadamard()),
                   Command::apply(reg::named("X"), gates::hadamard())};
  EXPECT_TRUE(approx_eq(denote(hh, mem), identity(8), kTol));
  // Order: the later command acts last.
  const Program xz{Command::apply(reg::named("A"), gates::pauli_x()),
                   Command::apply(reg::named("A"), gates::pauli_z())};
  const CMatrix expected =
      kron(gates::pauli_z() * gates::pauli_x(), identity(4));
  EXPECT_TRUE(approx_eq(denote(xz, mem), expected, kTol));
  const Program g{Command::guard(reg::named("B"), 1)};
  EXPECT_TRUE(approx_eq(denote(g, mem), kron(identity(4), gates::projector(2, 1)), kTol));
  EXPECT_THROW(denote({Command::guard(reg::named("B"), 2)}, mem), InvalidArgument);
  EXPECT_THROW(denote({Command::apply(reg::named("B"), gates::cnot())}, mem), InvalidArgument);
}

TEST(PredEval, Examples) {
  Rng rng(3);
  const Memory small({{"Q", 3}}, kTol);
  const CVector psi = random_unit_vector(rng, 3);
  EXPECT_TRUE(same_subspace(pred_eval(pred::qeq(reg::id(), psi), small), Subspace::span(psi), kTol));

  const Memory mem = three_qubits();
  const PredPtr p = pred::qeq(reg::named("X"), random_unit_vector(rng, 2));
  EXPECT_TRUE(same_subspace(pred_eval(pred::intersect(p, pred::full()), mem), pred_eval(p, mem), kTol));
  EXPECT_EQ(pred_eval(pred::intersect(p, pred::zero()), mem).rank(), 0u);
  EXPECT_EQ(pred_eval(p, mem).rank(), 4u);
  EXPECT_THROW(pred_eval(pred::qeq(reg::named("X"), random_unit_vector(rng, 3)), mem),
               InvalidArgument);
}

TEST(CheckTriple, SkipHolds) {
  Rng rng(4);
  const Memory mem = three_qubits();
  const PredPtr a = pred::qeq(reg::pair(reg::named("A"), reg::named("B")), random_unit_vector(rng, 4));
  const TripleReport r = check_triple(a, {}, a, mem);
  EXPECT_TRUE(r.holds);
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_EQ(r.memory_dim, 8u);
  EXPECT_EQ(r.pre_rank, 2u);
}

TEST(CheckTriple, HadamardTakesZeroToPlusInEveryPosition) {
  for (std::size_t pos = 0; pos < 3; ++pos) {
    std::vector<Memory::Factor> layout{{"P", 3}, {"Q", 2}};
    layout.insert(layout.begin() + static_cast<std::ptrdiff_t>(pos), Memory::Factor{"X", 2});
    const Memory mem(layout, kTol);
    const TripleReport r =
        check_triple(pred::qeq(reg::named("X"), gates::ket(2, 0)),
                     {Command::apply(reg::named("X"), gates::hadamard())},
                     pred::qeq(reg::named("X"), gates::plus()), mem);
    EXPECT_TRUE(r.holds) << "position " << pos;
    EXPECT_LT(r.residual, 1e-12);
  }
}

TEST(CheckTriple, GuardAnnihilates) {
  const Memory mem = three_qubits();
  EXPECT_TRUE(check_triple(pred::qeq(reg::named("X"), gates::ket(2, 0)),
                           {Command::guard(reg::named("X"), 1)}, pred::zero(), mem)
                  .holds);
}

TEST(CheckTriple, FailureHasWitness) {
  const Memory mem = three_qubits();
  const TripleReport r = check_triple(pred::qeq(reg::named("X"), gates::ket(2, 0)),
                                      {Command::apply(reg::named("X"), gates::pauli_x())},
                                      pred::qeq(reg::named("X"), gates::ket(2, 0)), mem);
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_NEAR(r.residual, 1.0, 1e-12);
  // The witness has X in state |0⟩ and is sent to X in state |1⟩.
  const QRegister x = resolve(reg::named("X"), mem).reg;
  const CMatrix p0 = x.apply(gates::projector(2, 0));
  const CMatrix p1 = x.apply(gates::projector(2, 1));
  EXPECT_TRUE(approx_eq(p0 * *r.witness, *r.witness, kTol));
  ASSERT_TRUE(r.witness_image.has_value());
  EXPECT_TRUE(approx_eq(p1 * *r.witness_image, *r.witness_image, kTol));
  EXPECT_TRUE(approx_eq(denote({Command::apply(reg::named("X"), gates::pauli_x())}, mem) * *r.witness,
                        *r.witness_image, kTol));
}

TEST(Rules, SkipAndApply) {
  const Memory mem = three_qubits();
  const Subspace zero_x = pred_eval(pred::qeq(reg::named("X"), gates::ket(2, 0)), mem);
  const Subspace plus_x = pred_eval(pred::qeq(reg::named("X"), gates::plus()), mem);
  const Judgment s = rule_skip(zero_x, zero_x, kTol);
  EXPECT_TRUE(s.program.empty());
  const Judgment j =
      rule_apply(zero_x, Command::apply(reg::named("X"), gates::hadamard()), plus_x, mem);
  EXPECT_EQ(j.program.size(), 1u);
  try {
    rule_skip(zero_x, plus_x, kTol);
    FAIL() << "expected RuleRejected";
  } catch (const RuleRejected& e) {
    EXPECT_NEAR(e.residual(), std::sqrt(0.5), 1e-9);
  }
  EXPECT_THROW(rule_apply(zero_x, Command::apply(reg::named("X"), gates::pauli_x()), zero_x, mem),
               RuleRejected);
  EXPECT_THROW(rule_apply(zero_x, Command::guard(reg::named("X"), 0), zero_x, mem),
               InvalidArgument);
  EXPECT_NO_THROW(rule_if(plus_x, Command::guard(reg::named("X"), 0), zero_x, mem));
  EXPECT_THROW(rule_if(plus_x, Command::guard(reg::named("X"), 0), plus_x, mem), RuleRejected);
}

TEST(Rules, SeqAgreesWithDirectCheck) {
  const Memory mem = three_qubits();
  const PredPtr a = pred::qeq(reg::named("A"), gates::ket(2, 0));
  const PredPtr b = pred::qeq(reg::named("A"), gates::plus());
  const PredPtr c = pred::qeq(reg::named("A"), gates::minus());
  const Command h = Command::apply(reg::named("A"), gates::hadamard());
  const Command z = Command::apply(reg::named("A"), gates::pauli_z());
  const Judgment j1 = rule_apply(pred_eval(a, mem), h, pred_eval(b, mem), mem);
  const Judgment j2 = rule_apply(pred_eval(b, mem), z, pred_eval(c, mem), mem);
  const Judgment j = rule_seq(j1, j2, kTol);
  ASSERT_EQ(j.program.size(), 2u);
  EXPECT_TRUE(check_triple(a, j.program, c, mem).holds);
  EXPECT_TRUE(same_subspace(j.pre, pred_eval(a, mem), kTol));
  EXPECT_THROW(rule_seq(j2, j1, kTol), RuleRejected);
}

TEST(Rules, Weaken) {
  const Memory mem = three_qubits();
  const Subspace zero_x = pred_eval(pred::qeq(reg::named("X"), gates::ket(2, 0)), mem);
  const Subspace both = pred_eval(pred::intersect(pred::qeq(reg::named("X"), gates::ket(2, 0)),
                                                  pred::qeq(reg::named("A"), gates::ket(2, 1))),
                                  mem);
  const Judgment s = rule_skip(zero_x, zero_x, kTol);
  const Judgment w = rule_weaken(both, Subspace::full(8), s, kTol);
  EXPECT_EQ(w.pre.rank(), 2u);
  EXPECT_THROW(rule_weaken(Subspace::full(8), zero_x, s, kTol), RuleRejected);
  EXPECT_THROW(rule_weaken(both, both, s, kTol), RuleRejected);
}

// Properties -----------------------------------------------------------------

struct RandomSetting {
  Memory mem;
  std::vector<RegExprPtr> regs;
};

RandomSetting random_setting(Rng& rng) {
  static const std::vector<std::vector<Memory::Factor>> layouts{
      {{"A", 2}, {"B", 2}, {"C", 2}}, {{"A", 2}, {"B", 3}}, {{"A", 2}, {"B", 4}},
      {{"A", 3}, {"B", 2}}};
  RandomSetting s{Memory(layouts[random_index(rng, layouts.size())], kTol), {}};
  for (const auto& f : s.mem.layout()) {
    s.regs.push_back(reg::named(f.name));
    s.regs.push_back(reg::mapped(random_unitary(rng, f.dim), reg::named(f.name)));
  }
  const auto& l = s.mem.layout();
  s.regs.push_back(reg::pair(reg::named(l[0].name), reg::named(l[1].name)));
  s.regs.push_back(reg::pair(reg::named(l[1].name), reg::named(l[0].name)));
  s.regs.push_back(reg::id());
  return s;
}

Command random_command(Rng& rng, const RandomSetting& s, bool allow_guard) {
  const RegExprPtr& r = s.regs[random_index(rng, s.regs.size())];
  const std::size_t m = resolve(r, s.mem).reg.domain_dim();
  if (allow_guard && random_index(rng, 4) == 0) return Command::guard(r, random_index(rng, m));
  return Command::apply(r, random_unitary(rng, m));
}

TEST(Properties, UnitaryDenotationAndGuardContraction) {
  Rng rng(11);
  for (int t = 0; t < 40; ++t) {
    const RandomSetting s = random_setting(rng);
    Program p;
    for (int i = 0; i < 4; ++i) p.push_back(random_command(rng, s, false));
    EXPECT_TRUE(classify_operator(denote(p, s.mem), kTol).unitary);
    p.insert(p.begin() + static_cast<std::ptrdiff_t>(random_index(rng, p.size() + 1)),
             Command::guard(s.regs[0], 0));
    EXPECT_LE(operator_norm(denote(p, s.mem)), 1.0 + 1e-9);
  }
}

PredPtr random_qeq(Rng& rng, const RandomSetting& s) {
  const RegExprPtr& r = s.regs[random_index(rng, s.regs.size() - 1)];
  return pred::qeq(r, random_unit_vector(rng, resolve(r, s.mem).reg.domain_dim()));
}

TEST(Properties, IntersectLaws) {
  Rng rng(12);
  for (int t = 0; t < 40; ++t) {
    const RandomSetting s = random_setting(rng);
    const PredPtr a = random_qeq(rng, s);
    const PredPtr b = random_qeq(rng, s);
    const PredPtr c = random_qeq(rng, s);
    const Subspace ab = pred_eval(pred::intersect(a, b), s.mem);
    EXPECT_TRUE(same_subspace(ab, pred_eval(pred::intersect(b, a), s.mem), kTol));
    EXPECT_TRUE(same_subspace(ab, pred_eval(pred::intersect(a, b), s.mem, IntersectMode::general),
                              kTol));
    EXPECT_TRUE(same_subspace(pred_eval(pred::intersect(pred::intersect(a, b), c), s.mem),
                              pred_eval(pred::intersect(a, pred::intersect(b, c)), s.mem), kTol));
  }
}

TEST(Properties, ShortcutAgreesWithGeneralOnCompatibleFactors) {
  Rng rng(13);
  int nonzero = 0;
  for (int t = 0; t < 40; ++t) {
    const RandomSetting s = random_setting(rng);
    const auto& l = s.mem.layout();
    const PredPtr a = pred::qeq(reg::mapped(random_unitary(rng, l[0].dim), reg::named(l[0].name)),
                                random_unit_vector(rng, l[0].dim));
    const PredPtr b = pred::qeq(reg::named(l[1].name), random_unit_vector(rng, l[1].dim));
    const Subspace fast = pred_eval(pred::intersect(a, b), s.mem);
    const Subspace slow = pred_eval(pred::intersect(a, b), s.mem, IntersectMode::general);
    EXPECT_TRUE(same_subspace(fast, slow, kTol));
    if (fast.rank() > 0) ++nonzero;
  }
  EXPECT_EQ(nonzero, 40);
}

Subspace random_superspace(Rng& rng, const Subspace& s) {
  if (random_index(rng, 2) == 0) return s;
  return sum(s, random_subspace(rng, s.ambient_dim(), 1), kTol);
}

// Builds a random derivation whose leaves are Apply/If/Skip and whose inner
// nodes are Seq/Weaken. The conclusion's precondition is `pre`.
Judgment random_derivation(Rng& rng, const RandomSetting& s, const Subspace& pre, int depth) {
  const std::size_t choice = depth == 0 ? random_index(rng, 3) : 3 + random_index(rng, 2);
  switch (choice) {
    case 0: {
      const Command c = random_command(rng, s, false);
      return rule_apply(pre, c, random_superspace(rng, image(command_operator(c, s.mem), pre, kTol)),
                        s.mem);
    }
    case 1: {
      Command c = random_command(rng, s, true);
      if (c.kind == Command::Kind::apply) c = Command::guard(s.regs[0], 0);
      return rule_if(pre, c, random_superspace(rng, image(command_operator(c, s.mem), pre, kTol)),
                     s.mem);
    }
    case 2:
      return rule_skip(pre, random_superspace(rng, pre), kTol);
    case 3: {
      const Judgment first = random_derivation(rng, s, pre, depth - 1);
      const Judgment second = random_derivation(rng, s, first.post, depth - 1);
      return rule_seq(first, second, kTol);
    }
    default: {
      const Judgment inner = random_derivation(rng, s, random_superspace(rng, pre), depth - 1);
      return rule_weaken(pre, random_superspace(rng, inner.post), inner, kTol);
    }
  }
}

TEST(Properties, RuleTreesAreSound) {
  Rng rng(14);
  for (int t = 0; t < 60; ++t) {
    const RandomSetting s = random_setting(rng);
    const Subspace pre = random_subspace(rng, s.mem.dim(), 1 + random_index(rng, 3));
    const Judgment j = random_derivation(rng, s, pre, 1 + static_cast<int>(random_index(rng, 3)));
    const TripleReport r = check_inclusion(j.pre, denote(j.program, s.mem), j.post, kTol);
    EXPECT_TRUE(r.holds) << "residual " << r.residual;
  }
}

TEST(Properties, RandomTriplesMatchDefinition) {
  // {A} P {B} holds iff every random vector of A lands in B.
  Rng rng(15);
  for (int t = 0; t < 30; ++t) {
    const RandomSetting s = random_setting(rng);
    const PredPtr a = random_qeq(rng, s);
    const PredPtr b = random_qeq(rng, s);
    Program p{random_command(rng, s, true)};
    const bool holds = check_triple(a, p, b, s.mem).holds;
    const Subspace sa = pred_eval(a, s.mem);
    const Subspace sb = pred_eval(b, s.mem);
    const CVector v = sa.basis() * random_gaussian(rng, sa.rank(), 1);
    const CVector w = denote(p, s.mem) * v;
    const double off = (w - sb.projector() * w).norm();
    EXPECT_EQ(holds, off <= 1e-7 * (1 + w.norm()));
  }
}

}  // namespace
}  // namespace regcalc
