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


#include "regcalc/classical.hpp"

#include <gtest/gtest.h>

#include <vector>

#include "regcalc/errors.hpp"

namespace regcalc {
namespace {

TEST(Lens, FirstProjectionIsValid) {
  EXPECT_TRUE(validate_lens(cfst(2, 2).lens()).ok());
}

TEST(Lens, ConstantGetterFailsPutGet) {
  Lens l{2, 2, {0, 0}, {0, 1, 0, 1}};
  const LensReport r = validate_lens(l);
  ASSERT_FALSE(r.ok());
  bool saw = false;
  for (const auto& f : r.failures) saw = saw || f.find("g(s(a, b)) != a") != std::string::npos;
  EXPECT_TRUE(saw);
  EXPECT_THROW(CRegister{l}, InvalidArgument);
}

// The setter remembers whether b was reached by setting 1 from 0 (b = 2) or
// was 1 from the start, so setting twice differs from setting once.
TEST(Lens, HistoryRecordingSetterFailsPutPut) {
  Lens l{2, 3, {0, 1, 1}, {0, 0, 0, 2, 1, 2}};
  const LensReport r = validate_lens(l);
  ASSERT_FALSE(r.ok());
  for (const auto& f : r.failures) {
    EXPECT_NE(f.find("s(a, s(a', b))"), std::string::npos) << f;
  }
}

TEST(Capply, Examples) {
  const CRegister f = cfst(2, 2);
  EXPECT_EQ(capply(f, identity_fn(2)), identity_fn(4));
  const PartialFn expected{2, 3, 2, 3};
  EXPECT_EQ(capply(f, constant_fn(2, 1)), expected);
  EXPECT_EQ(capply(f, PartialFn(2)), PartialFn(4));
  EXPECT_THROW(capply(f, identity_fn(3)), DimensionError);
}

TEST(Capply, MonoidHomomorphism) {
  Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const CRegister f = random_cregister(rng, 6, random_index(rng, 2) == 0 ? 2 : 3);
    const PartialFn a = random_partial_fn(rng, f.domain_size());
    const PartialFn b = random_partial_fn(rng, f.domain_size());
    EXPECT_EQ(capply(f, compose_fn(a, b)), compose_fn(capply(f, a), capply(f, b)));
  }
}

TEST(Ctensor, Examples) {
  EXPECT_EQ(ctensor(identity_fn(2), identity_fn(3)), identity_fn(6));
  EXPECT_EQ(ctensor(identity_fn(2), PartialFn(3)), PartialFn(6));
}

TEST(Ctensor, DistributesOverComposition) {
  Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + random_index(rng, 3);
    const std::size_t m = 1 + random_index(rng, 3);
    const PartialFn a = random_partial_fn(rng, n);
    const PartialFn c = random_partial_fn(rng, n);
    const PartialFn b = random_partial_fn(rng, m);
    const PartialFn d = random_partial_fn(rng, m);
    EXPECT_EQ(compose_fn(ctensor(a, b), ctensor(c, d)), ctensor(compose_fn(a, c), compose_fn(b, d)));
  }
}

TEST(AllPartialFns, Count) {
  EXPECT_EQ(all_partial_fns(2).size(), 9u);
  EXPECT_EQ(all_partial_fns(3).size(), 64u);
}

TEST(Cpair, FstSndIsIdentity) {
  EXPECT_TRUE(same_caction(cpair(cfst(2, 3), csnd(2, 3)), cid(6)));
}

TEST(Cpair, PairPropertyOnAllUpdates) {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const CRegister f = random_cregister(rng, 4, 2);
    for (const auto& g : all_registers(4, 2)) {
      if (!ccompatible(f, g)) continue;
      const CRegister p = cpair(f, g);
      EXPECT_TRUE(validate_lens(p.lens()).ok());
      for (const auto& a : all_partial_fns(2)) {
        for (const auto& b : all_partial_fns(2)) {
          EXPECT_EQ(capply(p, ctensor(a, b)), compose_fn(capply(f, a), capply(g, b)));
        }
      }
    }
  }
}

TEST(Cpair, IncompatibleThrows) {
  EXPECT_THROW(cpair(cfst(2, 2), cfst(2, 2)), IncompatibleRegisters);
}

TEST(Cchain, IdentityIsNeutral) {
  const CRegister f = csnd(2, 3);
  EXPECT_TRUE(same_caction(cchain(f, cid(3)), f));
  EXPECT_TRUE(same_caction(cchain(cid(6), f), f));
}

TEST(Cchain, NestedFirstProjection) {
  // A = 2, B = 3, C = 2 with memory (A×B)×C.
  const CRegister outer = cfst(6, 2);
  const CRegister inner = cfst(2, 3);
  EXPECT_TRUE(same_caction(cchain(outer, inner), cfst(2, 6)));
}

TEST(Cchain, ActionEquation) {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const CRegister f = random_cregister(rng, 12, 6);
    const CRegister g = random_cregister(rng, 6, 3);
    const CRegister fg = cchain(f, g);
    EXPECT_TRUE(validate_lens(fg.lens()).ok());
    const PartialFn a = random_partial_fn(rng, 3);
    EXPECT_EQ(capply(fg, a), capply(f, capply(g, a)));
  }
  EXPECT_THROW(cchain(cfst(2, 2), cfst(2, 2)), DimensionError);
}

TEST(Builtins, MappedNegationSwapsAssignments) {
  const CRegister x = cid(2);
  const CRegister negated = cchain(x, cmapped({1, 0}));
  EXPECT_EQ(capply(negated, constant_fn(2, 1)), capply(x, constant_fn(2, 0)));
  EXPECT_THROW(cmapped({0, 0}), InvalidArgument);
}

TEST(Builtins, SwapTwiceIsIdentity) {
  EXPECT_TRUE(same_caction(cchain(cswap(2, 3), cswap(3, 2)), cid(6)));
  EXPECT_EQ(capply(cswap(2, 3), ctensor(identity_fn(3), constant_fn(2, 1))),
            ctensor(constant_fn(2, 1), identity_fn(3)));
}

TEST(Builtins, UnitDoesNothing) {
  const CRegister u = cunit(5);
  for (const auto& a : all_partial_fns(1)) {
    const PartialFn got = capply(u, a);
    EXPECT_EQ(got, a[0] ? identity_fn(5) : PartialFn(5));
  }
  EXPECT_TRUE(ccompatible(u, cfst(5, 1)));
}

TEST(Builtins, AllValid) {
  for (const auto& r : {cid(3), cfst(2, 3), csnd(3, 2), cswap(2, 2), cassoc(2, 1, 2),
                        cmapped({2, 0, 1}), cunit(4),
                        ctensor_registers(cfst(2, 2), csnd(1, 3))}) {
    EXPECT_TRUE(validate_lens(r.lens()).ok());
  }
}

TEST(Tensor, ComponentwiseAction) {
  Rng rng(5);
  const CRegister f = random_cregister(rng, 4, 2);
  const CRegister g = random_cregister(rng, 3, 3);
  const CRegister t = ctensor_registers(f, g);
  for (int trial = 0; trial < 30; ++trial) {
    const PartialFn a = random_partial_fn(rng, 2);
    const PartialFn b = random_partial_fn(rng, 3);
    EXPECT_EQ(capply(t, ctensor(a, b)), ctensor(capply(f, a), capply(g, b)));
  }
}

TEST(Compatible, Examples) {
  EXPECT_TRUE(ccompatible(cfst(2, 2), csnd(2, 2)));
  EXPECT_FALSE(ccompatible(cfst(2, 2), cfst(2, 2)));
  EXPECT_TRUE(brute_force_commute(cfst(2, 2), csnd(2, 2)));
  // Both read the first component, through different encodings.
  const CRegister overlap = cchain(cfst(2, 2), cmapped({1, 0}));
  EXPECT_FALSE(brute_force_commute(cfst(2, 2), overlap));
  EXPECT_FALSE(ccompatible(cfst(2, 2), overlap));
}

TEST(Compatible, AgreesWithBruteForceExhaustively) {
  std::size_t pairs = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<CRegister> regs;
    for (std::size_t a = 1; a <= 3; ++a) {
      for (auto& r : all_registers(n, a)) regs.push_back(std::move(r));
    }
    for (const auto& f : regs) {
      for (const auto& g : regs) {
        EXPECT_EQ(ccompatible(f, g), brute_force_commute(f, g));
        ++pairs;
      }
    }
  }
  EXPECT_GT(pairs, 100u);
}

TEST(AllRegisters, CountsOnSmallMemories) {
  // Lenses with |A| = 2 on 4 elements correspond to ordered splittings of the
  // memory into two blocks of size 2 with a matching between them: 3 · 2 · 2.
  EXPECT_EQ(all_registers(4, 2).size(), 12u);
  EXPECT_EQ(all_registers(3, 3).size(), 6u);
  EXPECT_EQ(all_registers(4, 1).size(), 1u);
  EXPECT_TRUE(all_registers(4, 3).empty());
}

}  // namespace
}  // namespace regcalc
