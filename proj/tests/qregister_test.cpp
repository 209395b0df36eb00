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


#include "regcalc/qregister.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <vector>

#include "regcalc/errors.hpp"
#include "regcalc/random.hpp"

namespace regcalc {
namespace {

const Tolerance kTol(1e-8);

CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

CMatrix pauli_x() { return mat2(0, 1, 1, 0); }
CMatrix pauli_z() { return mat2(1, 0, 0, -1); }
CMatrix hadamard() {
  const double r = 1.0 / std::sqrt(2.0);
  return mat2(r, r, r, -r);
}

// Registers with random dimensions (codomain ≤ 16).
QRegister any_register(Rng& rng) {
  const std::size_t m = 1 + random_index(rng, 4);
  const std::size_t k = 1 + random_index(rng, 16 / m);
  return random_register(rng, m, k);
}

TEST(Apply, IdentityRegister) {
  Rng rng(1);
  const CMatrix a = random_gaussian(rng, 3, 3);
  EXPECT_TRUE(approx_eq(id_register(3).apply(a), a));
}

TEST(Apply, FstIsLeftFactor) {
  EXPECT_TRUE(approx_eq(fst_register(2, 2).apply(pauli_x()), kron(pauli_x(), identity(2))));
}

TEST(Apply, HomomorphismOnRandomRegisters) {
  Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const QRegister f = any_register(rng);
    const std::size_t m = f.domain_dim();
    EXPECT_TRUE(approx_eq(f.apply(identity(m)), identity(f.codomain_dim()), kTol));
    const CMatrix a = random_gaussian(rng, m, m);
    const CMatrix b = random_gaussian(rng, m, m);
    EXPECT_TRUE(approx_eq(f.apply(a * b), f.apply(a) * f.apply(b), kTol));
    EXPECT_TRUE(approx_eq(f.apply(a.adjoint()), f.apply(a).adjoint(), kTol));
  }
}

TEST(Apply, WrongShapeThrows) {
  EXPECT_THROW(fst_register(2, 2).apply(identity(3)), DimensionError);
}

TEST(Construct, RejectsNonUnitary) {
  EXPECT_THROW(QRegister(2, 1, 2.0 * identity(2)), InvalidArgument);
  EXPECT_THROW(QRegister(2, 2, identity(2)), DimensionError);
  EXPECT_THROW(iso_register(mat2(1, 1, 0, 1)), InvalidArgument);
}

TEST(Builtins, SndIsRightFactor) {
  EXPECT_TRUE(approx_eq(snd_register(2, 2).apply(pauli_x()), kron(identity(2), pauli_x())));
  const CMatrix b = CMatrix::Random(3, 3);
  EXPECT_TRUE(approx_eq(snd_register(2, 3).apply(b), kron(identity(2), b)));
}

TEST(Builtins, UnitScalesIdentity) {
  CMatrix c(1, 1);
  c(0, 0) = 2.0;
  EXPECT_TRUE(approx_eq(unit_register(3).apply(c), 2.0 * identity(3)));
}

TEST(Builtins, IsoHadamardOnZeroProjector) {
  const double r = 1.0 / std::sqrt(2.0);
  CVector plus(2);
  plus << r, r;
  EXPECT_TRUE(approx_eq(iso_register(hadamard()).apply(matrix_unit(2, 0, 0)),
                        outer(plus, plus), Tolerance(1e-12)));
}

TEST(Builtins, SwapAndAssoc) {
  Rng rng(3);
  const CMatrix a = random_gaussian(rng, 2, 2);
  const CMatrix b = random_gaussian(rng, 3, 3);
  const CMatrix c = random_gaussian(rng, 2, 2);
  EXPECT_TRUE(approx_eq(swap_register(2, 3).apply(kron(a, b)), kron(b, a)));
  EXPECT_TRUE(approx_eq(assoc_register(2, 3, 2).apply(kron(kron(a, b), c)),
                        kron(a, kron(b, c))));
  EXPECT_TRUE(same_action(chain(assoc_inv_register(2, 3, 2), assoc_register(2, 3, 2)),
                          id_register(12)));
}

TEST(Builtins, FactorRegisterActsOnOneFactor) {
  Rng rng(4);
  const std::array<std::size_t, 3> dims{2, 3, 2};
  const CMatrix a = random_gaussian(rng, 3, 3);
  EXPECT_TRUE(approx_eq(factor_register(dims, 1).apply(a),
                        kron(identity(2), kron(a, identity(2)))));
  const CMatrix b = random_gaussian(rng, 2, 2);
  EXPECT_TRUE(approx_eq(factor_register(dims, 2).apply(b), kron(identity(6), b)));
  EXPECT_TRUE(approx_eq(factor_register(dims, 0).apply(b), kron(b, identity(6))));
}

TEST(Chain, IdentityIsNeutral) {
  Rng rng(5);
  const QRegister f = random_register(rng, 2, 3);
  EXPECT_TRUE(same_action(chain(f, id_register(2)), f));
  EXPECT_TRUE(same_action(chain(id_register(6), f), f));
}

TEST(Chain, FstAfterIsoX) {
  const QRegister f = chain(fst_register(2, 2), iso_register(pauli_x()));
  EXPECT_TRUE(approx_eq(f.apply(matrix_unit(2, 0, 0)),
                        kron(matrix_unit(2, 1, 1), identity(2))));
}

TEST(Chain, NestedFst) {
  EXPECT_TRUE(same_action(chain(fst_register(4, 2), fst_register(2, 2)), fst_register(2, 4)));
  EXPECT_TRUE(same_action(chain(fst_register(4, 4), fst_register(2, 2)), fst_register(2, 8)));
}

TEST(Chain, ComposesActions) {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const QRegister g = random_register(rng, 2, 2);
    const QRegister f = random_register(rng, 4, 3);
    const QRegister fg = chain(f, g);
    EXPECT_EQ(fg.env_dim(), 6u);
    const CMatrix a = random_gaussian(rng, 2, 2);
    EXPECT_TRUE(approx_eq(fg.apply(a), f.apply(g.apply(a)), kTol));
  }
}

TEST(Chain, DimensionMismatchThrows) {
  EXPECT_THROW(chain(fst_register(2, 2), fst_register(3, 1)), DimensionError);
}

TEST(Compatible, Examples) {
  EXPECT_TRUE(compatible(fst_register(2, 2), snd_register(2, 2)));
  EXPECT_FALSE(compatible(id_register(2), id_register(2)));
  Rng rng(7);
  const QRegister f = random_register(rng, 2, 3);
  EXPECT_TRUE(compatible(unit_register(6), f));
  EXPECT_THROW(compatible(id_register(2), id_register(3)), DimensionError);
}

bool commute_on_units(const QRegister& f, const QRegister& g) {
  for (std::size_t i = 0; i < f.domain_dim(); ++i) {
    for (std::size_t j = 0; j < f.domain_dim(); ++j) {
      const CMatrix a = f.apply(matrix_unit(f.domain_dim(), i, j));
      for (std::size_t k = 0; k < g.domain_dim(); ++k) {
        for (std::size_t l = 0; l < g.domain_dim(); ++l) {
          const CMatrix b = g.apply(matrix_unit(g.domain_dim(), k, l));
          if (!approx_eq(a * b, b * a, kTol)) return false;
        }
      }
    }
  }
  return true;
}

TEST(Compatible, AgreesWithUnitCommutation) {
  Rng rng(17);
  int agree_true = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::array<std::size_t, 3> dims{1 + random_index(rng, 3), 1 + random_index(rng, 3), 2};
    const auto parts = random_partition(rng, dims);
    const std::size_t n = dims[0] * dims[1] * dims[2];
    // Half the draws use an independent register, which rarely commutes.
    const QRegister g = trial % 2 == 0 ? parts[1] : random_register(rng, dims[1], n / dims[1]);
    const bool fast = compatible(parts[0], g, kTol);
    EXPECT_EQ(fast, commute_on_units(parts[0], g));
    EXPECT_EQ(fast, compatible(g, parts[0], kTol));
    agree_true += fast ? 1 : 0;
  }
  EXPECT_GE(agree_true, 30);
}

TEST(Pair, FstSndIsIdentity) {
  EXPECT_TRUE(same_action(pair(fst_register(2, 3), snd_register(2, 3)), id_register(6)));
}

TEST(Pair, SndFstIsSwap) {
  EXPECT_TRUE(same_action(pair(snd_register(3, 3), fst_register(3, 3)), swap_register(3, 3)));
}

TEST(Pair, ProductPropertyOnRandomPartitions) {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const std::array<std::size_t, 3> dims{2, 1 + random_index(rng, 3), 2};
    const auto regs = random_partition(rng, dims);
    const QRegister p = pair(regs[0], regs[1]);
    const CMatrix a = random_gaussian(rng, dims[0], dims[0]);
    const CMatrix b = random_gaussian(rng, dims[1], dims[1]);
    EXPECT_TRUE(approx_eq(p.apply(kron(a, b)), regs[0].apply(a) * regs[1].apply(b), kTol));
    EXPECT_TRUE(approx_eq(p.apply(kron(a, identity(dims[1]))), regs[0].apply(a), kTol));
  }
}

TEST(Pair, IncompatibleThrows) {
  EXPECT_THROW(pair(fst_register(2, 2), fst_register(2, 2)), IncompatibleRegisters);
}

TEST(Tensor, IdentitiesAndPaulis) {
  EXPECT_TRUE(same_action(tensor_registers(id_register(2), id_register(3)), id_register(6)));
  EXPECT_TRUE(same_action(tensor_registers(iso_register(pauli_x()), iso_register(pauli_z())),
                          iso_register(kron(pauli_x(), pauli_z()))));
}

TEST(Tensor, ProductOfActions) {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const QRegister f = random_register(rng, 2, 1 + random_index(rng, 2));
    const QRegister g = random_register(rng, 1 + random_index(rng, 3), 2);
    const CMatrix a = random_gaussian(rng, f.domain_dim(), f.domain_dim());
    const CMatrix b = random_gaussian(rng, g.domain_dim(), g.domain_dim());
    EXPECT_TRUE(approx_eq(tensor_registers(f, g).apply(kron(a, b)),
                          kron(f.apply(a), g.apply(b)), kTol));
  }
}

TEST(Extract, FstSuperoperator) {
  const QRegister f = extract_canonical(fst_register(2, 2).superoperator());
  EXPECT_EQ(f.domain_dim(), 2u);
  EXPECT_EQ(f.env_dim(), 2u);
  EXPECT_TRUE(same_action(f, fst_register(2, 2)));
}

TEST(Extract, SndSuperoperatorRoundTrips) {
  const auto s = Superoperator::from_map(
      2, 4, [](const CMatrix& b) { return kron(identity(2), b); });
  const QRegister f = extract_canonical(s);
  EXPECT_EQ(f.env_dim(), 2u);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      EXPECT_TRUE(approx_eq(f.apply(matrix_unit(2, i, j)),
                            kron(identity(2), matrix_unit(2, i, j))));
}

TEST(Extract, RejectsNonUnitalDirectSum) {
  const auto s = Superoperator::from_map(2, 4, [](const CMatrix& a) {
    CMatrix out = CMatrix::Zero(4, 4);
    out.topLeftCorner(2, 2) = a;
    return out;
  });
  EXPECT_THROW(extract_canonical(s), NotARegister);
}

TEST(Extract, RejectsTransposeAndTraceMaps) {
  const auto transpose = Superoperator::from_map(
      2, 2, [](const CMatrix& a) { return CMatrix(a.transpose()); });
  const auto trace = Superoperator::from_map(
      2, 2, [](const CMatrix& a) { return CMatrix(a.trace() / 2.0 * identity(2)); });
  EXPECT_THROW(extract_canonical(transpose), NotARegister);
  EXPECT_THROW(extract_canonical(trace), NotARegister);
  try {
    extract_canonical(transpose);
  } catch (const NotARegister& e) {
    EXPECT_NE(e.reason().find("non-multiplicative"), std::string::npos) << e.reason();
  }
}

TEST(Extract, RejectsIndivisibleDimension) {
  const auto s = Superoperator::from_map(2, 3, [](const CMatrix&) { return identity(3); });
  EXPECT_THROW(extract_canonical(s), NotARegister);
}

TEST(Extract, RoundTripOnRandomRegisters) {
  Rng rng(10);
  for (int trial = 0; trial < 100; ++trial) {
    const QRegister f = any_register(rng);
    EXPECT_TRUE(same_action(extract_canonical(f.superoperator()), f, Tolerance(1e-9)));
  }
}

TEST(Validate, RegistersPass) {
  Rng rng(11);
  EXPECT_TRUE(validate_homomorphism(random_register(rng, 3, 2).superoperator(), kTol).ok());
}

TEST(Validate, TransposeFailsMultiplicativity) {
  const auto transpose = Superoperator::from_map(
      2, 2, [](const CMatrix& a) { return CMatrix(a.transpose()); });
  const auto report = validate_homomorphism(transpose);
  EXPECT_TRUE(report.unital);
  EXPECT_FALSE(report.multiplicative);
  EXPECT_TRUE(report.adjoint_preserving);
}

TEST(Validate, NormalizedTraceFailsMultiplicativity) {
  const auto trace = Superoperator::from_map(
      2, 2, [](const CMatrix& a) { return CMatrix(a.trace() / 2.0 * identity(2)); });
  const auto report = validate_homomorphism(trace);
  EXPECT_TRUE(report.unital);
  EXPECT_FALSE(report.multiplicative);
}

TEST(Complement, OfFstIsSnd) {
  EXPECT_TRUE(same_action(complement(fst_register(2, 2)), snd_register(2, 2)));
}

TEST(Complement, DomainDimensionAndIso) {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const QRegister f = any_register(rng);
    const QRegister c = complement(f);
    EXPECT_EQ(c.domain_dim(), f.codomain_dim() / f.domain_dim());
    EXPECT_TRUE(compatible(f, c, kTol));
    EXPECT_TRUE(as_iso(pair(f, c, kTol)).has_value());
  }
}

TEST(Complement, OfIdentityIsUnit) {
  const QRegister c = complement(id_register(4));
  EXPECT_EQ(c.domain_dim(), 1u);
  EXPECT_TRUE(is_unit_register(c));
}

TEST(AsIso, Examples) {
  const auto id = as_iso(id_register(3));
  ASSERT_TRUE(id.has_value());
  EXPECT_TRUE(approx_eq(id->v, identity(3)));
  EXPECT_FALSE(as_iso(fst_register(2, 2)).has_value());
  Rng rng(13);
  const CMatrix u = random_unitary(rng, 3);
  const auto iso = as_iso(iso_register(u));
  ASSERT_TRUE(iso.has_value());
  EXPECT_TRUE(same_action(chain(iso_register(u), iso->inverse), id_register(3)));
}

TEST(Equivalent, SelfIsIdentity) {
  Rng rng(14);
  const QRegister f = random_register(rng, 2, 3);
  const auto i = equivalent(f, f);
  ASSERT_TRUE(i.has_value());
  EXPECT_TRUE(same_action(*i, id_register(2), kTol));
}

TEST(Equivalent, FstAndSndDiffer) {
  EXPECT_FALSE(equivalent(fst_register(2, 2), snd_register(2, 2)).has_value());
}

TEST(Equivalent, ComplementsAreEquivalent) {
  Rng rng(15);
  for (int trial = 0; trial < 20; ++trial) {
    const std::array<std::size_t, 2> dims{1 + random_index(rng, 3), 1 + random_index(rng, 3)};
    const auto regs = random_partition(rng, dims);
    ASSERT_TRUE(is_complements(regs[0], regs[1], kTol));
    const auto i = equivalent(complement(regs[0]), regs[1], kTol);
    ASSERT_TRUE(i.has_value());
    EXPECT_TRUE(same_action(chain(complement(regs[0]), *i), regs[1], kTol));
  }
}

TEST(Equivalent, FindsHiddenIso) {
  Rng rng(16);
  const QRegister f = random_register(rng, 3, 2);
  const CMatrix w = random_unitary(rng, 3);
  const auto i = equivalent(f, chain(f, iso_register(w)), kTol);
  ASSERT_TRUE(i.has_value());
  EXPECT_TRUE(same_action(*i, iso_register(w), kTol));
}

TEST(Partition, Examples) {
  EXPECT_FALSE(is_complements(fst_register(2, 2), fst_register(2, 2)));
  const std::vector<QRegister> parts{fst_register(2, 2), snd_register(2, 2)};
  EXPECT_TRUE(is_partition(parts));
  const std::vector<QRegister> half{fst_register(2, 2)};
  EXPECT_FALSE(is_partition(half));
}

TEST(Properties, ClassificationAndNormPreserved) {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const QRegister f = any_register(rng);
    const std::size_t m = f.domain_dim();
    const CMatrix u = random_unitary(rng, m);
    EXPECT_TRUE(classify_operator(f.apply(u), kTol).unitary);
    const std::size_t r = 1 + random_index(rng, m);
    const CMatrix p = random_subspace(rng, m, r).projector();
    EXPECT_TRUE(classify_operator(f.apply(p), kTol).projector);
    // A partial isometry (isometry on its support) stays one.
    const CMatrix v = u * p;
    const CMatrix fv = f.apply(v);
    EXPECT_TRUE(approx_eq(fv.adjoint() * fv, f.apply(p), kTol));
    const CMatrix a = random_gaussian(rng, m, m);
    EXPECT_NEAR(operator_norm(f.apply(a)), operator_norm(a), 1e-8 * (1 + operator_norm(a)));
  }
}

TEST(Properties, RangeIntersectionOfCompatibleProjectors) {
  Rng rng(18);
  for (int trial = 0; trial < 50; ++trial) {
    const std::array<std::size_t, 3> dims{1 + random_index(rng, 3), 1 + random_index(rng, 3), 2};
    const auto regs = random_partition(rng, dims);
    const CMatrix a = random_subspace(rng, dims[0], random_index(rng, dims[0] + 1)).projector();
    const CMatrix b = random_subspace(rng, dims[1], random_index(rng, dims[1] + 1)).projector();
    const CMatrix fa = regs[0].apply(a);
    const CMatrix gb = regs[1].apply(b);
    const Subspace lhs = intersect(orthonormal_range_basis(fa, kTol),
                                   orthonormal_range_basis(gb, kTol), kTol);
    const Subspace rhs = orthonormal_range_basis(fa * gb, kTol);
    EXPECT_TRUE(same_subspace(lhs, rhs, kTol));
  }
}

}  // namespace
}  // namespace regcalc
