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


// Classical registers over finite sets.
//
// Elements of a set of size n are the indices 0..n−1, and a pair (x, y) in
// A × B is encoded as x·|B| + y, the same order as the Kronecker product.
// A register is a lens: a getter g : B → A and a setter s : A × B → B with
//   s(g(b), b) = b,   g(s(a, b)) = a,   s(a, s(a′, b)) = s(a, b).
// Updates are partial functions, and the register acts on them by
//   F(a)(b) = s(a(g(b)), b).

#ifndef REGCALC_CLASSICAL_HPP
#define REGCALC_CLASSICAL_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "regcalc/random.hpp"

namespace regcalc {

/// images[x] is the image of x, or empty where the function is undefined.
using PartialFn = std::vector<std::optional<std::size_t>>;

PartialFn identity_fn(std::size_t size);
PartialFn constant_fn(std::size_t size, std::size_t value);
/// a ∘ b.
PartialFn compose_fn(const PartialFn& a, const PartialFn& b);
/// (a ⊗ b)(x, y) = (a(x), b(y)), defined iff both are.
PartialFn ctensor(const PartialFn& a, const PartialFn& b);
/// All (size+1)^size partial functions on a set of the given size.
std::vector<PartialFn> all_partial_fns(std::size_t size);
PartialFn random_partial_fn(Rng& rng, std::size_t size);

struct Lens {
  std::size_t a_size = 1;
  std::size_t b_size = 1;
  std::vector<std::size_t> getter;  // indexed by b
  std::vector<std::size_t> setter;  // indexed by a·b_size + b

  bool operator==(const Lens&) const = default;
};

struct LensReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Exhaustive check of the three lens laws; every failing instance is listed.
LensReport validate_lens(const Lens& l);

class CRegister {
 public:
  /// Throws InvalidArgument for malformed tables or an unlawful lens.
  explicit CRegister(Lens lens);

  std::size_t domain_size() const { return lens_.a_size; }
  std::size_t memory_size() const { return lens_.b_size; }
  std::size_t get(std::size_t b) const { return lens_.getter[b]; }
  std::size_t set(std::size_t a, std::size_t b) const {
    return lens_.setter[a * lens_.b_size + b];
  }
  const Lens& lens() const { return lens_; }

 private:
  Lens lens_;
};

PartialFn capply(const CRegister& f, const PartialFn& a);

CRegister cid(std::size_t size);
CRegister cfst(std::size_t a_size, std::size_t b_size);
CRegister csnd(std::size_t a_size, std::size_t b_size);
/// σ : A×B → B×A as a register with domain B×A on memory A×B.
CRegister cswap(std::size_t a_size, std::size_t b_size);
/// Associativity is the identity under the flat pair encoding.
CRegister cassoc(std::size_t a_size, std::size_t b_size, std::size_t c_size);
/// Getter f and setter s(a, b) = f⁻¹(a); f must be a permutation table.
CRegister cmapped(const std::vector<std::size_t>& f);
/// The register with a one-element domain.
CRegister cunit(std::size_t memory_size);

/// Requires ccompatible(F, G).
CRegister cpair(const CRegister& f, const CRegister& g);
/// F.G with G inside F; requires domain(F) = memory(G).
CRegister cchain(const CRegister& f, const CRegister& g);
/// (F ⊗ G) on the product of the two memories.
CRegister ctensor_registers(const CRegister& f, const CRegister& g);

/// Getter/setter criterion: the setters commute and neither setter changes
/// the other register's getter.
bool ccompatible(const CRegister& f, const CRegister& g);
/// F(a)∘G(b) = G(b)∘F(a) for every pair of partial functions. Domains of
/// size at most 3.
bool brute_force_commute(const CRegister& f, const CRegister& g);

/// Equal action on every update.
bool same_caction(const CRegister& f, const CRegister& g);

/// Every lawful lens on a memory of the given size with the given domain
/// size, without duplicates.
std::vector<CRegister> all_registers(std::size_t memory_size, std::size_t domain_size);
/// A lens from a random bijection memory → domain × rest.
CRegister random_cregister(Rng& rng, std::size_t memory_size, std::size_t domain_size);

}  // namespace regcalc

#endif  // REGCALC_CLASSICAL_HPP
