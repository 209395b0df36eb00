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


// A small quantum Hoare logic over register expressions.
//
// Programs are sequences of `F apply U` and `G =q x` commands on one memory
// C^(d_1·…·d_r). Predicates are subspaces of that memory, written with
// `F ≡q ψ` (the range of F(ψψ†)), intersections and operator images.
// A triple {A} P {B} holds when ⟦P⟧ψ ∈ B for every ψ ∈ A.

#ifndef REGCALC_HOARE_HPP
#define REGCALC_HOARE_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "regcalc/linalg.hpp"
#include "regcalc/qregister.hpp"

namespace regcalc {

// Types ------------------------------------------------------------------------

struct Type;
using TypePtr = std::shared_ptr<const Type>;

/// Leaf(d) or Prod(left, right). Fst/Snd/Swap/Assoc read their dimensions
/// from this structure.
struct Type {
  std::size_t dim = 1;
  TypePtr left;
  TypePtr right;

  bool is_product() const { return left != nullptr; }
};

TypePtr leaf_type(std::size_t dim);
TypePtr product_type(TypePtr left, TypePtr right);
std::string to_string(const Type& t);

// Register expressions -------------------------------------------------------------

struct RegisterExpr;
using RegExprPtr = std::shared_ptr<const RegisterExpr>;

struct RegisterExpr {
  enum class Kind {
    named, fst, snd, swap, assoc, assoc_inv, id, chain, pair, tensor, mapped, complement
  };
  Kind kind = Kind::id;
  std::string name;            // named
  CMatrix u;                   // mapped
  std::vector<RegExprPtr> args;
};

namespace reg {
RegExprPtr named(std::string name);
RegExprPtr fst();
RegExprPtr snd();
RegExprPtr swap();
RegExprPtr assoc();
RegExprPtr assoc_inv();
RegExprPtr id();
RegExprPtr chain(RegExprPtr outer, RegExprPtr inner);
RegExprPtr pair(RegExprPtr a, RegExprPtr b);
RegExprPtr tensor(RegExprPtr a, RegExprPtr b);
/// e.⟦U·U†⟧.
RegExprPtr mapped(CMatrix u, RegExprPtr of);
RegExprPtr complement(RegExprPtr of);
}  // namespace reg

std::string to_string(const RegisterExpr& e);

struct Resolved {
  QRegister reg;
  TypePtr domain;
};

/// The memory C^(d_1) ⊗ … ⊗ C^(d_r), typed as d_1 × (d_2 × (… × d_r)), with
/// every layout factor available as a named register and further named
/// registers added by `define`.
class Memory {
 public:
  struct Factor {
    std::string name;
    std::size_t dim;
    /// Optional product structure d_1 × (d_2 × …) of the factor, whose
    /// entries multiply to `dim`.
    std::vector<std::size_t> shape{};
  };

  /// Throws InvalidArgument for an empty layout, zero dimensions, duplicate
  /// names or a shape that does not multiply to its factor's dimension.
  explicit Memory(std::vector<Factor> layout, Tolerance tol = {});

  std::size_t dim() const { return type_->dim; }
  const TypePtr& type() const { return type_; }
  const std::vector<Factor>& layout() const { return layout_; }
  Tolerance tolerance() const { return tol_; }

  /// Resolves `e` and stores it under `name`. Throws InvalidArgument when
  /// the name is taken and TypeError when `e` does not resolve.
  void define(const std::string& name, const RegExprPtr& e);
  bool has(const std::string& name) const { return named_.count(name) != 0; }
  /// Throws TypeError for unknown names.
  const Resolved& lookup(const std::string& name) const;
  std::vector<std::string> names() const;

 private:
  std::vector<Factor> layout_;
  TypePtr type_;
  Tolerance tol_;
  std::map<std::string, Resolved> named_;
};

/// Compiles `e` into a register whose codomain is the memory.
Resolved resolve(const RegExprPtr& e, const Memory& mem);

// Programs -------------------------------------------------------------------

struct Command {
  enum class Kind { apply, guard };
  Kind kind = Kind::apply;
  RegExprPtr reg;
  CMatrix u;           // apply
  std::size_t x = 0;   // guard

  static Command apply(RegExprPtr reg, CMatrix u);
  static Command guard(RegExprPtr reg, std::size_t x);
};

using Program = std::vector<Command>;

/// F(U) or G(|x⟩⟨x|). Throws InvalidArgument for a non-unitary or
/// wrongly sized U and an out-of-range x.
CMatrix command_operator(const Command& c, const Memory& mem);
/// ⟦C_n⟧ ⋯ ⟦C_1⟧; the identity for the empty program.
CMatrix denote(const Program& p, const Memory& mem);

// Predicates -----------------------------------------------------------------

struct Predicate;
using PredPtr = std::shared_ptr<const Predicate>;

struct Predicate {
  enum class Kind { qeq, intersect, apply_op, full, zero };
  Kind kind = Kind::full;
  RegExprPtr reg;   // qeq, apply_op
  CVector state;    // qeq
  CMatrix op;       // apply_op
  std::vector<PredPtr> args;
};

namespace pred {
PredPtr qeq(RegExprPtr reg, CVector psi);
PredPtr intersect(PredPtr a, PredPtr b);
/// F(op) · p.
PredPtr apply_op(RegExprPtr reg, CMatrix op, PredPtr p);
PredPtr full();
PredPtr zero();
}  // namespace pred

enum class IntersectMode {
  /// im F(a) ∩ im G(b) = im F(a)G(b) when both sides are `≡q` through
  /// compatible registers, kernel intersection otherwise.
  automatic,
  /// Always the kernel intersection.
  general,
};

Subspace pred_eval(const PredPtr& p, const Memory& mem,
                   IntersectMode mode = IntersectMode::automatic);

// Triples --------------------------------------------------------------------

struct TripleReport {
  bool holds = true;
  /// A unit vector v ∈ A with ⟦P⟧v ∉ B, and its image ⟦P⟧v.
  std::optional<CVector> witness;
  std::optional<CVector> witness_image;
  std::size_t memory_dim = 0;
  std::size_t pre_rank = 0;
  /// Largest ‖(1 − P_B) ⟦P⟧ v‖ over the basis vectors v of A.
  double residual = 0.0;
};

/// The columns of D·basis(A) lie in B up to tol·(1 + column norm).
TripleReport check_inclusion(const Subspace& a, const CMatrix& d, const Subspace& b,
                             Tolerance tol);
TripleReport check_triple(const PredPtr& a, const Program& p, const PredPtr& b,
                          const Memory& mem);

// Rules ----------------------------------------------------------------------

/// A triple established by the rules, over evaluated subspaces.
struct Judgment {
  Subspace pre;
  Program program;
  Subspace post;
};

/// A ⊆ B gives {A} skip {B}.
Judgment rule_skip(const Subspace& a, const Subspace& b, Tolerance tol);
/// A ⊆ A′, B′ ⊆ B and {A′} P {B′} give {A} P {B}.
Judgment rule_weaken(const Subspace& a, const Subspace& b, const Judgment& j, Tolerance tol);
/// {A} P₁ {B} and {B} P₂ {C} give {A} P₁;P₂ {C}.
Judgment rule_seq(const Judgment& first, const Judgment& second, Tolerance tol);
/// F(U)·A ⊆ B gives {A} F apply U {B}.
Judgment rule_apply(const Subspace& a, const Command& c, const Subspace& b, const Memory& mem);
/// G(|x⟩⟨x|)·A ⊆ B gives {A} G =q x {B}.
Judgment rule_if(const Subspace& a, const Command& c, const Subspace& b, const Memory& mem);

}  // namespace regcalc

#endif  // REGCALC_HOARE_HPP
