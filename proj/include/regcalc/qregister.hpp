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

// Finite-dimensional quantum registers.
//
// A quantum register F : B(C^m) → B(C^n) is a unital *-homomorphism. Every
// such map has the form F(a) = U (a ⊗ I_k) U† for a unitary U on C^m ⊗ C^k
// with n = m·k, and that triple (m, k, U) is the only representation kept
// here. U is not unique (U·(I_m ⊗ W) gives the same map), so registers are
// compared by their action on matrix units, never by U.

#ifndef REGCALC_QREGISTER_HPP
#define REGCALC_QREGISTER_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "regcalc/linalg.hpp"
#include "regcalc/superoperator.hpp"

namespace regcalc {

class QRegister {
 public:
  /// Throws DimensionError for zero dimensions or a U that is not
  /// (m·k)×(m·k), and InvalidArgument when U is not unitary within tol.
  QRegister(std::size_t m, std::size_t k, CMatrix u, Tolerance tol = {});

  std::size_t domain_dim() const { return m_; }
  std::size_t env_dim() const { return k_; }
  std::size_t codomain_dim() const { return m_ * k_; }
  const CMatrix& unitary() const { return u_; }

  /// U (a ⊗ I_k) U†.
  CMatrix apply(const CMatrix& a) const;
  Superoperator superoperator() const;

 private:
  std::size_t m_;
  std::size_t k_;
  CMatrix u_;
};

// Built-in registers -------------------------------------------------------

QRegister id_register(std::size_t m);
/// The sandwich register a ↦ U a U†.
QRegister iso_register(const CMatrix& u, Tolerance tol = {});
/// a ↦ a ⊗ I_k on C^m ⊗ C^k.
QRegister fst_register(std::size_t m, std::size_t k);
/// b ↦ I_m ⊗ b on C^m ⊗ C^k (domain dimension k).
QRegister snd_register(std::size_t m, std::size_t k);
/// c ↦ c·I_n with domain the 1×1 matrices.
QRegister unit_register(std::size_t n);
/// σ : A⊗B → B⊗A, σ(a ⊗ b) = b ⊗ a.
QRegister swap_register(std::size_t ma, std::size_t mb);
/// α : (A⊗B)⊗C → A⊗(B⊗C). With Kronecker storage both sides share one
/// index order, so this is the identity on C^(ma·mb·mc).
QRegister assoc_register(std::size_t ma, std::size_t mb, std::size_t mc);
QRegister assoc_inv_register(std::size_t ma, std::size_t mb, std::size_t mc);
/// The register of factor `which` in C^dims[0] ⊗ … ⊗ C^dims[r−1].
QRegister factor_register(std::span<const std::size_t> dims, std::size_t which);

// Constructions --------------------------------------------------------------

/// F.G = F ∘ G; requires domain(F) = codomain(G).
QRegister chain(const QRegister& f, const QRegister& g);

/// F(a)·G(b) = G(b)·F(a) for all matrix units a, b.
bool compatible(const QRegister& f, const QRegister& g, Tolerance tol = {});

/// The register with ⟨F,G⟩(a ⊗ b) = F(a)·G(b). Throws IncompatibleRegisters.
QRegister pair(const QRegister& f, const QRegister& g, Tolerance tol = {});
/// ⟨F_1, ⟨F_2, … F_r⟩⟩ (right-associative).
QRegister pair_all(std::span<const QRegister> regs, Tolerance tol = {});

/// The map a ⊗ b ↦ F(a)·G(b) extended linearly, without any precondition.
/// It is a register only when F and G are compatible.
Superoperator bilinear_pair_map(const QRegister& f, const QRegister& g);

/// (F ⊗ G)(a ⊗ b) = F(a) ⊗ G(b).
QRegister tensor_registers(const QRegister& f, const QRegister& g);

// Canonicalization -----------------------------------------------------------

struct HomomorphismReport {
  bool unital = true;
  bool multiplicative = true;
  bool adjoint_preserving = true;
  std::vector<std::string> failures;

  bool ok() const { return unital && multiplicative && adjoint_preserving; }
};

/// Checks F(1) = 1, F(E_ij E_kl) = F(E_ij) F(E_kl) and F(E_ij†) = F(E_ij)†
/// on every matrix unit.
HomomorphismReport validate_homomorphism(const Superoperator& s,
                                         Tolerance tol = {});

/// Recovers (m, k, U) from the tabulated action of a unital *-homomorphism.
/// Throws NotARegister describing the first violated property.
QRegister extract_canonical(const Superoperator& s, Tolerance tol = {});

// Complements, isos and equivalence -----------------------------------------

/// G(c) = U (I_m ⊗ c) U†, with domain dimension k = n/m.
QRegister complement(const QRegister& f);

struct IsoForm {
  CMatrix v;
  QRegister inverse;
};
/// Present iff F(a) = V a V† for a unitary V (i.e. k = 1).
std::optional<IsoForm> as_iso(const QRegister& f);

/// An iso-register I with F.I = G in action, when one exists.
std::optional<QRegister> equivalent(const QRegister& f, const QRegister& g,
                                    Tolerance tol = {});

bool is_complements(const QRegister& f, const QRegister& g, Tolerance tol = {});
bool is_partition(std::span<const QRegister> regs, Tolerance tol = {});
bool is_unit_register(const QRegister& f, Tolerance tol = {});

/// Equal action on every matrix unit (and equal dimensions).
bool same_action(const QRegister& f, const QRegister& g, Tolerance tol = {});

}  // namespace regcalc

#endif  // REGCALC_QREGISTER_HPP
