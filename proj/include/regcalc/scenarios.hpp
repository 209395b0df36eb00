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

// Built-in worked examples: teleportation, the three-CNOT swap and a small
// mixed-state circuit. Each run returns a list of named numerical checks.

#ifndef REGCALC_SCENARIOS_HPP
#define REGCALC_SCENARIOS_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "regcalc/hoare.hpp"
#include "regcalc/linalg.hpp"

namespace regcalc {

struct CheckResult {
  std::string name;
  bool passed = true;
  double residual = 0.0;
  std::string detail;
};

struct ScenarioReport {
  std::string name;
  std::vector<CheckResult> checks;

  bool passed() const;
  std::size_t failures() const;
};

// Teleportation ----------------------------------------------------------------

/// Canonical factor order A, X, Phi1, B, Phi2; `order[i]` names the factor
/// placed at memory position i.
struct TeleportOptions {
  std::size_t dim_a = 2;
  std::size_t dim_b = 2;
  std::array<std::size_t, 5> order{0, 1, 2, 3, 4};
  std::size_t random_states = 4;
  std::uint64_t seed = 1;
  Tolerance tol{1e-9};
  Tolerance matrix_tol{1e-12};
};

/// Factors A, X, Phi1, B, Phi2 in the requested order, plus the registers
/// Phi = ⟨Phi1, Phi2⟩, XAB = ⟨X, ⟨A, B⟩⟩ and PhiSndAB = ⟨Phi.Snd, ⟨A, B⟩⟩.
/// Throws InvalidArgument for zero dimensions or a non-permutation order.
Memory teleport_memory(const TeleportOptions& opts);
/// The six commands of teleport(a, b).
Program teleport_program(std::size_t a, std::size_t b);
/// XAB ≡q ψ ∩ Phi ≡q β.
PredPtr teleport_pre(const CVector& psi);
/// ⟨Phi.Snd, ⟨A, B⟩⟩ ≡q ψ.
PredPtr teleport_post(const CVector& psi);
/// The 8×8 operators M and M′ on X ⊗ Phi1 ⊗ Phi2, assembled factor by factor.
CMatrix teleport_m(std::size_t a, std::size_t b);
CMatrix teleport_m_prime(std::size_t a, std::size_t b);
/// Every computational basis state of XAB followed by `random_states`
/// seeded random unit vectors.
std::vector<CVector> teleport_states(const TeleportOptions& opts);

ScenarioReport run_teleport(const TeleportOptions& opts = {});

// Three CNOTs ------------------------------------------------------------------

struct TripleCnotOptions {
  std::size_t rest_dim = 3;
  /// Embed F, G and the rest through a random partition instead of plain
  /// tensor factors.
  bool scrambled = true;
  std::uint64_t seed = 1;
  Tolerance tol{1e-9};
};

ScenarioReport run_triple_cnot(const TripleCnotOptions& opts = {});

// Mixed circuit ----------------------------------------------------------------

struct MixedCircuitOptions {
  /// 1 gives the trivial environment; larger values use a random density
  /// operator for the rest of the memory.
  std::size_t rest_dim = 1;
  bool scrambled = false;
  std::uint64_t seed = 1;
  Tolerance tol{1e-9};
};

/// ½|+0⟩⟨+0| + ½|−1⟩⟨−1|.
CMatrix mixed_circuit_expected_gh();

ScenarioReport run_mixed_circuit(const MixedCircuitOptions& opts = {});

}  // namespace regcalc

#endif  // REGCALC_SCENARIOS_HPP
