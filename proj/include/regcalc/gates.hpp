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


// Named constant matrices and vectors used by the built-in scenarios.

#ifndef REGCALC_GATES_HPP
#define REGCALC_GATES_HPP

#include <cstddef>
#include <optional>
#include <string>

#include "regcalc/linalg.hpp"

namespace regcalc::gates {

CMatrix hadamard();
CMatrix pauli_x();
CMatrix pauli_z();
/// Control on the first qubit.
CMatrix cnot();
/// U_σ|a, b⟩ = |b, a⟩ on two qubits.
CMatrix swap();
/// |x⟩ in C^dim.
CVector ket(std::size_t dim, std::size_t x);
/// |x⟩⟨x|.
CMatrix projector(std::size_t dim, std::size_t x);
/// (|00⟩ + |11⟩)/√2.
CVector bell();
CVector plus();
CVector minus();
/// a^e for e ∈ {0, 1}.
CMatrix power(const CMatrix& a, std::size_t e);

/// Looks up "H", "X", "Z", "CNOT", "Usigma", "I2", "beta", "plus", "minus",
/// "ket0", "ket1". Vectors are returned as one-column matrices.
std::optional<CMatrix> lookup(const std::string& name);

}  // namespace regcalc::gates

#endif  // REGCALC_GATES_HPP
