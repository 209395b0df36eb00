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


// Seeded generators for property tests and the law suites. Every function
// draws only from the engine passed in.

#ifndef REGCALC_RANDOM_HPP
#define REGCALC_RANDOM_HPP

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "regcalc/linalg.hpp"
#include "regcalc/qregister.hpp"

namespace regcalc {

using Rng = std::mt19937_64;

/// Entries with independent standard normal real and imaginary parts.
CMatrix random_gaussian(Rng& rng, std::size_t rows, std::size_t cols);
/// Haar-distributed unitary: QR of a Gaussian matrix with the phases of
/// diag(R) pushed into Q.
CMatrix random_unitary(Rng& rng, std::size_t n);
CVector random_unit_vector(Rng& rng, std::size_t n);
/// Full-rank density operator G G† / tr(G G†).
CMatrix random_density(Rng& rng, std::size_t n);
/// Subspace spanned by the first r columns of a random unitary.
Subspace random_subspace(Rng& rng, std::size_t n, std::size_t r);
/// Kraus operators with Σ M_i† M_i = s·I, s = 1 for a channel and s ∈ (0,1]
/// drawn at random for a subchannel.
std::vector<CMatrix> random_kraus(Rng& rng, std::size_t dim, std::size_t count,
                                  bool subchannel);
std::size_t random_index(Rng& rng, std::size_t bound);

/// (m, k, U) with U random unitary.
QRegister random_register(Rng& rng, std::size_t m, std::size_t k);
/// Registers F_i = V ∘ factor_i ∘ W_i over C^dims[0] ⊗ …, with random
/// unitaries V (memory) and W_i (domain). Always a partition.
std::vector<QRegister> random_partition(Rng& rng, std::span<const std::size_t> dims);

}  // namespace regcalc

#endif  // REGCALC_RANDOM_HPP
