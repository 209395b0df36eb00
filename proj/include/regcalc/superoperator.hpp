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

#ifndef REGCALC_SUPEROPERATOR_HPP
#define REGCALC_SUPEROPERATOR_HPP

#include <cstddef>
#include <functional>

#include "regcalc/linalg.hpp"

namespace regcalc {

/// Column-stacking vectorization: vec(A)[j·rows + i] = A[i, j].
CVector vec(const CMatrix& a);
CMatrix unvec(const CVector& v, std::size_t rows, std::size_t cols);

/// An arbitrary linear map from m×m to n×n matrices, stored as the n²×m²
/// matrix acting on vec(a).
class Superoperator {
 public:
  Superoperator(std::size_t in_dim, std::size_t out_dim, CMatrix action);

  /// Tabulates `f` on the matrix units of the input space.
  static Superoperator from_map(std::size_t in_dim, std::size_t out_dim,
                                const std::function<CMatrix(const CMatrix&)>& f);
  static Superoperator identity(std::size_t dim);

  std::size_t in_dim() const { return in_dim_; }
  std::size_t out_dim() const { return out_dim_; }
  const CMatrix& action() const { return action_; }

  CMatrix operator()(const CMatrix& a) const;
  /// Image of the matrix unit E_ij without a full matrix-vector product.
  CMatrix on_unit(std::size_t i, std::size_t j) const;

 private:
  std::size_t in_dim_;
  std::size_t out_dim_;
  CMatrix action_;
};

/// outer ∘ inner.
Superoperator compose(const Superoperator& outer, const Superoperator& inner);

/// Equality of the two maps on every matrix unit.
bool same_action(const Superoperator& a, const Superoperator& b,
                 Tolerance tol = {});

}  // namespace regcalc

#endif  // REGCALC_SUPEROPERATOR_HPP
