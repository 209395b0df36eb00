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

// Dense complex matrices and closed subspaces with explicit tolerances.
//
// All quantum objects in the library (operators, unitaries, projectors,
// density operators, subspaces) are built on top of these primitives. The
// dimensions involved are tiny (at most a few dozen), so everything is
// dense and nothing is cached.

#ifndef REGCALC_LINALG_HPP
#define REGCALC_LINALG_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace regcalc {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kDefaultEps = 1e-9;

/// Absolute slack used by every numerical comparison. Non-negative and finite.
class Tolerance {
 public:
  constexpr Tolerance() = default;
  explicit Tolerance(double eps);
  double eps() const { return eps_; }

 private:
  double eps_ = kDefaultEps;
};

// ---------------------------------------------------------------------------
// Constructors for common matrices.

CMatrix identity(std::size_t n);
/// n×n matrix with a single 1 at (i, j).
CMatrix matrix_unit(std::size_t n, std::size_t i, std::size_t j);
CVector basis_vector(std::size_t n, std::size_t i);
/// |psi><phi|
CMatrix outer(const CVector& psi, const CVector& phi);
/// |psi><psi|
CMatrix butterfly(const CVector& psi);

/// Kronecker product. Entry (i·rB + p, j·cB + q) is A[i,j]·B[p,q].
CMatrix kron(const CMatrix& a, const CMatrix& b);
/// Left fold of kron; the empty product is the 1×1 identity.
CMatrix kron_all(std::span<const CMatrix> factors);

/// Permutation of tensor factors: P(v_0 ⊗ … ⊗ v_{r−1}) = v_{order[0]} ⊗ … ⊗
/// v_{order[r−1]} where v_t lives in a space of dimension dims[t].
CMatrix tensor_permutation(std::span<const std::size_t> dims,
                           std::span<const std::size_t> order);

// ---------------------------------------------------------------------------
// Comparisons and scalar summaries.

bool is_finite(const CMatrix& a);
double max_abs(const CMatrix& a);
/// Largest singular value.
double operator_norm(const CMatrix& a);

/// max |A − B| ≤ eps·(1 + max(max|A|, max|B|)). Throws DimensionError when
/// the shapes differ.
bool approx_eq(const CMatrix& a, const CMatrix& b, Tolerance tol = {});

struct OperatorClass {
  bool unitary = false;
  bool hermitian = false;
  bool projector = false;
  bool positive = false;
  bool density = false;
  bool isometry_cols = false;
};

/// Structural predicates of an operator. Non-square inputs only ever report
/// isometry_cols.
OperatorClass classify_operator(const CMatrix& a, Tolerance tol = {});

bool is_positive(const CMatrix& a, Tolerance tol = {});

// ---------------------------------------------------------------------------
// Subspaces.

/// A closed subspace of C^n held as an orthonormal basis (n × r, r may be 0).
class Subspace {
 public:
  static Subspace zero(std::size_t ambient_dim);
  static Subspace full(std::size_t ambient_dim);
  /// Adopts the given columns; throws InvalidArgument unless they are
  /// orthonormal within tol.
  static Subspace from_orthonormal(CMatrix basis, Tolerance tol = {});
  /// Span of the columns of `vectors`.
  static Subspace span(const CMatrix& vectors, Tolerance tol = {});

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t rank() const { return static_cast<std::size_t>(basis_.cols()); }
  const CMatrix& basis() const { return basis_; }
  CMatrix projector() const;

 private:
  Subspace(std::size_t ambient_dim, CMatrix basis)
      : ambient_dim_(ambient_dim), basis_(std::move(basis)) {}

  std::size_t ambient_dim_;
  CMatrix basis_;
};

/// Orthonormal basis of the column space of `a`, by Gram-Schmidt with
/// largest-residual column pivoting (ties go to the lowest index). Columns
/// whose residual falls below eps·max(1, largest column norm) are dropped.
Subspace orthonormal_range_basis(const CMatrix& a, Tolerance tol = {});

/// T ⊆ S.
bool contains(const Subspace& s, const Subspace& t, Tolerance tol = {});
bool contains_vector(const Subspace& s, const CVector& v, Tolerance tol = {});
bool same_subspace(const Subspace& s, const Subspace& t, Tolerance tol = {});
Subspace intersect(const Subspace& s, const Subspace& t, Tolerance tol = {});
/// Smallest subspace containing both.
Subspace sum(const Subspace& s, const Subspace& t, Tolerance tol = {});
Subspace orthogonal_complement(const Subspace& s, Tolerance tol = {});
/// A·S, the image of a subspace under an operator.
Subspace image(const CMatrix& a, const Subspace& s, Tolerance tol = {});

// ---------------------------------------------------------------------------

/// Trace over the second factor of C^m ⊗ C^k:
/// result[i,j] = Σ_p A[i·k+p, j·k+p].
CMatrix partial_trace_second(const CMatrix& a, std::size_t m, std::size_t k);

}  // namespace regcalc

#endif  // REGCALC_LINALG_HPP
