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

#include "regcalc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "regcalc/errors.hpp"

namespace regcalc {

namespace {

Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

double scaled(Tolerance tol, double magnitude) {
  return tol.eps() * (1.0 + magnitude);
}

}  // namespace

Tolerance::Tolerance(double eps) : eps_(eps) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw InvalidArgument("tolerance must be a finite non-negative number");
  }
}

CMatrix identity(std::size_t n) { return CMatrix::Identity(idx(n), idx(n)); }

CMatrix matrix_unit(std::size_t n, std::size_t i, std::size_t j) {
  if (i >= n || j >= n) {
    throw DimensionError("matrix unit index out of range");
  }
  CMatrix e = CMatrix::Zero(idx(n), idx(n));
  e(idx(i), idx(j)) = 1.0;
  return e;
}

CVector basis_vector(std::size_t n, std::size_t i) {
  if (i >= n) {
    throw DimensionError("basis index " + std::to_string(i) +
                         " out of range for dimension " + std::to_string(n));
  }
  CVector e = CVector::Zero(idx(n));
  e(idx(i)) = 1.0;
  return e;
}

CMatrix outer(const CVector& psi, const CVector& phi) {
  return psi * phi.adjoint();
}

CMatrix butterfly(const CVector& psi) { return psi * psi.adjoint(); }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const Eigen::Index rb = b.rows();
  const Eigen::Index cb = b.cols();
  CMatrix out(a.rows() * rb, a.cols() * cb);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix kron_all(std::span<const CMatrix> factors) {
  CMatrix acc = CMatrix::Identity(1, 1);
  for (const auto& f : factors) acc = kron(acc, f);
  return acc;
}

CMatrix tensor_permutation(std::span<const std::size_t> dims,
                           std::span<const std::size_t> order) {
  const std::size_t r = dims.size();
  if (order.size() != r) {
    throw DimensionError("tensor_permutation: order has wrong length");
  }
  std::vector<bool> seen(r, false);
  for (std::size_t s : order) {
    if (s >= r || seen[s]) {
      throw InvalidArgument("tensor_permutation: order is not a permutation");
    }
    seen[s] = true;
  }
  std::size_t n = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw DimensionError("tensor_permutation: zero dimension");
    n *= d;
  }
  CMatrix p = CMatrix::Zero(idx(n), idx(n));
  std::vector<std::size_t> digits(r);
  for (std::size_t in = 0; in < n; ++in) {
    std::size_t rest = in;
    for (std::size_t t = r; t-- > 0;) {
      digits[t] = rest % dims[t];
      rest /= dims[t];
    }
    std::size_t out = 0;
    for (std::size_t s = 0; s < r; ++s) {
      out = out * dims[order[s]] + digits[order[s]];
    }
    p(idx(out), idx(in)) = 1.0;
  }
  return p;
}

bool is_finite(const CMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) {
        return false;
      }
    }
  }
  return true;
}

double max_abs(const CMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double operator_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues()(0);
}

bool approx_eq(const CMatrix& a, const CMatrix& b, Tolerance tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("approx_eq: shape mismatch " +
                         std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
  if (a.size() == 0) return true;
  const double mag = std::max(max_abs(a), max_abs(b));
  return max_abs(a - b) <= scaled(tol, mag);
}

bool is_positive(const CMatrix& a, Tolerance tol) {
  if (a.rows() != a.cols()) return false;
  if (!approx_eq(a, a.adjoint(), tol)) return false;
  if (a.size() == 0) return true;
  const CMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -scaled(tol, max_abs(a));
}

OperatorClass classify_operator(const CMatrix& a, Tolerance tol) {
  OperatorClass c;
  const CMatrix ata = a.adjoint() * a;
  c.isometry_cols = approx_eq(ata, identity(static_cast<std::size_t>(a.cols())), tol);
  if (a.rows() != a.cols()) return c;
  const auto n = static_cast<std::size_t>(a.rows());
  c.unitary = c.isometry_cols && approx_eq(a * a.adjoint(), identity(n), tol);
  c.hermitian = approx_eq(a, a.adjoint(), tol);
  c.projector = c.hermitian && approx_eq(a * a, a, tol);
  c.positive = c.hermitian && is_positive(a, tol);
  c.density = c.positive && std::abs(a.trace() - Complex(1.0)) <= tol.eps();
  return c;
}

// ---------------------------------------------------------------------------

Subspace Subspace::zero(std::size_t ambient_dim) {
  return Subspace(ambient_dim, CMatrix::Zero(idx(ambient_dim), 0));
}

Subspace Subspace::full(std::size_t ambient_dim) {
  return Subspace(ambient_dim, identity(ambient_dim));
}

Subspace Subspace::from_orthonormal(CMatrix basis, Tolerance tol) {
  const auto n = static_cast<std::size_t>(basis.rows());
  if (basis.cols() > basis.rows()) {
    throw InvalidArgument("subspace basis has more columns than rows");
  }
  if (basis.cols() > 0 &&
      !approx_eq(basis.adjoint() * basis,
                 identity(static_cast<std::size_t>(basis.cols())), tol)) {
    throw InvalidArgument("subspace basis is not orthonormal");
  }
  return Subspace(n, std::move(basis));
}

Subspace Subspace::span(const CMatrix& vectors, Tolerance tol) {
  return orthonormal_range_basis(vectors, tol);
}

CMatrix Subspace::projector() const { return basis_ * basis_.adjoint(); }

Subspace orthonormal_range_basis(const CMatrix& a, Tolerance tol) {
  const auto n = static_cast<std::size_t>(a.rows());
  if (a.cols() == 0 || a.rows() == 0) return Subspace::zero(n);
  const double scale = std::max(1.0, a.colwise().norm().maxCoeff());
  const double threshold = tol.eps() * scale;

  CMatrix residual = a;
  std::vector<CVector> picked;
  const Eigen::Index max_rank = std::min(a.rows(), a.cols());
  for (Eigen::Index step = 0; step < max_rank; ++step) {
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index j = 0; j < residual.cols(); ++j) {
      const double nj = residual.col(j).norm();
      if (nj > best) {
        best = nj;
        pivot = j;
      }
    }
    if (best <= threshold) break;
    CVector v = residual.col(pivot);
    // Second pass of orthogonalization against the accepted vectors.
    for (const auto& q : picked) v -= q * q.dot(v);
    const double nv = v.norm();
    if (nv <= threshold) break;
    CVector q = v / nv;
    residual -= q * (q.adjoint() * residual);
    picked.push_back(std::move(q));
  }
  CMatrix basis(a.rows(), static_cast<Eigen::Index>(picked.size()));
  for (std::size_t j = 0; j < picked.size(); ++j) basis.col(idx(j)) = picked[j];
  return Subspace::from_orthonormal(std::move(basis), Tolerance(1e-8));
}

namespace {

void require_same_ambient(const Subspace& s, const Subspace& t,
                          const char* what) {
  if (s.ambient_dim() != t.ambient_dim()) {
    throw DimensionError(std::string(what) + ": ambient dimensions differ (" +
                         std::to_string(s.ambient_dim()) + " vs " +
                         std::to_string(t.ambient_dim()) + ")");
  }
}

}  // namespace

bool contains(const Subspace& s, const Subspace& t, Tolerance tol) {
  require_same_ambient(s, t, "contains");
  if (t.rank() == 0) return true;
  const CMatrix& bt = t.basis();
  return approx_eq(s.projector() * bt, bt, tol);
}

bool contains_vector(const Subspace& s, const CVector& v, Tolerance tol) {
  if (static_cast<std::size_t>(v.size()) != s.ambient_dim()) {
    throw DimensionError("contains_vector: dimension mismatch");
  }
  return approx_eq(s.projector() * v, v, tol);
}

bool same_subspace(const Subspace& s, const Subspace& t, Tolerance tol) {
  require_same_ambient(s, t, "same_subspace");
  return s.rank() == t.rank() && approx_eq(s.projector(), t.projector(), tol);
}

Subspace intersect(const Subspace& s, const Subspace& t, Tolerance tol) {
  require_same_ambient(s, t, "intersect");
  const std::size_t n = s.ambient_dim();
  if (s.rank() == 0 || t.rank() == 0) return Subspace::zero(n);
  // Kernel of the stacked system [I − P_S; I − P_T], i.e. of the PSD sum
  // (I − P_S) + (I − P_T).
  const CMatrix q = (identity(n) - s.projector()) + (identity(n) - t.projector());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (q + q.adjoint()));
  const auto& evals = es.eigenvalues();
  std::vector<Eigen::Index> cols;
  for (Eigen::Index j = 0; j < evals.size(); ++j) {
    if (evals(j) <= tol.eps()) cols.push_back(j);
  }
  CMatrix kernel(idx(n), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    kernel.col(idx(c)) = es.eigenvectors().col(cols[c]);
  }
  // Re-derive the basis from the projector so that it only depends on the
  // subspace, not on the eigensolver's choice of vectors.
  return orthonormal_range_basis(kernel * kernel.adjoint(), tol);
}

Subspace sum(const Subspace& s, const Subspace& t, Tolerance tol) {
  require_same_ambient(s, t, "sum");
  CMatrix both(idx(s.ambient_dim()), idx(s.rank() + t.rank()));
  both << s.basis(), t.basis();
  return orthonormal_range_basis(both, tol);
}

Subspace orthogonal_complement(const Subspace& s, Tolerance tol) {
  return orthonormal_range_basis(identity(s.ambient_dim()) - s.projector(), tol);
}

Subspace image(const CMatrix& a, const Subspace& s, Tolerance tol) {
  if (static_cast<std::size_t>(a.cols()) != s.ambient_dim()) {
    throw DimensionError("image: operator does not act on the subspace's space");
  }
  if (s.rank() == 0) return Subspace::zero(static_cast<std::size_t>(a.rows()));
  return orthonormal_range_basis(a * s.basis(), tol);
}

CMatrix partial_trace_second(const CMatrix& a, std::size_t m, std::size_t k) {
  if (a.rows() != a.cols() || static_cast<std::size_t>(a.rows()) != m * k) {
    throw DimensionError("partial_trace_second: expected a square matrix of side " +
                         std::to_string(m * k));
  }
  CMatrix out = CMatrix::Zero(idx(m), idx(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      Complex acc = 0.0;
      for (std::size_t p = 0; p < k; ++p) acc += a(idx(i * k + p), idx(j * k + p));
      out(idx(i), idx(j)) = acc;
    }
  }
  return out;
}

}  // namespace regcalc
