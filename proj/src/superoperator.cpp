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

#include "regcalc/superoperator.hpp"

#include <string>

#include "regcalc/errors.hpp"

namespace regcalc {

namespace {
Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }
}  // namespace

CVector vec(const CMatrix& a) {
  return Eigen::Map<const CVector>(a.data(), a.size());
}

CMatrix unvec(const CVector& v, std::size_t rows, std::size_t cols) {
  if (static_cast<std::size_t>(v.size()) != rows * cols) {
    throw DimensionError("unvec: length does not match shape");
  }
  return Eigen::Map<const CMatrix>(v.data(), idx(rows), idx(cols));
}

Superoperator::Superoperator(std::size_t in_dim, std::size_t out_dim,
                             CMatrix action)
    : in_dim_(in_dim), out_dim_(out_dim), action_(std::move(action)) {
  if (in_dim == 0 || out_dim == 0) {
    throw DimensionError("superoperator dimensions must be positive");
  }
  if (static_cast<std::size_t>(action_.rows()) != out_dim * out_dim ||
      static_cast<std::size_t>(action_.cols()) != in_dim * in_dim) {
    throw DimensionError("superoperator action must be " +
                         std::to_string(out_dim * out_dim) + "x" +
                         std::to_string(in_dim * in_dim));
  }
}

Superoperator Superoperator::from_map(
    std::size_t in_dim, std::size_t out_dim,
    const std::function<CMatrix(const CMatrix&)>& f) {
  CMatrix action(idx(out_dim * out_dim), idx(in_dim * in_dim));
  for (std::size_t j = 0; j < in_dim; ++j) {
    for (std::size_t i = 0; i < in_dim; ++i) {
      const CMatrix image = f(matrix_unit(in_dim, i, j));
      if (static_cast<std::size_t>(image.rows()) != out_dim ||
          static_cast<std::size_t>(image.cols()) != out_dim) {
        throw DimensionError("superoperator map returned a matrix of the wrong shape");
      }
      action.col(idx(j * in_dim + i)) = vec(image);
    }
  }
  return Superoperator(in_dim, out_dim, std::move(action));
}

Superoperator Superoperator::identity(std::size_t dim) {
  return Superoperator(dim, dim, regcalc::identity(dim * dim));
}

CMatrix Superoperator::operator()(const CMatrix& a) const {
  if (static_cast<std::size_t>(a.rows()) != in_dim_ ||
      static_cast<std::size_t>(a.cols()) != in_dim_) {
    throw DimensionError("superoperator applied to a matrix of the wrong shape");
  }
  return unvec(action_ * vec(a), out_dim_, out_dim_);
}

CMatrix Superoperator::on_unit(std::size_t i, std::size_t j) const {
  if (i >= in_dim_ || j >= in_dim_) {
    throw DimensionError("matrix unit index out of range");
  }
  return unvec(action_.col(idx(j * in_dim_ + i)), out_dim_, out_dim_);
}

Superoperator compose(const Superoperator& outer, const Superoperator& inner) {
  if (outer.in_dim() != inner.out_dim()) {
    throw DimensionError("compose: inner output dimension " +
                         std::to_string(inner.out_dim()) +
                         " does not match outer input dimension " +
                         std::to_string(outer.in_dim()));
  }
  return Superoperator(inner.in_dim(), outer.out_dim(),
                       outer.action() * inner.action());
}

bool same_action(const Superoperator& a, const Superoperator& b, Tolerance tol) {
  if (a.in_dim() != b.in_dim() || a.out_dim() != b.out_dim()) return false;
  return approx_eq(a.action(), b.action(), tol);
}

}  // namespace regcalc
