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


#include "regcalc/random.hpp"

#include <cmath>

#include "regcalc/errors.hpp"

namespace regcalc {

namespace {
Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }
}  // namespace

CMatrix random_gaussian(Rng& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(idx(rows), idx(cols));
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

CMatrix random_unitary(Rng& rng, std::size_t n) {
  const CMatrix g = random_gaussian(rng, n, n);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(idx(n), idx(n));
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

CVector random_unit_vector(Rng& rng, std::size_t n) {
  CVector v = random_gaussian(rng, n, 1).col(0);
  return v / v.norm();
}

CMatrix random_density(Rng& rng, std::size_t n) {
  const CMatrix g = random_gaussian(rng, n, n);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return CMatrix(0.5 * (rho + rho.adjoint()));
}

Subspace random_subspace(Rng& rng, std::size_t n, std::size_t r) {
  if (r > n) throw DimensionError("random_subspace: rank exceeds ambient dimension");
  if (r == 0) return Subspace::zero(n);
  return Subspace::from_orthonormal(random_unitary(rng, n).leftCols(idx(r)));
}

std::vector<CMatrix> random_kraus(Rng& rng, std::size_t dim, std::size_t count,
                                  bool subchannel) {
  if (count == 0) throw InvalidArgument("random_kraus: need at least one operator");
  // The first dim columns of a (count·dim)-unitary form an isometry whose
  // dim×dim blocks are Kraus operators of a channel.
  const CMatrix w = random_unitary(rng, count * dim).leftCols(idx(dim));
  double scale = 1.0;
  if (subchannel) {
    std::uniform_real_distribution<double> unit(0.05, 1.0);
    scale = std::sqrt(unit(rng));
  }
  std::vector<CMatrix> ops;
  ops.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    ops.emplace_back(scale * w.middleRows(idx(i * dim), idx(dim)));
  }
  return ops;
}

std::size_t random_index(Rng& rng, std::size_t bound) {
  if (bound == 0) throw InvalidArgument("random_index: empty range");
  std::uniform_int_distribution<std::size_t> dist(0, bound - 1);
  return dist(rng);
}

QRegister random_register(Rng& rng, std::size_t m, std::size_t k) {
  return QRegister(m, k, random_unitary(rng, m * k));
}

std::vector<QRegister> random_partition(Rng& rng, std::span<const std::size_t> dims) {
  std::size_t n = 1;
  for (const auto d : dims) n *= d;
  const QRegister memory = iso_register(random_unitary(rng, n));
  std::vector<QRegister> regs;
  regs.reserve(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const QRegister local = iso_register(random_unitary(rng, dims[i]));
    regs.push_back(chain(memory, chain(factor_register(dims, i), local)));
  }
  return regs;
}

}  // namespace regcalc
