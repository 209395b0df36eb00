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

#include "regcalc/qregister.hpp"

#include <array>
#include <string>

#include "regcalc/errors.hpp"

namespace regcalc {

namespace {

Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

std::string dims_str(std::size_t a, std::size_t b) {
  return std::to_string(a) + " vs " + std::to_string(b);
}

// Images of all matrix units, indexed i·m + j.
std::vector<CMatrix> unit_images(const QRegister& f) {
  const std::size_t m = f.domain_dim();
  std::vector<CMatrix> out;
  out.reserve(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) out.push_back(f.apply(matrix_unit(m, i, j)));
  }
  return out;
}

}  // namespace

QRegister::QRegister(std::size_t m, std::size_t k, CMatrix u, Tolerance tol)
    : m_(m), k_(k), u_(std::move(u)) {
  if (m == 0 || k == 0) {
    throw DimensionError("register dimensions must be positive");
  }
  const auto n = static_cast<Eigen::Index>(m * k);
  if (u_.rows() != n || u_.cols() != n) {
    throw DimensionError("canonical unitary must be " + std::to_string(n) + "x" +
                         std::to_string(n));
  }
  if (!is_finite(u_) || !classify_operator(u_, tol).unitary) {
    throw InvalidArgument("canonical matrix U is not unitary");
  }
}

CMatrix QRegister::apply(const CMatrix& a) const {
  if (a.rows() != idx(m_) || a.cols() != idx(m_)) {
    throw DimensionError("register of domain dimension " + std::to_string(m_) +
                         " applied to a " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " matrix");
  }
  if (k_ == 1) return u_ * a * u_.adjoint();
  return u_ * kron(a, identity(k_)) * u_.adjoint();
}

Superoperator QRegister::superoperator() const {
  return Superoperator::from_map(m_, codomain_dim(),
                                 [this](const CMatrix& a) { return apply(a); });
}

// ---------------------------------------------------------------------------

QRegister id_register(std::size_t m) { return QRegister(m, 1, identity(m)); }

QRegister iso_register(const CMatrix& u, Tolerance tol) {
  if (u.rows() != u.cols() || u.rows() == 0) {
    throw DimensionError("iso register needs a non-empty square matrix");
  }
  if (!classify_operator(u, tol).unitary) {
    throw InvalidArgument("iso register needs a unitary matrix");
  }
  return QRegister(static_cast<std::size_t>(u.rows()), 1, u, tol);
}

QRegister fst_register(std::size_t m, std::size_t k) {
  return QRegister(m, k, identity(m * k));
}

QRegister snd_register(std::size_t m, std::size_t k) {
  const std::array<std::size_t, 2> dims{k, m};
  const std::array<std::size_t, 2> order{1, 0};
  return QRegister(k, m, tensor_permutation(dims, order));
}

QRegister unit_register(std::size_t n) { return QRegister(1, n, identity(n)); }

QRegister swap_register(std::size_t ma, std::size_t mb) {
  const std::array<std::size_t, 2> dims{ma, mb};
  const std::array<std::size_t, 2> order{1, 0};
  return QRegister(ma * mb, 1, tensor_permutation(dims, order));
}

QRegister assoc_register(std::size_t ma, std::size_t mb, std::size_t mc) {
  return id_register(ma * mb * mc);
}

QRegister assoc_inv_register(std::size_t ma, std::size_t mb, std::size_t mc) {
  return id_register(ma * mb * mc);
}

QRegister factor_register(std::span<const std::size_t> dims, std::size_t which) {
  if (which >= dims.size()) {
    throw DimensionError("factor index out of range");
  }
  // Input order: the selected factor first, then the others in layout order.
  std::vector<std::size_t> in_dims;
  in_dims.push_back(dims[which]);
  std::size_t rest = 1;
  for (std::size_t t = 0; t < dims.size(); ++t) {
    if (t == which) continue;
    in_dims.push_back(dims[t]);
    rest *= dims[t];
  }
  std::vector<std::size_t> order(dims.size());
  for (std::size_t t = 0; t < dims.size(); ++t) {
    order[t] = t == which ? 0 : (t < which ? t + 1 : t);
  }
  return QRegister(dims[which], rest, tensor_permutation(in_dims, order));
}

// ---------------------------------------------------------------------------

QRegister chain(const QRegister& f, const QRegister& g) {
  if (f.domain_dim() != g.codomain_dim()) {
    throw DimensionError("chain: domain of outer register does not match "
                         "codomain of inner register (" +
                         dims_str(f.domain_dim(), g.codomain_dim()) + ")");
  }
  CMatrix u = f.unitary() * kron(g.unitary(), identity(f.env_dim()));
  return QRegister(g.domain_dim(), g.env_dim() * f.env_dim(), std::move(u));
}

bool compatible(const QRegister& f, const QRegister& g, Tolerance tol) {
  if (f.codomain_dim() != g.codomain_dim()) {
    throw DimensionError("compatible: codomain mismatch (" +
                         dims_str(f.codomain_dim(), g.codomain_dim()) + ")");
  }
  // The commutant of {U(a ⊗ I_k)U†} is {U(I_m ⊗ c)U†}, so G is compatible
  // with F iff every U† G(E_ij) U has that form.
  const std::size_t m = f.domain_dim();
  const auto k = idx(f.env_dim());
  const CMatrix& u = f.unitary();
  for (const auto& b : unit_images(g)) {
    const CMatrix w = u.adjoint() * b * u;
    CMatrix c = CMatrix::Zero(k, k);
    for (std::size_t i = 0; i < m; ++i) c += w.block(idx(i) * k, idx(i) * k, k, k);
    c /= static_cast<double>(m);
    if (!approx_eq(w, kron(identity(m), c), tol)) return false;
  }
  return true;
}

Superoperator bilinear_pair_map(const QRegister& f, const QRegister& g) {
  if (f.codomain_dim() != g.codomain_dim()) {
    throw DimensionError("pair: codomain mismatch (" +
                         dims_str(f.codomain_dim(), g.codomain_dim()) + ")");
  }
  const std::size_t mf = f.domain_dim();
  const std::size_t mg = g.domain_dim();
  const std::size_t m = mf * mg;
  const std::size_t n = f.codomain_dim();
  const auto fs = unit_images(f);
  const auto gs = unit_images(g);
  CMatrix action(idx(n * n), idx(m * m));
  // Column of E_(i·mg+k),(j·mg+l) = E_ij ⊗ E_kl.
  for (std::size_t i = 0; i < mf; ++i) {
    for (std::size_t j = 0; j < mf; ++j) {
      for (std::size_t k = 0; k < mg; ++k) {
        for (std::size_t l = 0; l < mg; ++l) {
          const std::size_t row = i * mg + k;
          const std::size_t col = j * mg + l;
          const CMatrix prod = fs[i * mf + j] * gs[k * mg + l];
          action.col(idx(col * m + row)) = vec(prod);
        }
      }
    }
  }
  return Superoperator(m, n, std::move(action));
}

QRegister pair(const QRegister& f, const QRegister& g, Tolerance tol) {
  if (!compatible(f, g, tol)) {
    throw IncompatibleRegisters("pair: registers are not compatible");
  }
  return extract_canonical(bilinear_pair_map(f, g), tol);
}

QRegister pair_all(std::span<const QRegister> regs, Tolerance tol) {
  if (regs.empty()) throw InvalidArgument("pair_all: empty register list");
  QRegister acc = regs.back();
  for (std::size_t t = regs.size() - 1; t-- > 0;) acc = pair(regs[t], acc, tol);
  return acc;
}

QRegister tensor_registers(const QRegister& f, const QRegister& g) {
  const std::array<std::size_t, 4> dims{f.domain_dim(), g.domain_dim(),
                                        f.env_dim(), g.env_dim()};
  const std::array<std::size_t, 4> order{0, 2, 1, 3};
  CMatrix u = kron(f.unitary(), g.unitary()) * tensor_permutation(dims, order);
  return QRegister(f.domain_dim() * g.domain_dim(), f.env_dim() * g.env_dim(),
                   std::move(u));
}

// ---------------------------------------------------------------------------

HomomorphismReport validate_homomorphism(const Superoperator& s, Tolerance tol) {
  HomomorphismReport report;
  const std::size_t m = s.in_dim();
  const std::size_t n = s.out_dim();
  std::vector<CMatrix> img(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) img[i * m + j] = s.on_unit(i, j);
  }
  CMatrix one = CMatrix::Zero(idx(n), idx(n));
  for (std::size_t i = 0; i < m; ++i) one += img[i * m + i];
  if (!approx_eq(one, identity(n), tol)) {
    report.unital = false;
    report.failures.push_back("F(1) != 1");
  }
  const CMatrix zero = CMatrix::Zero(idx(n), idx(n));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t l = 0; l < m; ++l) {
          // E_ij E_kl = δ_jk E_il
          const CMatrix& expected = j == k ? img[i * m + l] : zero;
          if (!approx_eq(img[i * m + j] * img[k * m + l], expected, tol)) {
            report.multiplicative = false;
            report.failures.push_back(
                "F(E_" + std::to_string(i) + std::to_string(j) + " E_" +
                std::to_string(k) + std::to_string(l) + ") != F(E_" +
                std::to_string(i) + std::to_string(j) + ") F(E_" +
                std::to_string(k) + std::to_string(l) + ")");
          }
        }
      }
      if (!approx_eq(img[j * m + i], img[i * m + j].adjoint(), tol)) {
        report.adjoint_preserving = false;
        report.failures.push_back("F(E_" + std::to_string(i) + std::to_string(j) +
                                  "^*) != F(E_" + std::to_string(i) +
                                  std::to_string(j) + ")^*");
      }
    }
  }
  return report;
}

namespace {

[[noreturn]] void reject(const Superoperator& s, Tolerance tol,
                         const std::string& fallback) {
  const auto report = validate_homomorphism(s, tol);
  if (!report.failures.empty()) {
    std::string reason;
    if (!report.unital) reason = "non-unital";
    else if (!report.multiplicative) reason = "non-multiplicative";
    else reason = "adjoint-violating";
    throw NotARegister(reason + ": " + report.failures.front());
  }
  throw NotARegister(fallback);
}

}  // namespace

QRegister extract_canonical(const Superoperator& s, Tolerance tol) {
  const std::size_t m = s.in_dim();
  const std::size_t n = s.out_dim();
  if (n % m != 0) {
    throw NotARegister("domain dimension " + std::to_string(m) +
                       " does not divide codomain dimension " + std::to_string(n));
  }
  const std::size_t k = n / m;

  CMatrix one = CMatrix::Zero(idx(n), idx(n));
  for (std::size_t i = 0; i < m; ++i) one += s.on_unit(i, i);
  if (!approx_eq(one, identity(n), tol)) {
    throw NotARegister("non-unital: F(1) != 1");
  }

  const CMatrix p = s.on_unit(0, 0);
  if (!classify_operator(p, tol).projector) {
    reject(s, tol, "F(E_00) is not a projector");
  }
  const Subspace range = orthonormal_range_basis(p, tol);
  if (range.rank() != k) {
    reject(s, tol, "F(E_00) has rank " + std::to_string(range.rank()) +
                       ", expected " + std::to_string(k));
  }

  // U (e_i ⊗ f_j) = F(E_i0) v_j
  CMatrix u(idx(n), idx(n));
  for (std::size_t i = 0; i < m; ++i) {
    const CMatrix col_block = s.on_unit(i, 0) * range.basis();
    for (std::size_t j = 0; j < k; ++j) u.col(idx(i * k + j)) = col_block.col(idx(j));
  }
  if (!classify_operator(u, tol).unitary) {
    reject(s, tol, "assembled U is not unitary");
  }
  // Agreement on every matrix unit pins the map down completely.
  const CMatrix id_k = identity(k);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const CMatrix expect = u * kron(matrix_unit(m, i, j), id_k) * u.adjoint();
      if (!approx_eq(s.on_unit(i, j), expect, tol)) {
        reject(s, tol, "map does not agree with U (a ⊗ 1) U*");
      }
    }
  }
  return QRegister(m, k, std::move(u), tol);
}

// ---------------------------------------------------------------------------

QRegister complement(const QRegister& f) {
  const std::array<std::size_t, 2> dims{f.env_dim(), f.domain_dim()};
  const std::array<std::size_t, 2> order{1, 0};
  CMatrix u = f.unitary() * tensor_permutation(dims, order);
  return QRegister(f.env_dim(), f.domain_dim(), std::move(u));
}

std::optional<IsoForm> as_iso(const QRegister& f) {
  if (f.env_dim() != 1) return std::nullopt;
  return IsoForm{f.unitary(), QRegister(f.domain_dim(), 1, f.unitary().adjoint())};
}

std::optional<QRegister> equivalent(const QRegister& f, const QRegister& g,
                                    Tolerance tol) {
  if (f.codomain_dim() != g.codomain_dim()) {
    throw DimensionError("equivalent: codomain mismatch (" +
                         dims_str(f.codomain_dim(), g.codomain_dim()) + ")");
  }
  if (f.domain_dim() != g.domain_dim()) return std::nullopt;
  const std::size_t m = f.domain_dim();
  const std::size_t k = f.env_dim();
  const CMatrix& u = f.unitary();
  const auto candidate = Superoperator::from_map(m, m, [&](const CMatrix& b) {
    return CMatrix(partial_trace_second(u.adjoint() * g.apply(b) * u, m, k) /
                   static_cast<double>(k));
  });
  try {
    QRegister iso = extract_canonical(candidate, tol);
    if (iso.env_dim() != 1) return std::nullopt;
    if (!same_action(chain(f, iso), g, tol)) return std::nullopt;
    return iso;
  } catch (const NotARegister&) {
    return std::nullopt;
  }
}

bool is_complements(const QRegister& f, const QRegister& g, Tolerance tol) {
  if (!compatible(f, g, tol)) return false;
  return as_iso(pair(f, g, tol)).has_value();
}

bool is_partition(std::span<const QRegister> regs, Tolerance tol) {
  if (regs.empty()) return false;
  for (std::size_t i = 0; i < regs.size(); ++i) {
    for (std::size_t j = i + 1; j < regs.size(); ++j) {
      if (!compatible(regs[i], regs[j], tol)) return false;
    }
  }
  return as_iso(pair_all(regs, tol)).has_value();
}

bool is_unit_register(const QRegister& f, Tolerance tol) {
  return is_complements(f, id_register(f.codomain_dim()), tol);
}

bool same_action(const QRegister& f, const QRegister& g, Tolerance tol) {
  if (f.domain_dim() != g.domain_dim() || f.codomain_dim() != g.codomain_dim()) {
    return false;
  }
  const std::size_t m = f.domain_dim();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const CMatrix e = matrix_unit(m, i, j);
      if (!approx_eq(f.apply(e), g.apply(e), tol)) return false;
    }
  }
  return true;
}

}  // namespace regcalc
