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


#include "regcalc/lifting.hpp"

#include <algorithm>
#include <cmath>

#include "regcalc/errors.hpp"

namespace regcalc {

namespace {

Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

// Slack for re-validating objects assembled from validated inputs.
const Tolerance kRevalidate(1e-7);

void require_square(const CMatrix& a, std::size_t dim, const char* what) {
  if (a.rows() != idx(dim) || a.cols() != idx(dim)) {
    throw DimensionError(std::string(what) + ": expected a " + std::to_string(dim) + "x" +
                         std::to_string(dim) + " matrix");
  }
}

// The joint register ⟨F_1, …, F_n⟩ of a partition.
QRegister joint_register(std::span<const QRegister> regs, Tolerance tol) {
  if (regs.empty()) throw InvalidArgument("empty register list");
  for (const auto& r : regs) {
    if (r.codomain_dim() != regs.front().codomain_dim()) {
      throw DimensionError("registers do not share a codomain");
    }
  }
  for (std::size_t i = 0; i < regs.size(); ++i) {
    for (std::size_t j = i + 1; j < regs.size(); ++j) {
      if (!compatible(regs[i], regs[j], tol)) {
        throw InvalidArgument("registers are not a partition (not pairwise compatible)");
      }
    }
  }
  QRegister joint = pair_all(regs, tol);
  if (!as_iso(joint)) {
    throw InvalidArgument("registers are not a partition (they do not cover the memory)");
  }
  return joint;
}

CMatrix joint_product(const QRegister& joint, std::span<const QRegister> regs,
                      std::span<const CMatrix> ops) {
  if (ops.size() != regs.size()) {
    throw DimensionError("number of operators does not match number of registers");
  }
  for (std::size_t i = 0; i < regs.size(); ++i) {
    require_square(ops[i], regs[i].domain_dim(), "lifted operand");
  }
  return joint.apply(kron_all(ops));
}

// vec(M X M†) = (conj(M) ⊗ M) vec(X) under column stacking.
CMatrix conjugation_action(const CMatrix& m) { return kron(m.conjugate(), m); }

CMatrix kraus_action(const std::vector<CMatrix>& ops) {
  const auto d = ops.front().rows();
  CMatrix action = CMatrix::Zero(d * d, d * d);
  for (const auto& m : ops) action += conjugation_action(m);
  return action;
}

// Q with Q_ji = tr S(E_ij); for Kraus maps Q = Σ M_i† M_i.
CMatrix trace_functional(const Superoperator& s) {
  const std::size_t d = s.in_dim();
  CMatrix q(idx(d), idx(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) q(idx(j), idx(i)) = s.on_unit(i, j).trace();
  }
  return q;
}

bool trace_nonincreasing(const CMatrix& q, Tolerance tol) {
  return is_positive(CMatrix(identity(static_cast<std::size_t>(q.rows())) - q), tol);
}

}  // namespace

// ---------------------------------------------------------------------------

DensityOp::DensityOp(CMatrix rho, bool subnormalized, Tolerance tol)
    : rho_(std::move(rho)), subnormalized_(subnormalized) {
  if (rho_.rows() != rho_.cols() || rho_.rows() == 0) {
    throw DimensionError("density operator must be a non-empty square matrix");
  }
  if (!is_finite(rho_) || !is_positive(rho_, tol)) {
    throw InvalidArgument("density operator is not positive");
  }
  const double tr = rho_.trace().real();
  const bool ok = subnormalized ? tr <= 1.0 + tol.eps() : std::abs(tr - 1.0) <= tol.eps();
  if (!ok) throw InvalidArgument("density operator has trace " + std::to_string(tr));
}

bool is_pure_state(const CVector& psi, Tolerance tol) {
  return psi.allFinite() && std::abs(psi.norm() - 1.0) <= tol.eps();
}

Subspace lift_subspace(const QRegister& f, const Subspace& s, Tolerance tol) {
  if (s.ambient_dim() != f.domain_dim()) {
    throw DimensionError("lift_subspace: subspace lives in dimension " +
                         std::to_string(s.ambient_dim()) + ", register domain is " +
                         std::to_string(f.domain_dim()));
  }
  return orthonormal_range_basis(f.apply(s.projector()), tol);
}

CMatrix lift_mixed(std::span<const QRegister> regs, std::span<const CMatrix> ops,
                   Tolerance tol) {
  return joint_product(joint_register(regs, tol), regs, ops);
}

CVector eta(std::size_t dim) { return basis_vector(dim, 0); }

CVector xi(const CMatrix& b, Tolerance tol) {
  const double floor = tol.eps() * (1.0 + max_abs(b));
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    const CVector v = b.col(j);
    const double nv = v.norm();
    if (nv > floor) return v / nv;
  }
  throw InvalidArgument("xi: operator is zero");
}

CVector lift_pure(std::span<const QRegister> regs, std::span<const CVector> psis,
                  Tolerance tol) {
  if (psis.size() != regs.size()) {
    throw DimensionError("number of states does not match number of registers");
  }
  const QRegister joint = joint_register(regs, tol);
  std::vector<CMatrix> lifted;
  std::vector<CMatrix> anchors;
  for (std::size_t i = 0; i < regs.size(); ++i) {
    const std::size_t m = regs[i].domain_dim();
    if (psis[i].size() != idx(m)) {
      throw DimensionError("state " + std::to_string(i) + " has the wrong dimension");
    }
    const CVector e = eta(m);
    lifted.push_back(outer(psis[i], e));
    anchors.push_back(outer(e, e));
  }
  const CMatrix b = joint_product(joint, regs, anchors);
  return joint_product(joint, regs, lifted) * xi(b, tol);
}

bool is_eta_regular(const QRegister& f, Tolerance tol) {
  const std::size_t m = f.domain_dim();
  const std::size_t k = f.env_dim();
  // ⟨F,∁F⟩ acts as conjugation by U, so its inverse applied to η_B η_B† is
  // U† η_B η_B† U.
  const CVector w = f.unitary().adjoint() * eta(f.codomain_dim());
  const CMatrix c_prime = outer(w, w);
  const CMatrix c = c_prime.topLeftCorner(idx(k), idx(k));
  return approx_eq(c_prime, kron(matrix_unit(m, 0, 0), c), tol);
}

// ---------------------------------------------------------------------------

CMatrix choi_matrix(const Superoperator& s) {
  const std::size_t m = s.in_dim();
  const std::size_t n = s.out_dim();
  CMatrix out = CMatrix::Zero(idx(m * n), idx(m * n));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      out.block(idx(i * n), idx(j * n), idx(n), idx(n)) = s.on_unit(i, j);
    }
  }
  return out;
}

bool is_completely_positive(const Superoperator& s, Tolerance tol) {
  return is_positive(choi_matrix(s), tol);
}

QChannel::QChannel(std::size_t dim, std::optional<std::vector<CMatrix>> kraus,
                   Superoperator s)
    : dim_(dim), kraus_(std::move(kraus)), super_(std::move(s)) {}

QChannel QChannel::from_kraus(std::vector<CMatrix> ops, Tolerance tol) {
  if (ops.empty()) throw InvalidArgument("Kraus channel needs at least one operator");
  const auto d = static_cast<std::size_t>(ops.front().rows());
  CMatrix q = CMatrix::Zero(idx(d), idx(d));
  for (const auto& m : ops) {
    require_square(m, d, "Kraus operator");
    if (!is_finite(m)) throw InvalidArgument("Kraus operator has non-finite entries");
    q += m.adjoint() * m;
  }
  if (!trace_nonincreasing(q, tol)) {
    throw InvalidArgument("Kraus operators do not satisfy sum M*M <= 1");
  }
  Superoperator s(d, d, kraus_action(ops));
  return QChannel(d, std::move(ops), std::move(s));
}

QChannel QChannel::from_superoperator(Superoperator s, Tolerance tol) {
  if (s.in_dim() != s.out_dim()) {
    throw DimensionError("channel superoperator must map a space to itself");
  }
  if (!is_completely_positive(s, tol)) {
    throw InvalidArgument("superoperator is not completely positive");
  }
  if (!trace_nonincreasing(trace_functional(s), tol)) {
    throw InvalidArgument("superoperator increases trace");
  }
  const std::size_t d = s.in_dim();
  return QChannel(d, std::nullopt, std::move(s));
}

QChannel QChannel::identity(std::size_t dim) {
  return QChannel(dim, std::vector<CMatrix>{regcalc::identity(dim)},
                  Superoperator::identity(dim));
}

const std::vector<CMatrix>& QChannel::kraus() const {
  if (!kraus_) throw InvalidArgument("channel has no Kraus form");
  return *kraus_;
}

CMatrix QChannel::operator()(const CMatrix& rho) const {
  require_square(rho, dim_, "channel input");
  if (kraus_) {
    CMatrix out = CMatrix::Zero(idx(dim_), idx(dim_));
    for (const auto& m : *kraus_) out += m * rho * m.adjoint();
    return out;
  }
  return super_(rho);
}

bool QChannel::trace_preserving(Tolerance tol) const {
  return approx_eq(trace_functional(super_), regcalc::identity(dim_), tol);
}

QChannel compose(const QChannel& outer, const QChannel& inner) {
  if (outer.dim() != inner.dim()) throw DimensionError("compose: channel dimensions differ");
  if (outer.has_kraus() && inner.has_kraus()) {
    std::vector<CMatrix> ops;
    for (const auto& a : outer.kraus()) {
      for (const auto& b : inner.kraus()) ops.emplace_back(a * b);
    }
    return QChannel::from_kraus(std::move(ops), kRevalidate);
  }
  return QChannel::from_superoperator(compose(outer.superoperator(), inner.superoperator()),
                                      kRevalidate);
}

QChannel tensor_channels(const QChannel& e, const QChannel& f) {
  if (e.has_kraus() && f.has_kraus()) {
    std::vector<CMatrix> ops;
    for (const auto& a : e.kraus()) {
      for (const auto& b : f.kraus()) ops.emplace_back(kron(a, b));
    }
    return QChannel::from_kraus(std::move(ops), kRevalidate);
  }
  const std::size_t de = e.dim();
  const std::size_t df = f.dim();
  const std::size_t d = de * df;
  CMatrix action(idx(d * d), idx(d * d));
  for (std::size_t i = 0; i < de; ++i) {
    for (std::size_t j = 0; j < de; ++j) {
      const CMatrix ei = e.superoperator().on_unit(i, j);
      for (std::size_t p = 0; p < df; ++p) {
        for (std::size_t q = 0; q < df; ++q) {
          const std::size_t row = i * df + p;
          const std::size_t col = j * df + q;
          action.col(idx(col * d + row)) = vec(kron(ei, f.superoperator().on_unit(p, q)));
        }
      }
    }
  }
  return QChannel::from_superoperator(Superoperator(d, d, std::move(action)), kRevalidate);
}

bool same_channel(const QChannel& a, const QChannel& b, Tolerance tol) {
  return same_action(a.superoperator(), b.superoperator(), tol);
}

namespace {

// V (ℰ ⊗ id_k) (V† ρ V) V†.
QChannel conjugated_lift(const CMatrix& v, std::size_t k, const QChannel& e) {
  const std::size_t n = static_cast<std::size_t>(v.rows());
  const Superoperator inner(n, n, conjugation_action(v.adjoint()));
  const Superoperator outer(n, n, conjugation_action(v));
  const QChannel widened = tensor_channels(QChannel::from_superoperator(e.superoperator(),
                                                                        kRevalidate),
                                           QChannel::identity(k));
  Superoperator s = compose(outer, compose(widened.superoperator(), inner));
  return QChannel::from_superoperator(std::move(s), kRevalidate);
}

}  // namespace

QChannel lift_channel(const QRegister& f, const QChannel& e, ChannelLift mode) {
  if (e.dim() != f.domain_dim()) {
    throw DimensionError("lift_channel: channel dimension " + std::to_string(e.dim()) +
                         " does not match register domain " +
                         std::to_string(f.domain_dim()));
  }
  const bool use_kraus =
      mode == ChannelLift::kraus || (mode == ChannelLift::automatic && e.has_kraus());
  if (use_kraus) {
    std::vector<CMatrix> ops;
    for (const auto& m : e.kraus()) ops.push_back(f.apply(m));
    return QChannel::from_kraus(std::move(ops), kRevalidate);
  }
  return conjugated_lift(f.unitary(), f.env_dim(), e);
}

QChannel lift_channel_with_complement(const QRegister& f, const QRegister& g,
                                      const QChannel& e, Tolerance tol) {
  if (e.dim() != f.domain_dim()) {
    throw DimensionError("lift_channel: channel dimension does not match register domain");
  }
  if (!compatible(f, g, tol)) throw InvalidArgument("lift_channel: G is not a complement of F");
  const auto iso = as_iso(pair(f, g, tol));
  if (!iso) throw InvalidArgument("lift_channel: G is not a complement of F");
  return conjugated_lift(iso->v, g.domain_dim(), e);
}

CMatrix trace_in(const QRegister& f, const CMatrix& rho) {
  require_square(rho, f.codomain_dim(), "trace_in");
  const CMatrix& u = f.unitary();
  return partial_trace_second(u.adjoint() * rho * u, f.domain_dim(), f.env_dim());
}

// ---------------------------------------------------------------------------

std::string to_string(MeasurementKind kind) {
  switch (kind) {
    case MeasurementKind::projective: return "projective";
    case MeasurementKind::complete: return "complete";
    case MeasurementKind::povm: return "povm";
    case MeasurementKind::general: return "general";
  }
  return "unknown";
}

Measurement::Measurement(MeasurementKind kind, std::vector<CMatrix> ops,
                         std::vector<std::string> labels, Tolerance tol)
    : kind_(kind), ops_(std::move(ops)), labels_(std::move(labels)) {
  if (ops_.empty()) throw InvalidArgument("measurement needs at least one operator");
  const auto d = static_cast<std::size_t>(ops_.front().rows());
  for (const auto& m : ops_) require_square(m, d, "measurement operator");
  if (labels_.empty()) {
    for (std::size_t i = 0; i < ops_.size(); ++i) labels_.push_back(std::to_string(i));
  }
  if (labels_.size() != ops_.size()) {
    throw InvalidArgument("measurement labels do not match operators");
  }
  std::vector<std::string> sorted = labels_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument("measurement labels must be distinct");
  }

  const CMatrix id = identity(d);
  CMatrix total = CMatrix::Zero(idx(d), idx(d));
  switch (kind_) {
    case MeasurementKind::projective:
    case MeasurementKind::complete:
      for (std::size_t i = 0; i < ops_.size(); ++i) {
        if (!classify_operator(ops_[i], tol).projector) {
          throw InvalidArgument("projective measurement operator " + labels_[i] +
                                " is not a projector");
        }
        if (kind_ == MeasurementKind::complete &&
            std::abs(ops_[i].trace().real() - 1.0) > tol.eps() * d) {
          throw InvalidArgument("complete measurement operator " + labels_[i] +
                                " does not have rank 1");
        }
        for (std::size_t j = i + 1; j < ops_.size(); ++j) {
          if (!approx_eq(ops_[i] * ops_[j], CMatrix::Zero(idx(d), idx(d)), tol)) {
            throw InvalidArgument("projectors " + labels_[i] + " and " + labels_[j] +
                                  " are not orthogonal");
          }
        }
        total += ops_[i];
      }
      break;
    case MeasurementKind::povm:
      for (std::size_t i = 0; i < ops_.size(); ++i) {
        if (!is_positive(ops_[i], tol)) {
          throw InvalidArgument("POVM element " + labels_[i] + " is not positive");
        }
        total += ops_[i];
      }
      break;
    case MeasurementKind::general:
      for (const auto& m : ops_) total += m.adjoint() * m;
      break;
  }
  if (!approx_eq(total, id, tol)) {
    throw InvalidArgument(to_string(kind_) + " measurement does not sum to the identity");
  }
}

const CMatrix& Measurement::operator_for(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw InvalidArgument("unknown measurement outcome " + label);
  return ops_[static_cast<std::size_t>(it - labels_.begin())];
}

Measurement computational_measurement(std::size_t dim) {
  std::vector<CMatrix> ops;
  for (std::size_t i = 0; i < dim; ++i) ops.push_back(matrix_unit(dim, i, i));
  return Measurement(MeasurementKind::complete, std::move(ops));
}

Measurement lift_measurement(const QRegister& f, const Measurement& m) {
  if (m.dim() != f.domain_dim()) {
    throw DimensionError("lift_measurement: measurement dimension does not match register");
  }
  std::vector<CMatrix> ops;
  for (const auto& op : m.operators()) ops.push_back(f.apply(op));
  const MeasurementKind kind =
      m.kind() == MeasurementKind::complete ? MeasurementKind::projective : m.kind();
  return Measurement(kind, std::move(ops), m.labels(), kRevalidate);
}

Outcome measure(const Measurement& m, const std::string& label, const CVector& psi) {
  const CMatrix& op = m.operator_for(label);
  if (psi.size() != idx(m.dim())) throw DimensionError("measure: state dimension mismatch");
  Outcome out;
  if (m.kind() == MeasurementKind::povm) {
    out.probability = psi.dot(op * psi).real();
    return out;
  }
  const CVector post = op * psi;
  out.probability = post.squaredNorm();
  out.post_state = CMatrix(post);
  return out;
}

Outcome measure(const Measurement& m, const std::string& label, const DensityOp& rho) {
  const CMatrix& op = m.operator_for(label);
  if (rho.dim() != m.dim()) throw DimensionError("measure: state dimension mismatch");
  Outcome out;
  if (m.kind() == MeasurementKind::povm) {
    out.probability = (op * rho.matrix()).trace().real();
    return out;
  }
  CMatrix post = op * rho.matrix() * op.adjoint();
  out.probability = post.trace().real();
  out.post_state = std::move(post);
  return out;
}

}  // namespace regcalc
