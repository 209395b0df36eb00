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


// Lifting quantum objects on a register's domain to the whole memory.

#ifndef REGCALC_LIFTING_HPP
#define REGCALC_LIFTING_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "regcalc/linalg.hpp"
#include "regcalc/qregister.hpp"
#include "regcalc/superoperator.hpp"

namespace regcalc {

// States -----------------------------------------------------------------------

/// A positive operator with trace 1 (density) or trace ≤ 1 (subdensity).
class DensityOp {
 public:
  /// Throws InvalidArgument when the matrix is not a (sub)density operator.
  explicit DensityOp(CMatrix rho, bool subnormalized = false, Tolerance tol = {});

  std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }
  const CMatrix& matrix() const { return rho_; }
  bool subnormalized() const { return subnormalized_; }

 private:
  CMatrix rho_;
  bool subnormalized_;
};

/// Unit-norm check for pure states.
bool is_pure_state(const CVector& psi, Tolerance tol = {});

/// Range of F(P_S).
Subspace lift_subspace(const QRegister& f, const Subspace& s, Tolerance tol = {});

/// F_1(ρ_1) ⋈ … ⋈ F_n(ρ_n) := ⟨F_1, …, F_n⟩(ρ_1 ⊗ … ⊗ ρ_n). The ρ_i may be
/// arbitrary operators; the registers must form a partition.
CMatrix lift_mixed(std::span<const QRegister> regs, std::span<const CMatrix> ops,
                   Tolerance tol = {});

/// η: the first standard basis vector.
CVector eta(std::size_t dim);
/// ξ_b: b·η normalized when non-zero, otherwise b·e_j normalized for the
/// smallest j with b·e_j ≠ 0. Throws InvalidArgument for b = 0.
CVector xi(const CMatrix& b, Tolerance tol = {});

/// F_1(ψ_1) ▷ … ▷ F_n(ψ_n) := (F_1(ψ_1η†) ⋈ … ⋈ F_n(ψ_nη†)) ξ_b with
/// b = F_1(ηη†) ⋈ … ⋈ F_n(ηη†).
CVector lift_pure(std::span<const QRegister> regs, std::span<const CVector> psis,
                  Tolerance tol = {});

/// ⟨F,∁F⟩(ηη† ⊗ c) = η_B η_B† for some c.
bool is_eta_regular(const QRegister& f, Tolerance tol = {});

// Channels ---------------------------------------------------------------------

/// Choi matrix Σ E_ij ⊗ S(E_ij).
CMatrix choi_matrix(const Superoperator& s);
bool is_completely_positive(const Superoperator& s, Tolerance tol = {});

/// A completely positive, trace-preserving or trace-reducing map on the
/// operators of one space, held either as Kraus operators or as a
/// superoperator.
class QChannel {
 public:
  /// Requires Σ M_i† M_i ≤ I.
  static QChannel from_kraus(std::vector<CMatrix> ops, Tolerance tol = {});
  /// Requires complete positivity and trace non-increase.
  static QChannel from_superoperator(Superoperator s, Tolerance tol = {});
  static QChannel identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  bool has_kraus() const { return kraus_.has_value(); }
  const std::vector<CMatrix>& kraus() const;
  const Superoperator& superoperator() const { return super_; }

  CMatrix operator()(const CMatrix& rho) const;
  bool trace_preserving(Tolerance tol = {}) const;

 private:
  QChannel(std::size_t dim, std::optional<std::vector<CMatrix>> kraus, Superoperator s);

  std::size_t dim_;
  std::optional<std::vector<CMatrix>> kraus_;
  Superoperator super_;
};

/// outer ∘ inner. Kraus form is kept when both inputs have it.
QChannel compose(const QChannel& outer, const QChannel& inner);
/// ℰ ⊗ ℱ on the Kronecker product space.
QChannel tensor_channels(const QChannel& e, const QChannel& f);
bool same_channel(const QChannel& a, const QChannel& b, Tolerance tol = {});

enum class ChannelLift { automatic, kraus, conjugation };

/// F(ℰ). Kraus mode gives ρ ↦ Σ F(M_i) ρ F(M_i)†; conjugation mode gives
/// ⟨F,∁F⟩ ∘ (ℰ ⊗ id) ∘ ⟨F,∁F⟩⁻¹. Automatic picks Kraus when available.
QChannel lift_channel(const QRegister& f, const QChannel& e,
                      ChannelLift mode = ChannelLift::automatic);
/// Conjugation mode with an explicitly supplied complement G of F.
QChannel lift_channel_with_complement(const QRegister& f, const QRegister& g,
                                      const QChannel& e, Tolerance tol = {});

/// ≫F: the partial trace keeping the content of F, tr_C(U† ρ U).
CMatrix trace_in(const QRegister& f, const CMatrix& rho);

// Measurements -------------------------------------------------------------------

enum class MeasurementKind { projective, complete, povm, general };

std::string to_string(MeasurementKind kind);

class Measurement {
 public:
  /// Labels default to "0", "1", …. Throws InvalidArgument when the
  /// operators violate the invariant of `kind`.
  Measurement(MeasurementKind kind, std::vector<CMatrix> ops,
              std::vector<std::string> labels = {}, Tolerance tol = {});

  MeasurementKind kind() const { return kind_; }
  std::size_t dim() const { return static_cast<std::size_t>(ops_.front().rows()); }
  const std::vector<CMatrix>& operators() const { return ops_; }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Throws InvalidArgument for an unknown label.
  const CMatrix& operator_for(const std::string& label) const;

 private:
  MeasurementKind kind_;
  std::vector<CMatrix> ops_;
  std::vector<std::string> labels_;
};

/// Measurement in the computational basis (kind complete).
Measurement computational_measurement(std::size_t dim);

/// Same labels, operators F(M_i). A complete measurement lifts as projective.
Measurement lift_measurement(const QRegister& f, const Measurement& m);

struct Outcome {
  double probability = 0.0;
  /// Non-normalized post-measurement state; absent for POVMs.
  std::optional<CMatrix> post_state;
};

Outcome measure(const Measurement& m, const std::string& label, const CVector& psi);
Outcome measure(const Measurement& m, const std::string& label, const DensityOp& rho);

}  // namespace regcalc

#endif  // REGCALC_LIFTING_HPP
