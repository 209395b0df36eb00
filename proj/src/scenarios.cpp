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

#include "regcalc/scenarios.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "regcalc/errors.hpp"
#include "regcalc/gates.hpp"
#include "regcalc/lifting.hpp"
#include "regcalc/random.hpp"

namespace regcalc {

bool ScenarioReport::passed() const { return failures() == 0; }

std::size_t ScenarioReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.passed; }));
}

namespace {

std::string label(const std::string& base, std::size_t a, std::size_t b) {
  return base + " [a=" + std::to_string(a) + " b=" + std::to_string(b) + "]";
}

CheckResult matrix_check(std::string name, const CMatrix& lhs, const CMatrix& rhs,
                         Tolerance tol) {
  CheckResult c;
  c.name = std::move(name);
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
    c.passed = false;
    c.detail = "shape mismatch";
    return c;
  }
  c.residual = max_abs(lhs - rhs);
  c.passed = approx_eq(lhs, rhs, tol);
  return c;
}

// Runs `body`, turning exceptions into a failed check.
CheckResult guarded(const std::string& name, const std::function<CheckResult()>& body) {
  try {
    return body();
  } catch (const RuleRejected& e) {
    return {name, false, e.residual(), e.what()};
  } catch (const std::exception& e) {
    return {name, false, 0.0, e.what()};
  }
}

CMatrix op_of(const Memory& mem, const RegExprPtr& r, const CMatrix& a) {
  return resolve(r, mem).reg.apply(a);
}

RegExprPtr phi_fst() { return reg::chain(reg::named("Phi"), reg::fst()); }
RegExprPtr phi_snd() { return reg::chain(reg::named("Phi"), reg::snd()); }

}  // namespace

// Teleportation ----------------------------------------------------------------

Memory teleport_memory(const TeleportOptions& opts) {
  if (opts.dim_a == 0 || opts.dim_b == 0) {
    throw InvalidArgument("teleport: dim A and dim B must be at least 1");
  }
  const std::array<Memory::Factor, 5> canonical{Memory::Factor{"A", opts.dim_a},
                                                Memory::Factor{"X", 2}, Memory::Factor{"Phi1", 2},
                                                Memory::Factor{"B", opts.dim_b},
                                                Memory::Factor{"Phi2", 2}};
  std::array<bool, 5> used{};
  std::vector<Memory::Factor> layout;
  for (std::size_t i : opts.order) {
    if (i >= 5 || used[i]) throw InvalidArgument("teleport: order must be a permutation of 0..4");
    used[i] = true;
    layout.push_back(canonical[i]);
  }
  Memory mem(std::move(layout), opts.tol);
  mem.define("Phi", reg::pair(reg::named("Phi1"), reg::named("Phi2")));
  mem.define("XAB", reg::pair(reg::named("X"), reg::pair(reg::named("A"), reg::named("B"))));
  mem.define("PhiSndAB", reg::pair(phi_snd(), reg::pair(reg::named("A"), reg::named("B"))));
  return mem;
}

Program teleport_program(std::size_t a, std::size_t b) {
  if (a > 1 || b > 1) throw InvalidArgument("teleport: a and b are bits");
  return {Command::apply(reg::pair(reg::named("X"), phi_fst()), gates::cnot()),
          Command::apply(reg::named("X"), gates::hadamard()),
          Command::guard(phi_fst(), a),
          Command::guard(reg::named("X"), b),
          Command::apply(phi_snd(), gates::power(gates::pauli_x(), a)),
          Command::apply(phi_snd(), gates::power(gates::pauli_z(), b))};
}

PredPtr teleport_pre(const CVector& psi) {
  return pred::intersect(pred::qeq(reg::named("XAB"), psi),
                         pred::qeq(reg::named("Phi"), gates::bell()));
}

PredPtr teleport_post(const CVector& psi) { return pred::qeq(reg::named("PhiSndAB"), psi); }

CMatrix teleport_m(std::size_t a, std::size_t b) {
  const CMatrix i1 = identity(2);
  const CMatrix i2 = identity(4);
  const CVector beta = gates::bell();
  // α(CNOT ⊗ I_1): the associator is the identity on Kronecker storage.
  const CMatrix alpha_cnot = assoc_register(2, 2, 2).apply(kron(gates::cnot(), i1));
  return kron(gates::projector(2, b), i2) *
         kron_all(std::vector<CMatrix>{i1, gates::projector(2, a), i1}) *
         kron(gates::hadamard(), i2) * alpha_cnot * kron(i1, outer(beta, beta));
}

CMatrix teleport_m_prime(std::size_t a, std::size_t b) {
  const CMatrix i1 = identity(2);
  const CMatrix xz = gates::power(gates::pauli_x(), a) * gates::power(gates::pauli_z(), b);
  const CVector ab = kron(gates::ket(2, a), gates::ket(2, b));
  const CMatrix alpha_swap = assoc_register(2, 2, 2).apply(kron(gates::swap(), i1));
  const QRegister id_sigma = tensor_registers(id_register(2), swap_register(2, 2));
  return kron_all(std::vector<CMatrix>{i1, i1, 0.5 * xz}) * id_sigma.apply(alpha_swap) *
         kron(i1, outer(ab, gates::bell()));
}

std::vector<CVector> teleport_states(const TeleportOptions& opts) {
  const std::size_t n = 2 * opts.dim_a * opts.dim_b;
  std::vector<CVector> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(basis_vector(n, i));
  Rng rng(opts.seed);
  for (std::size_t i = 0; i < opts.random_states; ++i) out.push_back(random_unit_vector(rng, n));
  return out;
}

ScenarioReport run_teleport(const TeleportOptions& opts) {
  ScenarioReport report{"teleport", {}};
  const Memory mem = teleport_memory(opts);
  const Tolerance tol = opts.tol;
  const std::vector<CVector> states = teleport_states(opts);
  const CMatrix o1 = op_of(mem, reg::named("Phi"), outer(gates::bell(), gates::bell()));

  for (std::size_t i = 0; i < states.size(); ++i) {
    const std::string name = "pre = O1 * (XAB =q psi) [psi " + std::to_string(i) + "]";
    report.checks.push_back(guarded(name, [&] {
      const Subspace pre = pred_eval(teleport_pre(states[i]), mem);
      const Subspace via_o1 =
          image(o1, pred_eval(pred::qeq(reg::named("XAB"), states[i]), mem), tol);
      const TripleReport fwd = check_inclusion(pre, identity(mem.dim()), via_o1, tol);
      const TripleReport back = check_inclusion(via_o1, identity(mem.dim()), pre, tol);
      return CheckResult{name, fwd.holds && back.holds && pre.rank() == via_o1.rank(),
                         std::max(fwd.residual, back.residual), ""};
    }));
  }

  const Resolved x_phi = resolve(reg::pair(reg::named("X"), reg::named("Phi")), mem);
  const Resolved x_phi2 = resolve(reg::pair(reg::named("X"), phi_snd()), mem);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      const Program prog = teleport_program(a, b);
      const CMatrix m = teleport_m(a, b);
      const CMatrix mp = teleport_m_prime(a, b);
      report.checks.push_back(matrix_check(label("M = M'", a, b), m, mp, opts.matrix_tol));

      // O_1 … O_7 follow the program one command at a time.
      std::vector<CMatrix> o{o1};
      for (const Command& c : prog) o.push_back(command_operator(c, mem) * o.back());
      const CMatrix& o5 = o[4];
      const CMatrix& o7 = o[6];
      const CVector ab = kron(gates::ket(2, a), gates::ket(2, b));
      const CMatrix phi_ab_beta = op_of(mem, reg::named("Phi"), outer(ab, gates::bell()));
      const CMatrix xz = gates::power(gates::pauli_x(), a) * gates::power(gates::pauli_z(), b);
      const CMatrix o5_prime = 0.5 * op_of(mem, phi_snd(), xz) * x_phi2.reg.apply(gates::swap()) *
                               phi_ab_beta;
      report.checks.push_back(
          matrix_check(label("O5 = <X,Phi>(M)", a, b), o5, x_phi.reg.apply(m), tol));
      report.checks.push_back(matrix_check(label("O5 = O5'", a, b), o5, o5_prime, tol));
      report.checks.push_back(matrix_check(
          label("O7 = 1/2 <X,Phi.Snd>(Usigma) Phi(|ab><beta|)", a, b), o7,
          0.5 * x_phi2.reg.apply(gates::swap()) * phi_ab_beta, tol));
      report.checks.push_back(
          matrix_check(label("denote(teleport) * O1 = O7", a, b), denote(prog, mem) * o1, o7, tol));

      for (std::size_t i = 0; i < states.size(); ++i) {
        const std::string suffix = " [a=" + std::to_string(a) + " b=" + std::to_string(b) +
                                   " psi " + std::to_string(i) + "]";
        const PredPtr pre = teleport_pre(states[i]);
        const PredPtr post = teleport_post(states[i]);
        report.checks.push_back(guarded("triple" + suffix, [&] {
          const TripleReport r = check_triple(pre, prog, post, mem);
          return CheckResult{"triple" + suffix, r.holds, r.residual, ""};
        }));
        report.checks.push_back(guarded("derivation" + suffix, [&] {
          // Apply/If for each command, Seq to join them, Weaken to the goal.
          const Subspace payload = pred_eval(pred::qeq(reg::named("XAB"), states[i]), mem);
          std::vector<Subspace> mid;
          for (const CMatrix& ok : o) mid.push_back(image(ok, payload, tol));
          std::optional<Judgment> acc;
          for (std::size_t k = 0; k < prog.size(); ++k) {
            const Judgment step = prog[k].kind == Command::Kind::apply
                                      ? rule_apply(mid[k], prog[k], mid[k + 1], mem)
                                      : rule_if(mid[k], prog[k], mid[k + 1], mem);
            acc = acc ? rule_seq(*acc, step, tol) : step;
          }
          const Judgment goal =
              rule_weaken(pred_eval(pre, mem), pred_eval(post, mem), *acc, tol);
          const TripleReport r = check_inclusion(goal.pre, denote(goal.program, mem), goal.post, tol);
          return CheckResult{"derivation" + suffix, r.holds, r.residual, ""};
        }));
      }
    }
  }
  return report;
}

// Three CNOTs ------------------------------------------------------------------

ScenarioReport run_triple_cnot(const TripleCnotOptions& opts) {
  if (opts.rest_dim == 0) throw InvalidArgument("triple_cnot: rest dimension must be positive");
  ScenarioReport report{"triple_cnot", {}};
  const Tolerance tol = opts.tol;
  const std::array<std::size_t, 3> dims{2, 2, opts.rest_dim};
  Rng rng(opts.seed);
  std::vector<QRegister> parts;
  if (opts.scrambled) {
    parts = random_partition(rng, dims);
  } else {
    for (std::size_t i = 0; i < 3; ++i) parts.push_back(factor_register(dims, i));
  }
  const QRegister& f = parts[0];
  const QRegister& g = parts[1];
  const QRegister fg = pair(f, g, tol);
  const QRegister gf = pair(g, f, tol);
  const QRegister rest = complement(fg);
  const std::size_t n = fg.codomain_dim();

  const CMatrix fg_cnot = fg.apply(gates::cnot());
  const CMatrix gf_cnot = gf.apply(gates::cnot());
  const CMatrix lhs = fg_cnot * gf_cnot * fg_cnot;
  const CMatrix rhs = fg.apply(gates::swap());

  auto lift3 = [&](std::size_t x, std::size_t y, std::size_t z) {
    const std::vector<QRegister> regs{f, g, rest};
    const std::vector<CVector> psis{gates::ket(2, x), gates::ket(2, y),
                                    gates::ket(opts.rest_dim, z)};
    return lift_pure(regs, psis, tol);
  };
  auto lift2 = [&](const QRegister& p, std::size_t u, std::size_t v, std::size_t z) {
    const std::vector<QRegister> regs{p, rest};
    const std::vector<CVector> psis{kron(gates::ket(2, u), gates::ket(2, v)),
                                    gates::ket(opts.rest_dim, z)};
    return lift_pure(regs, psis, tol);
  };

  CMatrix lifted_basis(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  Eigen::Index col = 0;
  double worst_step = 0.0;
  double worst_final = 0.0;
  bool steps_ok = true;
  bool final_ok = true;
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t y = 0; y < 2; ++y) {
      for (std::size_t z = 0; z < opts.rest_dim; ++z) {
        const CVector start = lift3(x, y, z);
        lifted_basis.col(col++) = start;
        const std::size_t yx = x ^ y;
        // Each pair lists the state reached and the expected lifted form.
        const std::vector<std::pair<CVector, CVector>> steps{
            {start, lift2(fg, x, y, z)},
            {fg_cnot * start, lift2(fg, x, yx, z)},
            {fg_cnot * start, lift2(gf, yx, x, z)},
            {gf_cnot * fg_cnot * start, lift2(gf, yx, y, z)},
            {gf_cnot * fg_cnot * start, lift2(fg, y, yx, z)},
            {lhs * start, lift2(fg, y, x, z)},
            {lhs * start, lift3(y, x, z)},
            {rhs * start, lift3(y, x, z)},
        };
        for (const auto& [got, want] : steps) {
          const double r = (got - want).cwiseAbs().maxCoeff();
          worst_step = std::max(worst_step, r);
          steps_ok = steps_ok && r <= tol.eps();
        }
        const double r = (lhs * start - rhs * start).cwiseAbs().maxCoeff();
        worst_final = std::max(worst_final, r);
        final_ok = final_ok && r <= tol.eps();
      }
    }
  }
  report.checks.push_back({"step-by-step evaluation on lifted basis states", steps_ok, worst_step, ""});
  report.checks.push_back({"lhs and rhs agree on every lifted basis state", final_ok, worst_final, ""});

  // Separating lemma: the lifted basis states span the memory, so agreement
  // on them determines the operator.
  const std::size_t rank = Subspace::span(lifted_basis, tol).rank();
  report.checks.push_back({"lifted basis states span the memory (rank " + std::to_string(rank) +
                               " of " + std::to_string(n) + ")",
                           rank == n, 0.0, ""});
  const CMatrix coeffs = lifted_basis.fullPivLu().solve(identity(n));
  const CMatrix from_basis = (lhs * lifted_basis) * coeffs;
  report.checks.push_back(matrix_check("operator reconstructed from lifted basis = <F,G>(Usigma)",
                                       from_basis, rhs, tol));
  report.checks.push_back(matrix_check(
      "<F,G>(CNOT) <G,F>(CNOT) <F,G>(CNOT) = <F,G>(Usigma)", lhs, rhs, tol));
  return report;
}

// Mixed circuit ----------------------------------------------------------------

CMatrix mixed_circuit_expected_gh() {
  const CVector p0 = kron(gates::plus(), gates::ket(2, 0));
  const CVector m1 = kron(gates::minus(), gates::ket(2, 1));
  return 0.5 * outer(p0, p0) + 0.5 * outer(m1, m1);
}

ScenarioReport run_mixed_circuit(const MixedCircuitOptions& opts) {
  if (opts.rest_dim == 0) throw InvalidArgument("mixed_circuit: rest dimension must be positive");
  ScenarioReport report{"mixed_circuit", {}};
  const Tolerance tol = opts.tol;
  const std::array<std::size_t, 4> dims{2, 2, 2, opts.rest_dim};
  Rng rng(opts.seed);
  std::vector<QRegister> parts;
  if (opts.scrambled) {
    parts = random_partition(rng, dims);
  } else {
    for (std::size_t i = 0; i < 4; ++i) parts.push_back(factor_register(dims, i));
  }
  const QRegister& f = parts[0];
  const QRegister& g = parts[1];
  const QRegister& h = parts[2];
  const QRegister& z = parts[3];
  const QRegister gh = pair(g, h, tol);
  const CMatrix rho_rest = opts.rest_dim == 1 ? identity(1) : random_density(rng, opts.rest_dim);

  const CVector plus = gates::plus();
  const CMatrix zero = gates::projector(2, 0);
  const CMatrix half = 0.5 * identity(2);
  auto lift4 = [&](const CMatrix& a, const CMatrix& b, const CMatrix& c) {
    const std::vector<QRegister> regs{f, g, h, z};
    const std::vector<CMatrix> ops{a, b, c, rho_rest};
    return lift_mixed(regs, ops, tol);
  };
  auto lift_gh = [&](const CMatrix& gh_state, const CMatrix& f_state) {
    const std::vector<QRegister> regs{gh, f, z};
    const std::vector<CMatrix> ops{gh_state, f_state, rho_rest};
    return lift_mixed(regs, ops, tol);
  };
  auto conj = [](const CMatrix& u, const CMatrix& rho) -> CMatrix { return u * rho * u.adjoint(); };

  const CMatrix initial = lift4(zero, half, zero);
  const CMatrix s1 = conj(f.apply(gates::hadamard()), initial);
  report.checks.push_back(matrix_check("after F(H): F(|+><+|) x G(1/2) x H(|0><0|) x Z(rest)", s1,
                                       lift4(outer(plus, plus), half, zero), tol));
  report.checks.push_back(matrix_check("regroup as <G,H>(1/2 x |0><0|) x F(|+><+|) x Z(rest)", s1,
                                       lift_gh(kron(half, zero), outer(plus, plus)), tol));
  const CMatrix s2 = conj(gh.apply(gates::cnot()), s1);
  const CVector v00 = kron(gates::ket(2, 0), gates::ket(2, 0));
  const CVector v11 = kron(gates::ket(2, 1), gates::ket(2, 1));
  report.checks.push_back(matrix_check(
      "after <G,H>(CNOT): <G,H>(1/2|00><00| + 1/2|11><11|) x F(|+><+|) x Z(rest)", s2,
      lift_gh(0.5 * outer(v00, v00) + 0.5 * outer(v11, v11), outer(plus, plus)), tol));
  report.checks.push_back(matrix_check("<G,H>(H x 1) = G(H)", gh.apply(kron(gates::hadamard(), identity(2))),
                                       g.apply(gates::hadamard()), tol));
  const CMatrix s3 = conj(g.apply(gates::hadamard()), s2);
  const CMatrix expected_gh = mixed_circuit_expected_gh();
  report.checks.push_back(matrix_check(
      "after G(H): <G,H>(1/2|+0><+0| + 1/2|-1><-1|) x F(|+><+|) x Z(rest)", s3,
      lift_gh(expected_gh, outer(plus, plus)), tol));
  report.checks.push_back(matrix_check("trace_in(<G,H>, final) = 1/2|+0><+0| + 1/2|-1><-1|",
                                       trace_in(gh, s3), expected_gh, tol));
  report.checks.push_back(
      matrix_check("trace_in(F, final) = |+><+|", trace_in(f, s3), outer(plus, plus), tol));
  return report;
}

}  // namespace regcalc
