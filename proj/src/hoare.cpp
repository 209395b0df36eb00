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


#include "regcalc/hoare.hpp"

#include <set>

#include "regcalc/errors.hpp"

namespace regcalc {

namespace {

Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

std::string join(const std::string& path, const std::string& step) {
  return path.empty() ? step : path + "." + step;
}

RegExprPtr make(RegisterExpr::Kind kind, std::vector<RegExprPtr> args = {}) {
  auto e = std::make_shared<RegisterExpr>();
  e->kind = kind;
  e->args = std::move(args);
  return e;
}

const char* kind_name(RegisterExpr::Kind k) {
  switch (k) {
    case RegisterExpr::Kind::named: return "named";
    case RegisterExpr::Kind::fst: return "fst";
    case RegisterExpr::Kind::snd: return "snd";
    case RegisterExpr::Kind::swap: return "swap";
    case RegisterExpr::Kind::assoc: return "assoc";
    case RegisterExpr::Kind::assoc_inv: return "assoc_inv";
    case RegisterExpr::Kind::id: return "id";
    case RegisterExpr::Kind::chain: return "chain";
    case RegisterExpr::Kind::pair: return "pair";
    case RegisterExpr::Kind::tensor: return "tensor";
    case RegisterExpr::Kind::mapped: return "mapped";
    case RegisterExpr::Kind::complement: return "complement";
  }
  return "?";
}

const Type& require_product(const TypePtr& t, const std::string& path, const char* what) {
  if (!t->is_product()) {
    throw TypeError(path, std::string(what) + " needs a product space, got " + to_string(*t));
  }
  return *t;
}

Resolved resolve_at(const RegExprPtr& e, const TypePtr& codomain, const Memory& mem,
                    const std::string& path) {
  if (!e) throw TypeError(path, "missing register expression");
  const Tolerance tol = mem.tolerance();
  using K = RegisterExpr::Kind;
  switch (e->kind) {
    case K::named: {
      if (codomain->dim != mem.dim()) {
        throw TypeError(path, "register '" + e->name + "' lives on the memory (dim " +
                                  std::to_string(mem.dim()) + ") but is used on a space of dim " +
                                  std::to_string(codomain->dim));
      }
      if (!mem.has(e->name)) throw TypeError(path, "unknown register '" + e->name + "'");
      return mem.lookup(e->name);
    }
    case K::fst: {
      const Type& t = require_product(codomain, path, "fst");
      return {fst_register(t.left->dim, t.right->dim), t.left};
    }
    case K::snd: {
      const Type& t = require_product(codomain, path, "snd");
      return {snd_register(t.left->dim, t.right->dim), t.right};
    }
    case K::swap: {
      const Type& t = require_product(codomain, path, "swap");
      return {swap_register(t.right->dim, t.left->dim), product_type(t.right, t.left)};
    }
    case K::assoc: {
      const Type& t = require_product(codomain, path, "assoc");
      const Type& bc = require_product(t.right, path, "assoc (right factor)");
      return {assoc_register(t.left->dim, bc.left->dim, bc.right->dim),
              product_type(product_type(t.left, bc.left), bc.right)};
    }
    case K::assoc_inv: {
      const Type& t = require_product(codomain, path, "assoc_inv");
      const Type& ab = require_product(t.left, path, "assoc_inv (left factor)");
      return {assoc_inv_register(ab.left->dim, ab.right->dim, t.right->dim),
              product_type(ab.left, product_type(ab.right, t.right))};
    }
    case K::id:
      return {id_register(codomain->dim), codomain};
    case K::chain: {
      const Resolved outer = resolve_at(e->args.at(0), codomain, mem, join(path, "chain[0]"));
      const Resolved inner = resolve_at(e->args.at(1), outer.domain, mem, join(path, "chain[1]"));
      return {chain(outer.reg, inner.reg), inner.domain};
    }
    case K::pair: {
      const Resolved a = resolve_at(e->args.at(0), codomain, mem, join(path, "pair[0]"));
      const Resolved b = resolve_at(e->args.at(1), codomain, mem, join(path, "pair[1]"));
      try {
        return {pair(a.reg, b.reg, tol), product_type(a.domain, b.domain)};
      } catch (const IncompatibleRegisters&) {
        throw TypeError(path, "pair of incompatible registers " + to_string(*e->args[0]) +
                                  " and " + to_string(*e->args[1]));
      }
    }
    case K::tensor: {
      const Type& t = require_product(codomain, path, "tensor");
      const Resolved a = resolve_at(e->args.at(0), t.left, mem, join(path, "tensor[0]"));
      const Resolved b = resolve_at(e->args.at(1), t.right, mem, join(path, "tensor[1]"));
      return {tensor_registers(a.reg, b.reg), product_type(a.domain, b.domain)};
    }
    case K::mapped: {
      const Resolved inner = resolve_at(e->args.at(0), codomain, mem, join(path, "mapped.of"));
      const auto d = idx(inner.domain->dim);
      if (e->u.rows() != d || e->u.cols() != d) {
        throw TypeError(join(path, "mapped.u"), "matrix must be " + std::to_string(d) + "x" +
                                                    std::to_string(d));
      }
      if (!classify_operator(e->u, tol).unitary) {
        throw TypeError(join(path, "mapped.u"), "matrix is not unitary");
      }
      return {chain(inner.reg, iso_register(e->u, tol)), inner.domain};
    }
    case K::complement: {
      const Resolved inner = resolve_at(e->args.at(0), codomain, mem, join(path, "complement"));
      const QRegister c = complement(inner.reg);
      return {c, leaf_type(c.domain_dim())};
    }
  }
  throw TypeError(path, "unknown expression kind");
}

}  // namespace

// ---------------------------------------------------------------------------

TypePtr leaf_type(std::size_t dim) {
  if (dim == 0) throw InvalidArgument("type dimension must be positive");
  auto t = std::make_shared<Type>();
  t->dim = dim;
  return t;
}

TypePtr product_type(TypePtr left, TypePtr right) {
  auto t = std::make_shared<Type>();
  t->dim = left->dim * right->dim;
  t->left = std::move(left);
  t->right = std::move(right);
  return t;
}

std::string to_string(const Type& t) {
  if (!t.is_product()) return std::to_string(t.dim);
  return "(" + to_string(*t.left) + " x " + to_string(*t.right) + ")";
}

namespace reg {
RegExprPtr named(std::string name) {
  auto e = std::make_shared<RegisterExpr>();
  e->kind = RegisterExpr::Kind::named;
  e->name = std::move(name);
  return e;
}
RegExprPtr fst() { return make(RegisterExpr::Kind::fst); }
RegExprPtr snd() { return make(RegisterExpr::Kind::snd); }
RegExprPtr swap() { return make(RegisterExpr::Kind::swap); }
RegExprPtr assoc() { return make(RegisterExpr::Kind::assoc); }
RegExprPtr assoc_inv() { return make(RegisterExpr::Kind::assoc_inv); }
RegExprPtr id() { return make(RegisterExpr::Kind::id); }
RegExprPtr chain(RegExprPtr outer, RegExprPtr inner) {
  return make(RegisterExpr::Kind::chain, {std::move(outer), std::move(inner)});
}
RegExprPtr pair(RegExprPtr a, RegExprPtr b) {
  return make(RegisterExpr::Kind::pair, {std::move(a), std::move(b)});
}
RegExprPtr tensor(RegExprPtr a, RegExprPtr b) {
  return make(RegisterExpr::Kind::tensor, {std::move(a), std::move(b)});
}
RegExprPtr mapped(CMatrix u, RegExprPtr of) {
  auto e = std::make_shared<RegisterExpr>();
  e->kind = RegisterExpr::Kind::mapped;
  e->u = std::move(u);
  e->args = {std::move(of)};
  return e;
}
RegExprPtr complement(RegExprPtr of) {
  return make(RegisterExpr::Kind::complement, {std::move(of)});
}
}  // namespace reg

std::string to_string(const RegisterExpr& e) {
  using K = RegisterExpr::Kind;
  switch (e.kind) {
    case K::named: return e.name;
    case K::mapped: return "mapped(<" + std::to_string(e.u.rows()) + "x" +
                           std::to_string(e.u.cols()) + ">, " + to_string(*e.args.at(0)) + ")";
    default: break;
  }
  std::string out = kind_name(e.kind);
  if (e.args.empty()) return out;
  out += "(";
  for (std::size_t i = 0; i < e.args.size(); ++i) {
    if (i) out += ", ";
    out += to_string(*e.args[i]);
  }
  return out + ")";
}

// ---------------------------------------------------------------------------

Memory::Memory(std::vector<Factor> layout, Tolerance tol) : layout_(std::move(layout)), tol_(tol) {
  if (layout_.empty()) throw InvalidArgument("memory layout is empty");
  std::vector<std::size_t> dims;
  std::vector<TypePtr> types;
  std::set<std::string> seen;
  for (const auto& f : layout_) {
    if (f.dim == 0) throw InvalidArgument("factor '" + f.name + "' has dimension 0");
    if (f.name.empty()) throw InvalidArgument("layout factors need names");
    if (!seen.insert(f.name).second) throw InvalidArgument("duplicate factor '" + f.name + "'");
    dims.push_back(f.dim);
    if (f.shape.empty()) {
      types.push_back(leaf_type(f.dim));
      continue;
    }
    std::size_t prod = 1;
    for (std::size_t d : f.shape) {
      if (d == 0) throw InvalidArgument("factor '" + f.name + "' has a zero shape entry");
      prod *= d;
    }
    if (prod != f.dim) {
      throw InvalidArgument("shape of factor '" + f.name + "' does not multiply to " +
                            std::to_string(f.dim));
    }
    TypePtr t = leaf_type(f.shape.back());
    for (std::size_t i = f.shape.size() - 1; i-- > 0;) t = product_type(leaf_type(f.shape[i]), t);
    types.push_back(std::move(t));
  }
  type_ = types.back();
  for (std::size_t i = types.size() - 1; i-- > 0;) type_ = product_type(types[i], type_);
  for (std::size_t i = 0; i < layout_.size(); ++i) {
    named_.emplace(layout_[i].name, Resolved{factor_register(dims, i), types[i]});
  }
}

void Memory::define(const std::string& name, const RegExprPtr& e) {
  if (name.empty()) throw InvalidArgument("register names must be non-empty");
  if (has(name)) throw InvalidArgument("register '" + name + "' is already defined");
  named_.emplace(name, resolve(e, *this));
}

const Resolved& Memory::lookup(const std::string& name) const {
  const auto it = named_.find(name);
  if (it == named_.end()) throw TypeError("", "unknown register '" + name + "'");
  return it->second;
}

std::vector<std::string> Memory::names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : named_) out.push_back(k);
  return out;
}

Resolved resolve(const RegExprPtr& e, const Memory& mem) {
  return resolve_at(e, mem.type(), mem, "");
}

// ---------------------------------------------------------------------------

Command Command::apply(RegExprPtr reg, CMatrix u) {
  Command c;
  c.kind = Kind::apply;
  c.reg = std::move(reg);
  c.u = std::move(u);
  return c;
}

Command Command::guard(RegExprPtr reg, std::size_t x) {
  Command c;
  c.kind = Kind::guard;
  c.reg = std::move(reg);
  c.x = x;
  return c;
}

CMatrix command_operator(const Command& c, const Memory& mem) {
  const Resolved r = resolve(c.reg, mem);
  const std::size_t m = r.reg.domain_dim();
  if (c.kind == Command::Kind::apply) {
    if (c.u.rows() != idx(m) || c.u.cols() != idx(m)) {
      throw InvalidArgument("apply: unitary must be " + std::to_string(m) + "x" +
                            std::to_string(m) + " for register " + to_string(*c.reg));
    }
    if (!classify_operator(c.u, mem.tolerance()).unitary) {
      throw InvalidArgument("apply: matrix is not unitary");
    }
    return r.reg.apply(c.u);
  }
  if (c.x >= m) {
    throw InvalidArgument("guard: basis label " + std::to_string(c.x) +
                          " out of range for a register of dimension " + std::to_string(m));
  }
  return r.reg.apply(matrix_unit(m, c.x, c.x));
}

CMatrix denote(const Program& p, const Memory& mem) {
  CMatrix d = identity(mem.dim());
  for (const auto& c : p) d = command_operator(c, mem) * d;
  return d;
}

// ---------------------------------------------------------------------------

namespace pred {
PredPtr qeq(RegExprPtr reg, CVector psi) {
  auto p = std::make_shared<Predicate>();
  p->kind = Predicate::Kind::qeq;
  p->reg = std::move(reg);
  p->state = std::move(psi);
  return p;
}
PredPtr intersect(PredPtr a, PredPtr b) {
  auto p = std::make_shared<Predicate>();
  p->kind = Predicate::Kind::intersect;
  p->args = {std::move(a), std::move(b)};
  return p;
}
PredPtr apply_op(RegExprPtr reg, CMatrix op, PredPtr of) {
  auto p = std::make_shared<Predicate>();
  p->kind = Predicate::Kind::apply_op;
  p->reg = std::move(reg);
  p->op = std::move(op);
  p->args = {std::move(of)};
  return p;
}
PredPtr full() {
  auto p = std::make_shared<Predicate>();
  p->kind = Predicate::Kind::full;
  return p;
}
PredPtr zero() {
  auto p = std::make_shared<Predicate>();
  p->kind = Predicate::Kind::zero;
  return p;
}
}  // namespace pred

namespace {

struct QeqParts {
  QRegister reg;
  CMatrix projector;
};

QeqParts qeq_parts(const Predicate& p, const Memory& mem) {
  const Resolved r = resolve(p.reg, mem);
  if (p.state.size() != idx(r.reg.domain_dim())) {
    throw InvalidArgument("qeq: state has dimension " + std::to_string(p.state.size()) +
                          ", register " + to_string(*p.reg) + " has dimension " +
                          std::to_string(r.reg.domain_dim()));
  }
  return {r.reg, outer(p.state, p.state)};
}

}  // namespace

Subspace pred_eval(const PredPtr& p, const Memory& mem, IntersectMode mode) {
  if (!p) throw InvalidArgument("missing predicate");
  const Tolerance tol = mem.tolerance();
  switch (p->kind) {
    case Predicate::Kind::full: return Subspace::full(mem.dim());
    case Predicate::Kind::zero: return Subspace::zero(mem.dim());
    case Predicate::Kind::qeq: {
      const QeqParts q = qeq_parts(*p, mem);
      return orthonormal_range_basis(q.reg.apply(q.projector), tol);
    }
    case Predicate::Kind::apply_op: {
      const Resolved r = resolve(p->reg, mem);
      const auto m = idx(r.reg.domain_dim());
      if (p->op.rows() != m || p->op.cols() != m) {
        throw InvalidArgument("apply_op: operator has the wrong shape for " + to_string(*p->reg));
      }
      return image(r.reg.apply(p->op), pred_eval(p->args.at(0), mem, mode), tol);
    }
    case Predicate::Kind::intersect: {
      const PredPtr& a = p->args.at(0);
      const PredPtr& b = p->args.at(1);
      if (mode == IntersectMode::automatic && a->kind == Predicate::Kind::qeq &&
          b->kind == Predicate::Kind::qeq) {
        const QeqParts qa = qeq_parts(*a, mem);
        const QeqParts qb = qeq_parts(*b, mem);
        if (compatible(qa.reg, qb.reg, tol)) {
          return orthonormal_range_basis(qa.reg.apply(qa.projector) * qb.reg.apply(qb.projector),
                                         tol);
        }
      }
      return intersect(pred_eval(a, mem, mode), pred_eval(b, mem, mode), tol);
    }
  }
  throw InvalidArgument("unknown predicate kind");
}

// ---------------------------------------------------------------------------

TripleReport check_inclusion(const Subspace& a, const CMatrix& d, const Subspace& b,
                             Tolerance tol) {
  const auto n = idx(b.ambient_dim());
  if (d.rows() != n || d.cols() != idx(a.ambient_dim())) {
    throw DimensionError("check_inclusion: operator does not map A's space into B's");
  }
  TripleReport r;
  r.memory_dim = b.ambient_dim();
  r.pre_rank = a.rank();
  if (a.rank() == 0) return r;
  const CMatrix images = d * a.basis();
  const CMatrix outside = images - b.basis() * (b.basis().adjoint() * images);
  for (Eigen::Index j = 0; j < images.cols(); ++j) {
    const double res = outside.col(j).norm();
    r.residual = std::max(r.residual, res);
    if (res > tol.eps() * (1.0 + images.col(j).norm()) && r.holds) {
      r.holds = false;
      r.witness = a.basis().col(j);
      r.witness_image = images.col(j);
    }
  }
  return r;
}

TripleReport check_triple(const PredPtr& a, const Program& p, const PredPtr& b,
                          const Memory& mem) {
  return check_inclusion(pred_eval(a, mem), denote(p, mem), pred_eval(b, mem), mem.tolerance());
}

// ---------------------------------------------------------------------------

namespace {

void require_inclusion(const Subspace& inner, const CMatrix& d, const Subspace& outer,
                       Tolerance tol, const std::string& what) {
  const TripleReport r = check_inclusion(inner, d, outer, tol);
  if (!r.holds) throw RuleRejected(what, r.residual);
}

}  // namespace

Judgment rule_skip(const Subspace& a, const Subspace& b, Tolerance tol) {
  require_inclusion(a, identity(a.ambient_dim()), b, tol, "Skip: A is not contained in B");
  return {a, {}, b};
}

Judgment rule_weaken(const Subspace& a, const Subspace& b, const Judgment& j, Tolerance tol) {
  require_inclusion(a, identity(a.ambient_dim()), j.pre, tol,
                    "Weaken: A is not contained in the premise's precondition");
  require_inclusion(j.post, identity(j.post.ambient_dim()), b, tol,
                    "Weaken: the premise's postcondition is not contained in B");
  return {a, j.program, b};
}

Judgment rule_seq(const Judgment& first, const Judgment& second, Tolerance tol) {
  if (!same_subspace(first.post, second.pre, tol)) {
    const TripleReport r = check_inclusion(first.post, identity(first.post.ambient_dim()),
                                           second.pre, tol);
    const TripleReport back = check_inclusion(second.pre, identity(second.pre.ambient_dim()),
                                              first.post, tol);
    throw RuleRejected("Seq: intermediate conditions differ", std::max(r.residual, back.residual));
  }
  Program p = first.program;
  p.insert(p.end(), second.program.begin(), second.program.end());
  return {first.pre, std::move(p), second.post};
}

Judgment rule_apply(const Subspace& a, const Command& c, const Subspace& b, const Memory& mem) {
  if (c.kind != Command::Kind::apply) throw InvalidArgument("Apply: command is not an apply");
  require_inclusion(a, command_operator(c, mem), b, mem.tolerance(), "Apply: F(U)·A is not in B");
  return {a, {c}, b};
}

Judgment rule_if(const Subspace& a, const Command& c, const Subspace& b, const Memory& mem) {
  if (c.kind != Command::Kind::guard) throw InvalidArgument("If: command is not a guard");
  require_inclusion(a, command_operator(c, mem), b, mem.tolerance(),
                    "If: G(|x><x|)·A is not in B");
  return {a, {c}, b};
}

}  // namespace regcalc
