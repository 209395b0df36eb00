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

#include "regcalc/scenario_file.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "regcalc/errors.hpp"
#include "regcalc/gates.hpp"
#include "regcalc/lifting.hpp"

namespace regcalc {

using Json = nlohmann::ordered_json;

ScenarioError::ScenarioError(std::string pointer, const std::string& msg,
                             std::optional<std::size_t> line)
    : std::runtime_error((line ? "line " + std::to_string(*line) + ": "
                               : (pointer.empty() ? std::string() : pointer + ": ")) +
                         msg),
      pointer_(std::move(pointer)),
      line_(line) {}

std::string type_path_to_pointer(const std::string& path) {
  std::string out;
  std::stringstream ss(path);
  std::string part;
  while (std::getline(ss, part, '.')) {
    if (part.empty()) continue;
    const auto open = part.find('[');
    if (open == std::string::npos) {
      out += "/" + part;
    } else {
      out += "/" + part.substr(0, open) + "/" + part.substr(open + 1, part.find(']') - open - 1);
    }
  }
  return out;
}

namespace {

Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

std::string escape(const std::string& key) {
  std::string out;
  for (char ch : key) {
    if (ch == '~') out += "~0";
    else if (ch == '/') out += "~1";
    else out += ch;
  }
  return out;
}

std::string at(const std::string& ptr, const std::string& key) { return ptr + "/" + escape(key); }
std::string at(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

/// The message of a TypeError without its path prefix.
std::string bare_message(const TypeError& e) {
  const std::string what = e.what();
  const auto pos = what.find(": ");
  return pos == std::string::npos ? what : what.substr(pos + 2);
}

// Decoding ------------------------------------------------------------------

void require_object(const Json& j, const std::string& ptr) {
  if (!j.is_object()) throw ScenarioError(ptr, "expected an object");
}

void require_array(const Json& j, const std::string& ptr) {
  if (!j.is_array()) throw ScenarioError(ptr, "expected an array");
}

void allow_keys(const Json& j, const std::string& ptr, std::initializer_list<const char*> allowed,
                std::initializer_list<const char*> required = {}) {
  require_object(j, ptr);
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw ScenarioError(at(ptr, key), "unexpected key '" + key + "'");
    }
  }
  for (const char* r : required) {
    if (!j.contains(r)) throw ScenarioError(ptr, std::string("missing key '") + r + "'");
  }
}

/// The single key of a tagged node.
std::string tag_of(const Json& j, const std::string& ptr) {
  require_object(j, ptr);
  if (j.size() != 1) throw ScenarioError(ptr, "expected an object with exactly one key");
  return j.items().begin().key();
}

std::string decode_string(const Json& j, const std::string& ptr) {
  if (!j.is_string()) throw ScenarioError(ptr, "expected a string");
  return j.get<std::string>();
}

std::size_t decode_size(const Json& j, const std::string& ptr) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    throw ScenarioError(ptr, "expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

Complex decode_complex(const Json& j, const std::string& ptr) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ScenarioError(ptr, "expected a complex number [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

bool is_complex(const Json& j) {
  return j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number();
}

/// A flat array of complex numbers is a column vector; an array of such
/// arrays is a matrix given row by row.
MatrixRef decode_matrix(const Json& j, const std::string& ptr) {
  MatrixRef m;
  if (j.is_string()) {
    m.name = j.get<std::string>();
    return m;
  }
  require_array(j, ptr);
  if (j.empty()) throw ScenarioError(ptr, "empty matrix");
  if (is_complex(j[0])) {
    m.is_vector = true;
    m.literal.resize(idx(j.size()), 1);
    for (std::size_t i = 0; i < j.size(); ++i) m.literal(idx(i), 0) = decode_complex(j[i], at(ptr, i));
    return m;
  }
  const std::size_t rows = j.size();
  require_array(j[0], at(ptr, 0));
  const std::size_t cols = j[0].size();
  if (cols == 0) throw ScenarioError(at(ptr, 0), "empty matrix row");
  m.literal.resize(idx(rows), idx(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rp = at(ptr, r);
    require_array(j[r], rp);
    if (j[r].size() != cols) {
      throw ScenarioError(rp, "row has " + std::to_string(j[r].size()) + " entries, expected " +
                                  std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) m.literal(idx(r), idx(c)) = decode_complex(j[r][c], at(rp, c));
  }
  return m;
}

const std::map<std::string, RegisterExpr::Kind>& nullary_kinds() {
  using K = RegisterExpr::Kind;
  static const std::map<std::string, K> kinds{{"fst", K::fst},     {"snd", K::snd},
                                              {"swap", K::swap},   {"assoc", K::assoc},
                                              {"assoc_inv", K::assoc_inv}, {"id", K::id}};
  return kinds;
}

const std::map<std::string, RegisterExpr::Kind>& binary_kinds() {
  using K = RegisterExpr::Kind;
  static const std::map<std::string, K> kinds{
      {"chain", K::chain}, {"pair", K::pair}, {"tensor", K::tensor}};
  return kinds;
}

RegNode decode_reg(const Json& j, const std::string& ptr) {
  using K = RegisterExpr::Kind;
  RegNode n;
  if (j.is_string()) {
    n.kind = K::named;
    n.name = j.get<std::string>();
    return n;
  }
  const std::string tag = tag_of(j, ptr);
  const Json& body = j.at(tag);
  const std::string bp = at(ptr, tag);
  if (const auto it = nullary_kinds().find(tag); it != nullary_kinds().end()) {
    if (!body.is_null()) throw ScenarioError(bp, "expected null");
    n.kind = it->second;
    return n;
  }
  if (const auto it = binary_kinds().find(tag); it != binary_kinds().end()) {
    require_array(body, bp);
    if (body.size() != 2) throw ScenarioError(bp, "expected two register expressions");
    n.kind = it->second;
    n.args = {decode_reg(body[0], at(bp, 0)), decode_reg(body[1], at(bp, 1))};
    return n;
  }
  if (tag == "mapped") {
    allow_keys(body, bp, {"u", "of"}, {"u", "of"});
    n.kind = K::mapped;
    n.u = decode_matrix(body.at("u"), at(bp, "u"));
    n.args = {decode_reg(body.at("of"), at(bp, "of"))};
    return n;
  }
  if (tag == "complement") {
    n.kind = K::complement;
    n.args = {decode_reg(body, bp)};
    return n;
  }
  throw ScenarioError(bp, "unknown register constructor '" + tag + "'");
}

CommandNode decode_command(const Json& j, const std::string& ptr) {
  const std::string tag = tag_of(j, ptr);
  const std::string bp = at(ptr, tag);
  const Json& body = j.at(tag);
  CommandNode c;
  if (tag == "apply") {
    allow_keys(body, bp, {"reg", "u"}, {"reg", "u"});
    c.kind = Command::Kind::apply;
    c.reg = decode_reg(body.at("reg"), at(bp, "reg"));
    c.u = decode_matrix(body.at("u"), at(bp, "u"));
  } else if (tag == "guard") {
    allow_keys(body, bp, {"reg", "x"}, {"reg", "x"});
    c.kind = Command::Kind::guard;
    c.reg = decode_reg(body.at("reg"), at(bp, "reg"));
    c.x = decode_size(body.at("x"), at(bp, "x"));
  } else {
    throw ScenarioError(bp, "unknown command '" + tag + "'");
  }
  return c;
}

std::vector<CommandNode> decode_commands(const Json& j, const std::string& ptr) {
  require_array(j, ptr);
  std::vector<CommandNode> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(decode_command(j[i], at(ptr, i)));
  return out;
}

ProgramRef decode_program_ref(const Json& j, const std::string& ptr) {
  ProgramRef p;
  if (j.is_string()) {
    p.name = j.get<std::string>();
  } else {
    p.inline_commands = decode_commands(j, ptr);
  }
  return p;
}

PredNode decode_pred(const Json& j, const std::string& ptr) {
  using K = PredNode::Kind;
  const std::string tag = tag_of(j, ptr);
  const std::string bp = at(ptr, tag);
  const Json& body = j.at(tag);
  PredNode p;
  if (tag == "qeq") {
    allow_keys(body, bp, {"reg", "state"}, {"reg", "state"});
    p.kind = K::qeq;
    p.reg = decode_reg(body.at("reg"), at(bp, "reg"));
    p.state = decode_matrix(body.at("state"), at(bp, "state"));
  } else if (tag == "intersect") {
    require_array(body, bp);
    if (body.size() != 2) throw ScenarioError(bp, "expected two predicates");
    p.kind = K::intersect;
    p.args = {decode_pred(body[0], at(bp, 0)), decode_pred(body[1], at(bp, 1))};
  } else if (tag == "apply_op") {
    allow_keys(body, bp, {"reg", "op", "of"}, {"reg", "op", "of"});
    p.kind = K::apply_op;
    p.reg = decode_reg(body.at("reg"), at(bp, "reg"));
    p.op = decode_matrix(body.at("op"), at(bp, "op"));
    p.args = {decode_pred(body.at("of"), at(bp, "of"))};
  } else if (tag == "full" || tag == "zero") {
    if (!body.is_null()) throw ScenarioError(bp, "expected null");
    p.kind = tag == "full" ? K::full : K::zero;
  } else if (tag == "pred") {
    p.kind = K::ref;
    p.name = decode_string(body, bp);
  } else {
    throw ScenarioError(bp, "unknown predicate '" + tag + "'");
  }
  return p;
}

std::vector<RegNode> decode_regs(const Json& j, const std::string& ptr) {
  require_array(j, ptr);
  std::vector<RegNode> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(decode_reg(j[i], at(ptr, i)));
  return out;
}

OpExpr decode_op(const Json& j, const std::string& ptr) {
  using K = OpExpr::Kind;
  OpExpr o;
  if (j.is_string() || j.is_array()) {
    o.kind = K::matrix;
    o.matrix = decode_matrix(j, ptr);
    return o;
  }
  const std::string tag = tag_of(j, ptr);
  const std::string bp = at(ptr, tag);
  const Json& body = j.at(tag);
  if (tag == "program") {
    o.kind = K::program;
    o.program = decode_program_ref(body, bp);
  } else if (tag == "lift") {
    allow_keys(body, bp, {"reg", "op"}, {"reg", "op"});
    o.kind = K::lift;
    o.reg = decode_reg(body.at("reg"), at(bp, "reg"));
    o.args = {decode_op(body.at("op"), at(bp, "op"))};
  } else if (tag == "lift_mixed") {
    allow_keys(body, bp, {"regs", "ops"}, {"regs", "ops"});
    o.kind = K::lift_mixed;
    o.regs = decode_regs(body.at("regs"), at(bp, "regs"));
    const std::string op = at(bp, "ops");
    require_array(body.at("ops"), op);
    for (std::size_t i = 0; i < body.at("ops").size(); ++i) {
      o.args.push_back(decode_op(body.at("ops")[i], at(op, i)));
    }
  } else if (tag == "product") {
    require_array(body, bp);
    if (body.empty()) throw ScenarioError(bp, "empty product");
    o.kind = K::product;
    for (std::size_t i = 0; i < body.size(); ++i) o.args.push_back(decode_op(body[i], at(bp, i)));
  } else if (tag == "scale") {
    allow_keys(body, bp, {"by", "of"}, {"by", "of"});
    o.kind = K::scale;
    o.factor = decode_complex(body.at("by"), at(bp, "by"));
    o.args = {decode_op(body.at("of"), at(bp, "of"))};
  } else if (tag == "evolve") {
    allow_keys(body, bp, {"program", "of"}, {"program", "of"});
    o.kind = K::evolve;
    o.program = decode_program_ref(body.at("program"), at(bp, "program"));
    o.args = {decode_op(body.at("of"), at(bp, "of"))};
  } else {
    throw ScenarioError(bp, "unknown operator expression '" + tag + "'");
  }
  return o;
}

StateExpr decode_state(const Json& j, const std::string& ptr) {
  using K = StateExpr::Kind;
  StateExpr s;
  if (j.is_string() || j.is_array()) {
    s.kind = K::vector;
    s.vector = decode_matrix(j, ptr);
    return s;
  }
  const std::string tag = tag_of(j, ptr);
  const std::string bp = at(ptr, tag);
  const Json& body = j.at(tag);
  if (tag == "lift_pure") {
    allow_keys(body, bp, {"regs", "states"}, {"regs", "states"});
    s.kind = K::lift_pure;
    s.regs = decode_regs(body.at("regs"), at(bp, "regs"));
    const std::string sp = at(bp, "states");
    require_array(body.at("states"), sp);
    for (std::size_t i = 0; i < body.at("states").size(); ++i) {
      s.args.push_back(decode_state(body.at("states")[i], at(sp, i)));
    }
  } else if (tag == "apply") {
    allow_keys(body, bp, {"op", "of"}, {"op", "of"});
    s.kind = K::apply;
    s.op = decode_op(body.at("op"), at(bp, "op"));
    s.args = {decode_state(body.at("of"), at(bp, "of"))};
  } else {
    throw ScenarioError(bp, "unknown state expression '" + tag + "'");
  }
  return s;
}

CheckNode decode_check(const Json& j, const std::string& ptr) {
  require_object(j, ptr);
  CheckNode c;
  std::string kind;
  for (const auto& [key, value] : j.items()) {
    if (key == "name") {
      c.name = decode_string(value, at(ptr, key));
    } else if (kind.empty()) {
      kind = key;
    } else {
      throw ScenarioError(at(ptr, key), "a check has exactly one kind");
    }
  }
  if (kind.empty()) throw ScenarioError(ptr, "missing check kind");
  const std::string bp = at(ptr, kind);
  const Json& body = j.at(kind);
  if (kind == "triple") {
    allow_keys(body, bp, {"pre", "program", "post"}, {"pre", "program", "post"});
    c.kind = CheckNode::Kind::triple;
    c.pre = decode_pred(body.at("pre"), at(bp, "pre"));
    c.program = decode_program_ref(body.at("program"), at(bp, "program"));
    c.post = decode_pred(body.at("post"), at(bp, "post"));
  } else if (kind == "operator_equal") {
    allow_keys(body, bp, {"lhs", "rhs"}, {"lhs", "rhs"});
    c.kind = CheckNode::Kind::operator_equal;
    c.lhs_op = decode_op(body.at("lhs"), at(bp, "lhs"));
    c.rhs_op = decode_op(body.at("rhs"), at(bp, "rhs"));
  } else if (kind == "state_equal") {
    allow_keys(body, bp, {"lhs", "rhs"}, {"lhs", "rhs"});
    c.kind = CheckNode::Kind::state_equal;
    c.lhs_state = decode_state(body.at("lhs"), at(bp, "lhs"));
    c.rhs_state = decode_state(body.at("rhs"), at(bp, "rhs"));
  } else if (kind == "mixed_state") {
    allow_keys(body, bp, {"state", "reg", "expected"}, {"state", "reg", "expected"});
    c.kind = CheckNode::Kind::mixed_state;
    c.lhs_op = decode_op(body.at("state"), at(bp, "state"));
    c.reg = decode_reg(body.at("reg"), at(bp, "reg"));
    c.rhs_op = decode_op(body.at("expected"), at(bp, "expected"));
  } else {
    throw ScenarioError(bp, "unknown check kind '" + kind + "'");
  }
  return c;
}

ScenarioFile decode_file(const Json& j) {
  allow_keys(j, "", {"layout", "tolerance", "constants", "registers", "programs", "predicates",
                     "checks"},
             {"layout"});
  ScenarioFile f;
  const Json& layout = j.at("layout");
  require_array(layout, "/layout");
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const std::string p = at("/layout", i);
    allow_keys(layout[i], p, {"name", "dim", "shape"}, {"name", "dim"});
    Memory::Factor fac{decode_string(layout[i].at("name"), at(p, "name")),
                       decode_size(layout[i].at("dim"), at(p, "dim"))};
    if (layout[i].contains("shape")) {
      const std::string sp = at(p, "shape");
      require_array(layout[i].at("shape"), sp);
      for (std::size_t k = 0; k < layout[i].at("shape").size(); ++k) {
        fac.shape.push_back(decode_size(layout[i].at("shape")[k], at(sp, k)));
      }
    }
    f.layout.push_back(std::move(fac));
  }
  if (j.contains("tolerance")) {
    const Json& t = j.at("tolerance");
    if (!t.is_number() || !(t.get<double>() > 0)) {
      throw ScenarioError("/tolerance", "expected a positive number");
    }
    f.tolerance = t.get<double>();
  }
  if (j.contains("constants")) {
    require_object(j.at("constants"), "/constants");
    for (const auto& [name, value] : j.at("constants").items()) {
      const std::string p = at("/constants", name);
      if (!value.is_array()) throw ScenarioError(p, "constants must be literal matrices or states");
      const MatrixRef m = decode_matrix(value, p);
      f.constants.push_back({name, m.literal, m.is_vector});
    }
  }
  if (j.contains("registers")) {
    require_object(j.at("registers"), "/registers");
    for (const auto& [name, value] : j.at("registers").items()) {
      f.registers.emplace_back(name, decode_reg(value, at("/registers", name)));
    }
  }
  if (j.contains("programs")) {
    require_object(j.at("programs"), "/programs");
    for (const auto& [name, value] : j.at("programs").items()) {
      f.programs.push_back({name, decode_commands(value, at("/programs", name))});
    }
  }
  if (j.contains("predicates")) {
    require_object(j.at("predicates"), "/predicates");
    for (const auto& [name, value] : j.at("predicates").items()) {
      f.predicates.emplace_back(name, decode_pred(value, at("/predicates", name)));
    }
  }
  if (j.contains("checks")) {
    require_array(j.at("checks"), "/checks");
    for (std::size_t i = 0; i < j.at("checks").size(); ++i) {
      f.checks.push_back(decode_check(j.at("checks")[i], at("/checks", i)));
    }
  }
  return f;
}

// Encoding ------------------------------------------------------------------

Json encode_complex(Complex z) { return Json::array({z.real(), z.imag()}); }

Json encode_literal(const CMatrix& m, bool is_vector) {
  Json out = Json::array();
  if (is_vector) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(encode_complex(m(i, 0)));
    return out;
  }
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(encode_complex(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Json encode_matrix(const MatrixRef& m) {
  if (!m.name.empty()) return m.name;
  return encode_literal(m.literal, m.is_vector);
}

Json encode_reg(const RegNode& n) {
  using K = RegisterExpr::Kind;
  if (n.kind == K::named) return n.name;
  for (const auto& [tag, kind] : nullary_kinds()) {
    if (kind == n.kind) return Json{{tag, nullptr}};
  }
  for (const auto& [tag, kind] : binary_kinds()) {
    if (kind == n.kind) return Json{{tag, Json::array({encode_reg(n.args[0]), encode_reg(n.args[1])})}};
  }
  if (n.kind == K::mapped) {
    return Json{{"mapped", Json{{"u", encode_matrix(n.u)}, {"of", encode_reg(n.args[0])}}}};
  }
  return Json{{"complement", encode_reg(n.args[0])}};
}

Json encode_command(const CommandNode& c) {
  if (c.kind == Command::Kind::apply) {
    return Json{{"apply", Json{{"reg", encode_reg(c.reg)}, {"u", encode_matrix(c.u)}}}};
  }
  return Json{{"guard", Json{{"reg", encode_reg(c.reg)}, {"x", c.x}}}};
}

Json encode_commands(const std::vector<CommandNode>& cs) {
  Json out = Json::array();
  for (const auto& c : cs) out.push_back(encode_command(c));
  return out;
}

Json encode_program_ref(const ProgramRef& p) {
  if (!p.name.empty()) return p.name;
  return encode_commands(p.inline_commands);
}

Json encode_pred(const PredNode& p) {
  using K = PredNode::Kind;
  switch (p.kind) {
    case K::qeq:
      return Json{{"qeq", Json{{"reg", encode_reg(p.reg)}, {"state", encode_matrix(p.state)}}}};
    case K::intersect:
      return Json{{"intersect", Json::array({encode_pred(p.args[0]), encode_pred(p.args[1])})}};
    case K::apply_op:
      return Json{{"apply_op", Json{{"reg", encode_reg(p.reg)},
                                    {"op", encode_matrix(p.op)},
                                    {"of", encode_pred(p.args[0])}}}};
    case K::full: return Json{{"full", nullptr}};
    case K::zero: return Json{{"zero", nullptr}};
    case K::ref: return Json{{"pred", p.name}};
  }
  return nullptr;
}

Json encode_regs(const std::vector<RegNode>& regs) {
  Json out = Json::array();
  for (const auto& r : regs) out.push_back(encode_reg(r));
  return out;
}

Json encode_op(const OpExpr& o) {
  using K = OpExpr::Kind;
  switch (o.kind) {
    case K::matrix: return encode_matrix(o.matrix);
    case K::program: return Json{{"program", encode_program_ref(o.program)}};
    case K::lift:
      return Json{{"lift", Json{{"reg", encode_reg(o.reg)}, {"op", encode_op(o.args[0])}}}};
    case K::lift_mixed: {
      Json ops = Json::array();
      for (const auto& a : o.args) ops.push_back(encode_op(a));
      return Json{{"lift_mixed", Json{{"regs", encode_regs(o.regs)}, {"ops", std::move(ops)}}}};
    }
    case K::product: {
      Json ops = Json::array();
      for (const auto& a : o.args) ops.push_back(encode_op(a));
      return Json{{"product", std::move(ops)}};
    }
    case K::scale:
      return Json{{"scale", Json{{"by", encode_complex(o.factor)}, {"of", encode_op(o.args[0])}}}};
    case K::evolve:
      return Json{{"evolve", Json{{"program", encode_program_ref(o.program)},
                                  {"of", encode_op(o.args[0])}}}};
  }
  return nullptr;
}

Json encode_state(const StateExpr& s) {
  using K = StateExpr::Kind;
  switch (s.kind) {
    case K::vector: return encode_matrix(s.vector);
    case K::lift_pure: {
      Json states = Json::array();
      for (const auto& a : s.args) states.push_back(encode_state(a));
      return Json{{"lift_pure", Json{{"regs", encode_regs(s.regs)}, {"states", std::move(states)}}}};
    }
    case K::apply:
      return Json{{"apply", Json{{"op", encode_op(*s.op)}, {"of", encode_state(s.args[0])}}}};
  }
  return nullptr;
}

Json encode_check(const CheckNode& c) {
  Json out = Json::object();
  if (!c.name.empty()) out["name"] = c.name;
  switch (c.kind) {
    case CheckNode::Kind::triple:
      out["triple"] = Json{{"pre", encode_pred(c.pre)},
                           {"program", encode_program_ref(c.program)},
                           {"post", encode_pred(c.post)}};
      break;
    case CheckNode::Kind::operator_equal:
      out["operator_equal"] = Json{{"lhs", encode_op(*c.lhs_op)}, {"rhs", encode_op(*c.rhs_op)}};
      break;
    case CheckNode::Kind::state_equal:
      out["state_equal"] =
          Json{{"lhs", encode_state(*c.lhs_state)}, {"rhs", encode_state(*c.rhs_state)}};
      break;
    case CheckNode::Kind::mixed_state:
      out["mixed_state"] = Json{{"state", encode_op(*c.lhs_op)},
                                {"reg", encode_reg(c.reg)},
                                {"expected", encode_op(*c.rhs_op)}};
      break;
  }
  return out;
}

// Compilation -----------------------------------------------------------------

struct PreparedCheck {
  std::string name;
  CheckNode::Kind kind;
  PredPtr pre, post;
  Program program;
  CMatrix lhs, rhs;
};

class Compiler {
 public:
  Compiler(const ScenarioFile& f, Tolerance tol) : file_(f), tol_(tol) {}

  Memory build_memory() {
    try {
      return Memory(file_.layout, tol_);
    } catch (const InvalidArgument& e) {
      throw ScenarioError("/layout", e.what());
    }
  }

  std::vector<PreparedCheck> compile(Memory& mem) {
    for (std::size_t i = 0; i < file_.constants.size(); ++i) {
      const auto& c = file_.constants[i];
      if (!constants_.emplace(c.name, c.value).second) {
        throw ScenarioError(at("/constants", c.name), "duplicate constant");
      }
    }
    for (const auto& [name, node] : file_.registers) {
      const std::string p = at("/registers", name);
      const RegExprPtr e = expr(node, p);
      try {
        mem.define(name, e);
      } catch (const TypeError& err) {
        throw ScenarioError(p + type_path_to_pointer(err.path()), bare_message(err));
      } catch (const std::exception& err) {
        throw ScenarioError(p, err.what());
      }
    }
    for (const auto& def : file_.programs) {
      if (programs_.count(def.name)) throw ScenarioError(at("/programs", def.name), "duplicate program");
      programs_.emplace(def.name, program(def.commands, at("/programs", def.name), mem));
    }
    for (const auto& [name, node] : file_.predicates) {
      if (preds_.count(name)) throw ScenarioError(at("/predicates", name), "duplicate predicate");
      preds_.emplace(name, predicate(node, at("/predicates", name), mem));
    }
    std::vector<PreparedCheck> out;
    for (std::size_t i = 0; i < file_.checks.size(); ++i) {
      out.push_back(prepare(file_.checks[i], at("/checks", i), mem));
      if (out.back().name.empty()) out.back().name = "check " + std::to_string(i);
    }
    return out;
  }

 private:
  CMatrix matrix(const MatrixRef& m, const std::string& ptr) const {
    if (m.name.empty()) return m.literal;
    if (const auto it = constants_.find(m.name); it != constants_.end()) return it->second;
    throw ScenarioError(ptr, "unknown constant '" + m.name + "'");
  }

  RegExprPtr expr(const RegNode& n, const std::string& ptr) const {
    using K = RegisterExpr::Kind;
    switch (n.kind) {
      case K::named: return reg::named(n.name);
      case K::fst: return reg::fst();
      case K::snd: return reg::snd();
      case K::swap: return reg::swap();
      case K::assoc: return reg::assoc();
      case K::assoc_inv: return reg::assoc_inv();
      case K::id: return reg::id();
      case K::chain:
        return reg::chain(expr(n.args[0], ptr + "/chain/0"), expr(n.args[1], ptr + "/chain/1"));
      case K::pair:
        return reg::pair(expr(n.args[0], ptr + "/pair/0"), expr(n.args[1], ptr + "/pair/1"));
      case K::tensor:
        return reg::tensor(expr(n.args[0], ptr + "/tensor/0"), expr(n.args[1], ptr + "/tensor/1"));
      case K::mapped:
        return reg::mapped(matrix(n.u, ptr + "/mapped/u"), expr(n.args[0], ptr + "/mapped/of"));
      case K::complement: return reg::complement(expr(n.args[0], ptr + "/complement"));
    }
    throw ScenarioError(ptr, "unknown register expression");
  }

  Resolved resolved(const RegNode& n, const std::string& ptr, const Memory& mem) const {
    const RegExprPtr e = expr(n, ptr);
    try {
      return resolve(e, mem);
    } catch (const TypeError& err) {
      throw ScenarioError(ptr + type_path_to_pointer(err.path()), bare_message(err));
    } catch (const std::exception& err) {
      throw ScenarioError(ptr, err.what());
    }
  }

  static void require_shape(const CMatrix& m, std::size_t rows, std::size_t cols,
                            const std::string& ptr) {
    if (static_cast<std::size_t>(m.rows()) != rows || static_cast<std::size_t>(m.cols()) != cols) {
      throw ScenarioError(ptr, "expected a " + std::to_string(rows) + "x" + std::to_string(cols) +
                                   " matrix, got " + std::to_string(m.rows()) + "x" +
                                   std::to_string(m.cols()));
    }
  }

  Program program(const std::vector<CommandNode>& cmds, const std::string& ptr,
                  const Memory& mem) const {
    Program out;
    for (std::size_t i = 0; i < cmds.size(); ++i) {
      const CommandNode& c = cmds[i];
      const std::string cp = at(ptr, i);
      const bool apply = c.kind == Command::Kind::apply;
      const std::string bp = cp + (apply ? "/apply" : "/guard");
      const Resolved r = resolved(c.reg, bp + "/reg", mem);
      const std::size_t d = r.reg.domain_dim();
      if (apply) {
        const CMatrix u = matrix(c.u, bp + "/u");
        require_shape(u, d, d, bp + "/u");
        if (!classify_operator(u, tol_).unitary) throw ScenarioError(bp + "/u", "matrix is not unitary");
        out.push_back(Command::apply(expr(c.reg, bp + "/reg"), u));
      } else {
        if (c.x >= d) {
          throw ScenarioError(bp + "/x", "basis label " + std::to_string(c.x) +
                                             " is out of range for dimension " + std::to_string(d));
        }
        out.push_back(Command::guard(expr(c.reg, bp + "/reg"), c.x));
      }
    }
    return out;
  }

  Program program_ref(const ProgramRef& p, const std::string& ptr, const Memory& mem) const {
    if (p.name.empty()) return program(p.inline_commands, ptr, mem);
    const auto it = programs_.find(p.name);
    if (it == programs_.end()) throw ScenarioError(ptr, "unknown program '" + p.name + "'");
    return it->second;
  }

  PredPtr predicate(const PredNode& p, const std::string& ptr, const Memory& mem) const {
    using K = PredNode::Kind;
    switch (p.kind) {
      case K::qeq: {
        const std::string bp = ptr + "/qeq";
        const Resolved r = resolved(p.reg, bp + "/reg", mem);
        const CMatrix psi = matrix(p.state, bp + "/state");
        require_shape(psi, r.reg.domain_dim(), 1, bp + "/state");
        return pred::qeq(expr(p.reg, bp + "/reg"), psi.col(0));
      }
      case K::intersect:
        return pred::intersect(predicate(p.args[0], ptr + "/intersect/0", mem),
                               predicate(p.args[1], ptr + "/intersect/1", mem));
      case K::apply_op: {
        const std::string bp = ptr + "/apply_op";
        const Resolved r = resolved(p.reg, bp + "/reg", mem);
        const CMatrix op = matrix(p.op, bp + "/op");
        require_shape(op, r.reg.domain_dim(), r.reg.domain_dim(), bp + "/op");
        return pred::apply_op(expr(p.reg, bp + "/reg"), op, predicate(p.args[0], bp + "/of", mem));
      }
      case K::full: return pred::full();
      case K::zero: return pred::zero();
      case K::ref: {
        const auto it = preds_.find(p.name);
        if (it == preds_.end()) {
          throw ScenarioError(ptr + "/pred", "unknown or later predicate '" + p.name + "'");
        }
        return it->second;
      }
    }
    throw ScenarioError(ptr, "unknown predicate");
  }

  CMatrix op(const OpExpr& o, const std::string& ptr, const Memory& mem) const {
    using K = OpExpr::Kind;
    switch (o.kind) {
      case K::matrix: return matrix(o.matrix, ptr);
      case K::program: return denote(program_ref(o.program, ptr + "/program", mem), mem);
      case K::lift: {
        const std::string bp = ptr + "/lift";
        const Resolved r = resolved(o.reg, bp + "/reg", mem);
        const CMatrix a = op(o.args[0], bp + "/op", mem);
        require_shape(a, r.reg.domain_dim(), r.reg.domain_dim(), bp + "/op");
        return r.reg.apply(a);
      }
      case K::lift_mixed: {
        const std::string bp = ptr + "/lift_mixed";
        if (o.regs.size() != o.args.size()) {
          throw ScenarioError(bp, "regs and ops have different lengths");
        }
        std::vector<QRegister> regs;
        std::vector<CMatrix> ops;
        for (std::size_t i = 0; i < o.regs.size(); ++i) {
          regs.push_back(resolved(o.regs[i], at(bp + "/regs", i), mem).reg);
          ops.push_back(op(o.args[i], at(bp + "/ops", i), mem));
          require_shape(ops.back(), regs.back().domain_dim(), regs.back().domain_dim(),
                        at(bp + "/ops", i));
        }
        try {
          return lift_mixed(regs, ops, tol_);
        } catch (const std::exception& e) {
          throw ScenarioError(bp + "/regs", e.what());
        }
      }
      case K::product: {
        CMatrix acc = op(o.args[0], ptr + "/product/0", mem);
        for (std::size_t i = 1; i < o.args.size(); ++i) {
          const std::string p = at(ptr + "/product", i);
          const CMatrix next = op(o.args[i], p, mem);
          require_shape(next, static_cast<std::size_t>(acc.cols()), static_cast<std::size_t>(next.cols()), p);
          acc = acc * next;
        }
        return acc;
      }
      case K::scale: return o.factor * op(o.args[0], ptr + "/scale/of", mem);
      case K::evolve: {
        const std::string bp = ptr + "/evolve";
        const CMatrix d = denote(program_ref(o.program, bp + "/program", mem), mem);
        const CMatrix rho = op(o.args[0], bp + "/of", mem);
        require_shape(rho, mem.dim(), mem.dim(), bp + "/of");
        return d * rho * d.adjoint();
      }
    }
    throw ScenarioError(ptr, "unknown operator expression");
  }

  CMatrix state(const StateExpr& s, const std::string& ptr, const Memory& mem) const {
    using K = StateExpr::Kind;
    switch (s.kind) {
      case K::vector: {
        const CMatrix v = matrix(s.vector, ptr);
        if (v.cols() != 1) throw ScenarioError(ptr, "expected a state vector");
        return v;
      }
      case K::lift_pure: {
        const std::string bp = ptr + "/lift_pure";
        if (s.regs.size() != s.args.size()) {
          throw ScenarioError(bp, "regs and states have different lengths");
        }
        std::vector<QRegister> regs;
        std::vector<CVector> psis;
        for (std::size_t i = 0; i < s.regs.size(); ++i) {
          regs.push_back(resolved(s.regs[i], at(bp + "/regs", i), mem).reg);
          const CMatrix v = state(s.args[i], at(bp + "/states", i), mem);
          require_shape(v, regs.back().domain_dim(), 1, at(bp + "/states", i));
          psis.push_back(v.col(0));
        }
        try {
          return lift_pure(regs, psis, tol_);
        } catch (const std::exception& e) {
          throw ScenarioError(bp + "/regs", e.what());
        }
      }
      case K::apply: {
        const std::string bp = ptr + "/apply";
        const CMatrix a = op(*s.op, bp + "/op", mem);
        const CMatrix v = state(s.args[0], bp + "/of", mem);
        require_shape(v, static_cast<std::size_t>(a.cols()), 1, bp + "/of");
        return a * v;
      }
    }
    throw ScenarioError(ptr, "unknown state expression");
  }

  PreparedCheck prepare(const CheckNode& c, const std::string& ptr, const Memory& mem) const {
    PreparedCheck out{c.name, c.kind, nullptr, nullptr, {}, {}, {}};
    switch (c.kind) {
      case CheckNode::Kind::triple:
        out.pre = predicate(c.pre, ptr + "/triple/pre", mem);
        out.program = program_ref(c.program, ptr + "/triple/program", mem);
        out.post = predicate(c.post, ptr + "/triple/post", mem);
        break;
      case CheckNode::Kind::operator_equal:
        out.lhs = op(*c.lhs_op, ptr + "/operator_equal/lhs", mem);
        out.rhs = op(*c.rhs_op, ptr + "/operator_equal/rhs", mem);
        require_shape(out.rhs, static_cast<std::size_t>(out.lhs.rows()),
                      static_cast<std::size_t>(out.lhs.cols()), ptr + "/operator_equal/rhs");
        break;
      case CheckNode::Kind::state_equal:
        out.lhs = state(*c.lhs_state, ptr + "/state_equal/lhs", mem);
        out.rhs = state(*c.rhs_state, ptr + "/state_equal/rhs", mem);
        require_shape(out.rhs, static_cast<std::size_t>(out.lhs.rows()), 1,
                      ptr + "/state_equal/rhs");
        break;
      case CheckNode::Kind::mixed_state: {
        const std::string bp = ptr + "/mixed_state";
        const CMatrix rho = op(*c.lhs_op, bp + "/state", mem);
        require_shape(rho, mem.dim(), mem.dim(), bp + "/state");
        const Resolved r = resolved(c.reg, bp + "/reg", mem);
        out.lhs = trace_in(r.reg, rho);
        out.rhs = op(*c.rhs_op, bp + "/expected", mem);
        require_shape(out.rhs, r.reg.domain_dim(), r.reg.domain_dim(), bp + "/expected");
        break;
      }
    }
    return out;
  }

  const ScenarioFile& file_;
  Tolerance tol_;
  std::map<std::string, CMatrix> constants_;
  std::map<std::string, Program> programs_;
  std::map<std::string, PredPtr> preds_;
};

std::string format_vector(const CVector& v) {
  std::ostringstream os;
  os << "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << "(" << v(i).real() << "," << v(i).imag() << ")";
  }
  os << "]";
  return os.str();
}

}  // namespace

ScenarioFile parse_scenario_text(const std::string& text, Tolerance tol) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const std::size_t line = 1 + static_cast<std::size_t>(
                                     std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(end), '\n'));
    std::string msg = e.what();
    if (const auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    throw ScenarioError("", msg, line);
  }
  ScenarioFile f = decode_file(j);
  Compiler c(f, f.tolerance ? Tolerance(*f.tolerance) : tol);
  Memory mem = c.build_memory();
  c.compile(mem);
  return f;
}

ScenarioFile parse_scenario(const std::string& path, Tolerance tol) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("", "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario_text(ss.str(), tol);
}

std::string emit_scenario(const ScenarioFile& f) {
  Json j = Json::object();
  Json layout = Json::array();
  for (const auto& fac : f.layout) {
    Json entry{{"name", fac.name}, {"dim", fac.dim}};
    if (!fac.shape.empty()) entry["shape"] = fac.shape;
    layout.push_back(std::move(entry));
  }
  j["layout"] = std::move(layout);
  if (f.tolerance) j["tolerance"] = *f.tolerance;
  if (!f.constants.empty()) {
    Json cs = Json::object();
    for (const auto& c : f.constants) cs[c.name] = encode_literal(c.value, c.is_vector);
    j["constants"] = std::move(cs);
  }
  if (!f.registers.empty()) {
    Json rs = Json::object();
    for (const auto& [name, node] : f.registers) rs[name] = encode_reg(node);
    j["registers"] = std::move(rs);
  }
  if (!f.programs.empty()) {
    Json ps = Json::object();
    for (const auto& p : f.programs) ps[p.name] = encode_commands(p.commands);
    j["programs"] = std::move(ps);
  }
  if (!f.predicates.empty()) {
    Json ps = Json::object();
    for (const auto& [name, node] : f.predicates) ps[name] = encode_pred(node);
    j["predicates"] = std::move(ps);
  }
  if (!f.checks.empty()) {
    Json cs = Json::array();
    for (const auto& c : f.checks) cs.push_back(encode_check(c));
    j["checks"] = std::move(cs);
  }
  return j.dump(2) + "\n";
}

std::vector<CheckOutcome> run_scenario_file(const ScenarioFile& file, Tolerance tol) {
  Compiler c(file, tol);
  Memory mem = c.build_memory();
  const std::vector<PreparedCheck> prepared = c.compile(mem);
  std::vector<CheckOutcome> out;
  for (const auto& p : prepared) {
    CheckOutcome o;
    o.result.name = p.name;
    if (p.kind == CheckNode::Kind::triple) {
      const TripleReport r = check_triple(p.pre, p.program, p.post, mem);
      o.result.passed = r.holds;
      o.result.residual = r.residual;
      if (r.witness) {
        o.witness = r.witness;
        o.result.detail = "witness " + format_vector(*r.witness) + " is sent to " +
                          format_vector(*r.witness_image);
      }
    } else {
      o.result.residual = max_abs(p.lhs - p.rhs);
      o.result.passed = approx_eq(p.lhs, p.rhs, tol);
    }
    out.push_back(std::move(o));
  }
  return out;
}

double effective_tolerance(std::optional<double> flag, const ScenarioFile& file) {
  if (flag) {
    if (!(*flag > 0)) throw InvalidArgument("tolerance must be positive");
    return *flag;
  }
  if (file.tolerance) return *file.tolerance;
  if (const char* env = std::getenv("REGCALC_TOL"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0)) {
      throw InvalidArgument(std::string("REGCALC_TOL is not a positive number: '") + env + "'");
    }
    return v;
  }
  return 1e-9;
}

// Built-in scenario files -------------------------------------------------------

namespace {

namespace build {

RegNode named(const std::string& n) {
  RegNode r;
  r.kind = RegisterExpr::Kind::named;
  r.name = n;
  return r;
}

RegNode nullary(RegisterExpr::Kind k) {
  RegNode r;
  r.kind = k;
  return r;
}

RegNode binary(RegisterExpr::Kind k, RegNode a, RegNode b) {
  RegNode r;
  r.kind = k;
  r.args = {std::move(a), std::move(b)};
  return r;
}

RegNode pair(RegNode a, RegNode b) { return binary(RegisterExpr::Kind::pair, std::move(a), std::move(b)); }
RegNode chain(RegNode a, RegNode b) { return binary(RegisterExpr::Kind::chain, std::move(a), std::move(b)); }

MatrixRef ref(const std::string& n) {
  MatrixRef m;
  m.name = n;
  return m;
}

CommandNode apply(RegNode r, const std::string& u) {
  CommandNode c;
  c.kind = Command::Kind::apply;
  c.reg = std::move(r);
  c.u = ref(u);
  return c;
}

CommandNode guard(RegNode r, std::size_t x) {
  CommandNode c;
  c.kind = Command::Kind::guard;
  c.reg = std::move(r);
  c.x = x;
  return c;
}

PredNode qeq(RegNode r, const std::string& state) {
  PredNode p;
  p.kind = PredNode::Kind::qeq;
  p.reg = std::move(r);
  p.state = ref(state);
  return p;
}

PredNode intersect(PredNode a, PredNode b) {
  PredNode p;
  p.kind = PredNode::Kind::intersect;
  p.args = {std::move(a), std::move(b)};
  return p;
}

PredNode pred_ref(const std::string& name) {
  PredNode p;
  p.kind = PredNode::Kind::ref;
  p.name = name;
  return p;
}

ProgramRef program_ref(const std::string& name) {
  ProgramRef p;
  p.name = name;
  return p;
}

OpExpr matrix(const std::string& name) {
  OpExpr o;
  o.kind = OpExpr::Kind::matrix;
  o.matrix = ref(name);
  return o;
}

OpExpr program(const std::string& name) {
  OpExpr o;
  o.kind = OpExpr::Kind::program;
  o.program = program_ref(name);
  return o;
}

OpExpr lift(RegNode r, OpExpr a) {
  OpExpr o;
  o.kind = OpExpr::Kind::lift;
  o.reg = std::move(r);
  o.args = {std::move(a)};
  return o;
}

OpExpr lift_mixed(std::vector<RegNode> regs, std::vector<OpExpr> ops) {
  OpExpr o;
  o.kind = OpExpr::Kind::lift_mixed;
  o.regs = std::move(regs);
  o.args = std::move(ops);
  return o;
}

OpExpr product(std::vector<OpExpr> ops) {
  OpExpr o;
  o.kind = OpExpr::Kind::product;
  o.args = std::move(ops);
  return o;
}

OpExpr scale(Complex z, OpExpr a) {
  OpExpr o;
  o.kind = OpExpr::Kind::scale;
  o.factor = z;
  o.args = {std::move(a)};
  return o;
}

OpExpr evolve(const std::string& prog, OpExpr a) {
  OpExpr o;
  o.kind = OpExpr::Kind::evolve;
  o.program = program_ref(prog);
  o.args = {std::move(a)};
  return o;
}

StateExpr vector(const std::string& name) {
  StateExpr s;
  s.kind = StateExpr::Kind::vector;
  s.vector = ref(name);
  return s;
}

StateExpr lift_pure(std::vector<RegNode> regs, const std::vector<std::string>& states) {
  StateExpr s;
  s.kind = StateExpr::Kind::lift_pure;
  s.regs = std::move(regs);
  for (const auto& n : states) s.args.push_back(vector(n));
  return s;
}

StateExpr apply_state(OpExpr op, StateExpr of) {
  StateExpr s;
  s.kind = StateExpr::Kind::apply;
  s.op = std::move(op);
  s.args = {std::move(of)};
  return s;
}

CheckNode triple(std::string name, PredNode pre, const std::string& prog, PredNode post) {
  CheckNode c;
  c.kind = CheckNode::Kind::triple;
  c.name = std::move(name);
  c.pre = std::move(pre);
  c.program = program_ref(prog);
  c.post = std::move(post);
  return c;
}

CheckNode operator_equal(std::string name, OpExpr lhs, OpExpr rhs) {
  CheckNode c;
  c.kind = CheckNode::Kind::operator_equal;
  c.name = std::move(name);
  c.lhs_op = std::move(lhs);
  c.rhs_op = std::move(rhs);
  return c;
}

CheckNode state_equal(std::string name, StateExpr lhs, StateExpr rhs) {
  CheckNode c;
  c.kind = CheckNode::Kind::state_equal;
  c.name = std::move(name);
  c.lhs_state = std::move(lhs);
  c.rhs_state = std::move(rhs);
  return c;
}

CheckNode mixed_state(std::string name, OpExpr state, RegNode r, OpExpr expected) {
  CheckNode c;
  c.kind = CheckNode::Kind::mixed_state;
  c.name = std::move(name);
  c.lhs_op = std::move(state);
  c.reg = std::move(r);
  c.rhs_op = std::move(expected);
  return c;
}

}  // namespace build

void add_matrix(ScenarioFile& f, const std::string& name, const CMatrix& m) {
  f.constants.push_back({name, m, false});
}

void add_vector(ScenarioFile& f, const std::string& name, const CVector& v) {
  f.constants.push_back({name, v, true});
}

ScenarioFile teleport_file() {
  using namespace build;
  ScenarioFile f;
  f.layout = {{"A", 2}, {"X", 2}, {"Phi1", 2}, {"B", 2}, {"Phi2", 2}};
  f.tolerance = 1e-9;
  add_matrix(f, "H", gates::hadamard());
  add_matrix(f, "X", gates::pauli_x());
  add_matrix(f, "Z", gates::pauli_z());
  add_matrix(f, "I2", identity(2));
  add_matrix(f, "CNOT", gates::cnot());
  add_matrix(f, "Usigma", gates::swap());
  add_vector(f, "beta", gates::bell());
  add_matrix(f, "beta_beta", outer(gates::bell(), gates::bell()));
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      const CVector ab = kron(gates::ket(2, a), gates::ket(2, b));
      add_matrix(f, "ket" + std::to_string(a) + std::to_string(b) + "_beta", outer(ab, gates::bell()));
    }
  }
  const std::vector<CVector> states = teleport_states(TeleportOptions{});
  for (std::size_t i = 0; i < states.size(); ++i) add_vector(f, "psi" + std::to_string(i), states[i]);

  f.registers = {{"Phi", pair(named("Phi1"), named("Phi2"))},
                 {"PhiFst", chain(named("Phi"), nullary(RegisterExpr::Kind::fst))},
                 {"PhiSnd", chain(named("Phi"), nullary(RegisterExpr::Kind::snd))},
                 {"XAB", pair(named("X"), pair(named("A"), named("B")))},
                 {"PhiSndAB", pair(named("PhiSnd"), pair(named("A"), named("B")))}};

  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      f.programs.push_back({"teleport" + std::to_string(a) + std::to_string(b),
                            {apply(pair(named("X"), named("PhiFst")), "CNOT"), apply(named("X"), "H"),
                             guard(named("PhiFst"), a), guard(named("X"), b),
                             apply(named("PhiSnd"), a ? "X" : "I2"),
                             apply(named("PhiSnd"), b ? "Z" : "I2")}});
    }
  }

  f.predicates.emplace_back("entangled", qeq(named("Phi"), "beta"));
  for (std::size_t i = 0; i < states.size(); ++i) {
    const std::string psi = "psi" + std::to_string(i);
    f.predicates.emplace_back("pre_" + psi, intersect(qeq(named("XAB"), psi), pred_ref("entangled")));
    f.predicates.emplace_back("post_" + psi, qeq(named("PhiSndAB"), psi));
  }

  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      const std::string ab = std::to_string(a) + std::to_string(b);
      for (std::size_t i = 0; i < states.size(); ++i) {
        const std::string psi = "psi" + std::to_string(i);
        f.checks.push_back(triple("teleport(" + std::to_string(a) + "," + std::to_string(b) + ") " + psi,
                                  pred_ref("pre_" + psi), "teleport" + ab, pred_ref("post_" + psi)));
      }
      f.checks.push_back(operator_equal(
          "teleport(" + std::to_string(a) + "," + std::to_string(b) + ") applied to O1 is O7",
          product({program("teleport" + ab), lift(named("Phi"), matrix("beta_beta"))}),
          scale(0.5, product({lift(pair(named("X"), named("PhiSnd")), matrix("Usigma")),
                              lift(named("Phi"), matrix("ket" + ab + "_beta"))}))));
    }
  }
  return f;
}

ScenarioFile triple_cnot_file() {
  using namespace build;
  ScenarioFile f;
  f.layout = {{"F", 2}, {"G", 2}, {"R", 3}};
  f.tolerance = 1e-9;
  add_matrix(f, "CNOT", gates::cnot());
  add_matrix(f, "Usigma", gates::swap());
  for (std::size_t x = 0; x < 2; ++x) add_vector(f, "q" + std::to_string(x), gates::ket(2, x));
  for (std::size_t z = 0; z < 3; ++z) add_vector(f, "r" + std::to_string(z), gates::ket(3, z));
  f.registers = {{"FG", pair(named("F"), named("G"))}, {"GF", pair(named("G"), named("F"))}};
  f.programs = {{"three_cnots", {apply(named("FG"), "CNOT"), apply(named("GF"), "CNOT"),
                                 apply(named("FG"), "CNOT")}},
                {"swap", {apply(named("FG"), "Usigma")}}};
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t y = 0; y < 2; ++y) {
      const std::string qx = "q" + std::to_string(x);
      const std::string qy = "q" + std::to_string(y);
      for (std::size_t z = 0; z < 3; ++z) {
        const std::string rz = "r" + std::to_string(z);
        f.checks.push_back(state_equal(
            "three CNOTs on F(" + qx + ") G(" + qy + ") rest(" + rz + ")",
            apply_state(program("three_cnots"),
                        lift_pure({named("F"), named("G"), named("R")}, {qx, qy, rz})),
            lift_pure({named("F"), named("G"), named("R")}, {qy, qx, rz})));
      }
      f.checks.push_back(triple("F =q " + qx + " and G =q " + qy + " are exchanged",
                                intersect(qeq(named("F"), qx), qeq(named("G"), qy)), "three_cnots",
                                intersect(qeq(named("F"), qy), qeq(named("G"), qx))));
    }
  }
  f.checks.push_back(operator_equal("three CNOTs equal <F,G>(Usigma)", program("three_cnots"),
                                    program("swap")));
  return f;
}

ScenarioFile mixed_circuit_file() {
  using namespace build;
  ScenarioFile f;
  f.layout = {{"F", 2}, {"G", 2}, {"H", 2}};
  f.tolerance = 1e-9;
  add_matrix(f, "Had", gates::hadamard());
  add_matrix(f, "CNOT", gates::cnot());
  add_matrix(f, "P0", gates::projector(2, 0));
  add_matrix(f, "half", 0.5 * identity(2));
  add_matrix(f, "plus_plus", outer(gates::plus(), gates::plus()));
  add_matrix(f, "expected_GH", mixed_circuit_expected_gh());
  f.registers = {{"GH", pair(named("G"), named("H"))}};
  f.programs = {{"circuit", {apply(named("F"), "Had"), apply(named("GH"), "CNOT"),
                             apply(named("G"), "Had")}}};
  const auto initial = [] {
    return lift_mixed({named("F"), named("G"), named("H")},
                      {matrix("P0"), matrix("half"), matrix("P0")});
  };
  f.checks = {
      mixed_state("reduced state of <G,H>", evolve("circuit", initial()), named("GH"),
                  matrix("expected_GH")),
      mixed_state("reduced state of F", evolve("circuit", initial()), named("F"),
                  matrix("plus_plus")),
      operator_equal("final state factors as <G,H> and F", evolve("circuit", initial()),
                     lift_mixed({named("GH"), named("F")},
                                {matrix("expected_GH"), matrix("plus_plus")}))};
  return f;
}

}  // namespace

std::vector<std::string> builtin_scenario_names() {
  return {"teleport", "triple_cnot", "mixed_circuit"};
}

ScenarioFile builtin_scenario(const std::string& name) {
  if (name == "teleport") return teleport_file();
  if (name == "triple_cnot") return triple_cnot_file();
  if (name == "mixed_circuit") return mixed_circuit_file();
  throw InvalidArgument("unknown built-in scenario '" + name + "'");
}

// Register expressions as text -------------------------------------------------

namespace {

class ExprParser {
 public:
  explicit ExprParser(const std::string& text) : text_(text) {}

  RegExprPtr parse() {
    RegExprPtr e = postfix();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InvalidArgument("register expression, column " + std::to_string(pos_ + 1) + ": " + msg);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char ch) {
    if (!accept(ch)) fail(std::string("expected '") + ch + "'");
  }

  std::string ident() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a name");
    return text_.substr(start, pos_ - start);
  }

  RegExprPtr postfix() {
    RegExprPtr e = primary();
    while (accept('.')) e = reg::chain(e, primary());
    return e;
  }

  std::vector<RegExprPtr> args(std::size_t n) {
    std::vector<RegExprPtr> out;
    expect('(');
    for (std::size_t i = 0; i < n; ++i) {
      if (i) expect(',');
      out.push_back(postfix());
    }
    expect(')');
    return out;
  }

  RegExprPtr primary() {
    if (accept('(')) {
      RegExprPtr e = postfix();
      expect(')');
      return e;
    }
    const std::string name = ident();
    if (name == "fst") return reg::fst();
    if (name == "snd") return reg::snd();
    if (name == "swap") return reg::swap();
    if (name == "assoc") return reg::assoc();
    if (name == "assoc_inv") return reg::assoc_inv();
    if (name == "id") return reg::id();
    if (name == "chain") {
      auto a = args(2);
      return reg::chain(a[0], a[1]);
    }
    if (name == "pair") {
      auto a = args(2);
      return reg::pair(a[0], a[1]);
    }
    if (name == "tensor") {
      auto a = args(2);
      return reg::tensor(a[0], a[1]);
    }
    if (name == "complement") return reg::complement(args(1)[0]);
    if (name == "mapped") {
      expect('(');
      const std::string gate = ident();
      const auto u = gates::lookup(gate);
      if (!u) fail("unknown gate '" + gate + "'");
      expect(',');
      RegExprPtr of = postfix();
      expect(')');
      return reg::mapped(*u, of);
    }
    return reg::named(name);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

RegExprPtr parse_register_expr(const std::string& text) { return ExprParser(text).parse(); }

std::vector<Memory::Factor> parse_layout(const std::string& text) {
  std::vector<Memory::Factor> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidArgument("layout entry '" + item + "' needs name=dims");
    Memory::Factor f{item.substr(0, eq), 1};
    f.name.erase(std::remove_if(f.name.begin(), f.name.end(), ::isspace), f.name.end());
    std::stringstream dims(item.substr(eq + 1));
    std::string d;
    std::vector<std::size_t> shape;
    while (std::getline(dims, d, 'x')) {
      std::size_t used = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(d, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || d.find_first_not_of(" \t", used) != std::string::npos || v == 0) {
        throw InvalidArgument("layout entry '" + item + "' has a bad dimension");
      }
      shape.push_back(v);
      f.dim *= v;
    }
    if (shape.empty() || item.back() == 'x') {
      throw InvalidArgument("layout entry '" + item + "' has a bad dimension");
    }
    if (shape.size() > 1) f.shape = shape;
    out.push_back(std::move(f));
  }
  if (out.empty()) throw InvalidArgument("empty layout");
  return out;
}

}  // namespace regcalc
