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

#include "regcalc/laws.hpp"

#include <algorithm>
#include <array>
#include <complex>
#include <numeric>
#include <random>
#include <sstream>
#include <utility>
#include <variant>

#include "regcalc/classical.hpp"
#include "regcalc/errors.hpp"
#include "regcalc/lifting.hpp"
#include "regcalc/random.hpp"

namespace regcalc {

PairFn checked_pair() {
  return [](const QRegister& f, const QRegister& g, Tolerance tol) -> std::optional<Superoperator> {
    try {
      return pair(f, g, tol).superoperator();
    } catch (const IncompatibleRegisters&) {
      return std::nullopt;
    }
  };
}

PairFn unchecked_pair() {
  return [](const QRegister& f, const QRegister& g, Tolerance) -> std::optional<Superoperator> {
    return bilinear_pair_map(f, g);
  };
}

bool SuiteReport::passed() const {
  return std::all_of(laws.begin(), laws.end(), [](const LawResult& l) { return l.passed(); });
}

std::vector<std::string> suite_names() { return {"fig2", "fig4", "lifting", "classical"}; }

namespace {

using Regs = std::vector<QRegister>;
using Ops = std::vector<CMatrix>;
using Vecs = std::vector<CVector>;

const Eigen::IOFormat kFmt(4, 0, ", ", "\n      ", "[", "]");

std::string lens_text(const CRegister& f) {
  std::ostringstream os;
  os << "|A|=" << f.domain_size() << " |B|=" << f.memory_size() << " getter=[";
  for (std::size_t b = 0; b < f.memory_size(); ++b) os << (b ? "," : "") << f.get(b);
  os << "] setter=[";
  for (std::size_t i = 0; i < f.lens().setter.size(); ++i) os << (i ? "," : "") << f.lens().setter[i];
  os << "]";
  return os.str();
}

std::string fn_text(const PartialFn& a) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < a.size(); ++i) {
    os << (i ? "," : "");
    if (a[i]) os << *a[i]; else os << "_";
  }
  os << "]";
  return os.str();
}

// One randomized instance of a law: its inputs (kept for the report) and
// the outcome of its checks.
class Case {
 public:
  explicit Case(Tolerance tol) : tol_(tol) {}

  Tolerance tol() const { return tol_; }
  void skip() { vacuous_ = true; }
  bool vacuous() const { return vacuous_; }
  bool ok() const { return failure_.empty(); }
  double residual() const { return residual_; }

  void input(const std::string& name, const QRegister& f) {
    inputs_.emplace_back(name + " (m=" + std::to_string(f.domain_dim()) +
                             ", k=" + std::to_string(f.env_dim()) + ") U",
                         f.unitary());
  }
  void input(const std::string& name, const CMatrix& a) { inputs_.emplace_back(name, a); }
  void input(const std::string& name, const CRegister& f) { inputs_.emplace_back(name, lens_text(f)); }
  void input(const std::string& name, const PartialFn& a) { inputs_.emplace_back(name, fn_text(a)); }

  void fail(const std::string& what) {
    if (failure_.empty()) failure_ = what;
  }
  void expect(bool cond, const std::string& what) {
    if (!cond) fail(what);
  }
  void expect_eq(const CMatrix& a, const CMatrix& b, const std::string& what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
      fail(what + " (shape mismatch)");
      return;
    }
    const double r = max_abs(a - b);
    residual_ = std::max(residual_, r);
    if (!approx_eq(a, b, tol_)) fail(what + " (residual " + std::to_string(r) + ")");
  }
  void expect_eq(const Superoperator& a, const Superoperator& b, const std::string& what) {
    if (a.in_dim() != b.in_dim() || a.out_dim() != b.out_dim()) {
      fail(what + " (dimension mismatch)");
      return;
    }
    expect_eq(a.action(), b.action(), what);
  }
  void expect_eq(const QChannel& a, const QChannel& b, const std::string& what) {
    expect_eq(a.superoperator(), b.superoperator(), what);
  }

  std::string report() const {
    std::ostringstream os;
    os << failure_;
    for (const auto& [name, value] : inputs_) {
      os << "\n    " << name << ": ";
      if (const auto* m = std::get_if<CMatrix>(&value)) {
        os << m->format(kFmt);
      } else {
        os << std::get<std::string>(value);
      }
    }
    return os.str();
  }

 private:
  Tolerance tol_;
  bool vacuous_ = false;
  double residual_ = 0.0;
  std::string failure_;
  std::vector<std::pair<std::string, std::variant<CMatrix, std::string>>> inputs_;
};

struct LawSpec {
  std::string name;
  std::function<void(Rng&, Case&)> body;
  /// Set for laws checked by enumeration instead of sampling.
  std::function<void(LawResult&)> exhaustive;
};

LawResult run_law(std::size_t index, const LawSpec& spec, const LawOptions& opts) {
  LawResult r;
  r.law = spec.name;
  if (spec.exhaustive) {
    spec.exhaustive(r);
    return r;
  }
  r.requested = opts.cases;
  const std::size_t max_attempts = 10 * opts.cases + 10;
  for (std::size_t attempt = 0; r.cases < opts.cases && attempt < max_attempts; ++attempt) {
    std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(attempt)};
    Rng rng(seq);
    Case c(opts.tol);
    try {
      spec.body(rng, c);
    } catch (const std::exception& e) {
      c.fail(std::string("exception: ") + e.what());
    }
    if (c.vacuous() && c.ok()) {
      ++r.vacuous;
      continue;
    }
    ++r.cases;
    r.max_residual = std::max(r.max_residual, c.residual());
    if (!c.ok()) {
      ++r.failures;
      if (r.counterexample.empty()) {
        r.counterexample = "case " + std::to_string(attempt) + ": " + c.report();
      }
    }
  }
  return r;
}

SuiteReport run_laws(const std::string& suite, const std::vector<LawSpec>& laws,
                     const LawOptions& opts) {
  SuiteReport report{suite, {}};
  for (std::size_t i = 0; i < laws.size(); ++i) report.laws.push_back(run_law(i, laws[i], opts));
  return report;
}

// Draw helpers -----------------------------------------------------------------

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + random_index(rng, hi - lo + 1);
}

/// `count` dimensions in [1, max_each] whose product is at most max_prod.
std::vector<std::size_t> draw_dims(Rng& rng, std::size_t count, std::size_t max_prod,
                                   std::size_t max_each = 4) {
  for (;;) {
    std::vector<std::size_t> d(count);
    std::size_t prod = 1;
    for (auto& x : d) {
      x = pick(rng, 1, max_each);
      prod *= x;
    }
    if (prod <= std::max<std::size_t>(max_prod, 1)) return d;
  }
}

std::size_t product(const std::vector<std::size_t>& d) {
  return std::accumulate(d.begin(), d.end(), std::size_t{1}, std::multiplies<>());
}

std::size_t random_divisor(Rng& rng, std::size_t n) {
  std::vector<std::size_t> divs;
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d == 0) divs.push_back(d);
  }
  return divs[random_index(rng, divs.size())];
}

/// A register with domain in [1, 4] and codomain at most max.
QRegister draw_register(Rng& rng, std::size_t max) {
  const std::size_t m = pick(rng, 1, std::min<std::size_t>(4, std::max<std::size_t>(max, 1)));
  const std::size_t k = pick(rng, 1, std::max<std::size_t>(max / m, 1));
  return random_register(rng, m, k);
}

/// A register whose codomain is C^n.
QRegister draw_into(Rng& rng, std::size_t n) {
  const std::size_t m = random_divisor(rng, n);
  return random_register(rng, m, n / m);
}

CMatrix gaussian(Rng& rng, std::size_t n) { return random_gaussian(rng, n, n); }
CVector gaussian_vec(Rng& rng, std::size_t n) { return random_gaussian(rng, n, 1); }

Superoperator sup(const QRegister& f) { return f.superoperator(); }

bool is_register(const Superoperator& s, Tolerance tol, std::string* why) {
  try {
    extract_canonical(s, tol);
    return true;
  } catch (const NotARegister& e) {
    *why = e.what();
    return false;
  }
}

/// P(a)·H(b) = H(b)·P(a) on all matrix units.
bool commutes_with(const Superoperator& p, const QRegister& h, Tolerance tol) {
  std::vector<CMatrix> hs;
  for (std::size_t i = 0; i < h.domain_dim(); ++i) {
    for (std::size_t j = 0; j < h.domain_dim(); ++j) hs.push_back(h.apply(matrix_unit(h.domain_dim(), i, j)));
  }
  for (std::size_t i = 0; i < p.in_dim(); ++i) {
    for (std::size_t j = 0; j < p.in_dim(); ++j) {
      const CMatrix a = p.on_unit(i, j);
      for (const auto& b : hs) {
        if (!approx_eq(a * b, b * a, tol)) return false;
      }
    }
  }
  return true;
}

struct Drawn {
  Regs parts;
  std::vector<std::size_t> dims;
  std::size_t n = 1;
};

/// Three pairwise compatible registers from a random partition. With
/// `overlap`, one case in four replaces the second by an unrelated register
/// of the same domain, which is usually incompatible with the others.
Drawn draw_partition(Rng& rng, std::size_t count, std::size_t max, bool overlap = false) {
  Drawn d;
  d.dims = draw_dims(rng, count, max);
  d.n = product(d.dims);
  d.parts = random_partition(rng, d.dims);
  if (overlap && random_index(rng, 4) == 0) {
    d.parts[1] = random_register(rng, d.dims[1], d.n / d.dims[1]);
  }
  return d;
}

void note(Case& c, const Drawn& d) {
  for (std::size_t i = 0; i < d.parts.size(); ++i) c.input("F" + std::to_string(i + 1), d.parts[i]);
}

// Generic register laws ----------------------------------------------------------

std::vector<LawSpec> fig2_laws(const LawOptions& o) {
  const std::size_t max = o.max_dim;
  const PairFn p = o.pair;
  std::vector<LawSpec> laws;

  laws.push_back({"tensor3: agreement on a⊗(b⊗c) decides equality", [=](Rng& rng, Case& c) {
    const auto d = draw_dims(rng, 3, max);
    const std::size_t m = product(d);
    const QRegister f = random_register(rng, m, pick(rng, 1, std::max<std::size_t>(max / m, 1)));
    CMatrix w = random_unitary(rng, m);
    if (random_index(rng, 2) == 0) w = std::polar(1.0, 0.7) * identity(m);
    const QRegister g = chain(f, iso_register(w));
    c.input("F", f);
    c.input("W", w);
    bool agree = true;
    for (std::size_t i = 0; i < m && agree; ++i) {
      for (std::size_t j = 0; j < m && agree; ++j) {
        // Under Kronecker order every unit of C^m is a product unit.
        const CMatrix e = matrix_unit(m, i, j);
        agree = approx_eq(f.apply(e), g.apply(e), c.tol());
      }
    }
    c.expect(agree == same_action(f, g, c.tol()), "product units do not decide equality");
  }, {}});

  laws.push_back({"tensor.ab: (F⊗G)(a⊗b) = F(a)⊗G(b)", [=](Rng& rng, Case& c) {
    const auto d = draw_dims(rng, 4, max);
    const QRegister f = random_register(rng, d[0], d[1]);
    const QRegister g = random_register(rng, d[2], d[3]);
    const CMatrix a = gaussian(rng, d[0]);
    const CMatrix b = gaussian(rng, d[2]);
    c.input("F", f);
    c.input("G", g);
    c.expect_eq(tensor_registers(f, g).apply(kron(a, b)), kron(f.apply(a), g.apply(b)),
                "(F⊗G)(a⊗b)");
  }, {}});

  laws.push_back({"σ, α, α' are registers", [=](Rng& rng, Case& c) {
    const auto d = draw_dims(rng, 3, max);
    std::string why;
    c.expect(is_register(sup(swap_register(d[0], d[1])), c.tol(), &why), "σ: " + why);
    c.expect(is_register(sup(assoc_register(d[0], d[1], d[2])), c.tol(), &why), "α: " + why);
    c.expect(is_register(sup(assoc_inv_register(d[0], d[1], d[2])), c.tol(), &why), "α': " + why);
  }, {}});

  laws.push_back({"σ(a⊗b) = b⊗a", [=](Rng& rng, Case& c) {
    const auto d = draw_dims(rng, 2, max);
    const CMatrix a = gaussian(rng, d[0]);
    const CMatrix b = gaussian(rng, d[1]);
    c.expect_eq(swap_register(d[0], d[1]).apply(kron(a, b)), kron(b, a), "σ(a⊗b)");
  }, {}});

  laws.push_back({"σ.Fst = Snd, σ.Snd = Fst", [=](Rng& rng, Case& c) {
    const auto d = draw_dims(rng, 2, max);
    const QRegister s = swap_register(d[0], d[1]);
    c.expect_eq(sup(chain(s, fst_register(d[0], d[1]))), sup(snd_register(d[1], d[0])), "σ.Fst");
    c.expect_eq(sup(chain(s, snd_register(d[0], d[1]))), sup(fst_register(d[1], d[0])), "σ.Snd");
  }, {}});

  laws.push_back({"α((a⊗b)⊗c) = a⊗(b⊗c)", [=](Rng& rng, Case& c) {
    const auto d = draw_dims(rng, 3, max);
    const CMatrix a = gaussian(rng, d[0]), b = gaussian(rng, d[1]), x = gaussian(rng, d[2]);
    c.expect_eq(assoc_register(d[0], d[1], d[2]).apply(kron(kron(a, b), x)), kron(a, kron(b, x)),
                "α");
  }, {}});

  laws.push_back({"α'(a⊗(b⊗c)) = (a⊗b)⊗c", [=](Rng& rng, Case& c) {
    const auto d = draw_dims(rng, 3, max);
    const CMatrix a = gaussian(rng, d[0]), b = gaussian(rng, d[1]), x = gaussian(rng, d[2]);
    c.expect_eq(assoc_inv_register(d[0], d[1], d[2]).apply(kron(a, kron(b, x))),
                kron(kron(a, b), x), "α'");
  }, {}});

  laws.push_back({"Fst, Snd are compatible", [=](Rng& rng, Case& c) {
    const auto d = draw_dims(rng, 2, max);
    c.expect(compatible(fst_register(d[0], d[1]), snd_register(d[0], d[1]), c.tol()), "Fst, Snd");
  }, {}});

  laws.push_back({"F, G, H pairwise compatible ⇒ ⟨F,G⟩, H compatible", [=](Rng& rng, Case& c) {
    const Drawn d = draw_partition(rng, 3, max, true);
    note(c, d);
    if (!compatible(d.parts[0], d.parts[2], c.tol()) ||
        !compatible(d.parts[1], d.parts[2], c.tol())) {
      return c.skip();
    }
    const auto fg = p(d.parts[0], d.parts[1], c.tol());
    if (!fg) return c.skip();
    c.expect(commutes_with(*fg, d.parts[2], c.tol()), "⟨F,G⟩ and H do not commute");
  }, {}});

  laws.push_back({"F, G compatible ⇒ F.H, G compatible", [=](Rng& rng, Case& c) {
    const Drawn d = draw_partition(rng, 3, max);
    const QRegister h = draw_into(rng, d.dims[0]);
    note(c, d);
    c.input("H", h);
    c.expect(compatible(chain(d.parts[0], h), d.parts[1], c.tol()), "F.H and G");
  }, {}});

  laws.push_back({"F, G compatible ⇒ H.F, H.G compatible", [=](Rng& rng, Case& c) {
    const Drawn d = draw_partition(rng, 3, max);
    const QRegister h = random_register(rng, d.n, pick(rng, 1, std::max<std::size_t>(max / d.n, 1)));
    note(c, d);
    c.input("H", h);
    c.expect(compatible(chain(h, d.parts[0]), chain(h, d.parts[1]), c.tol()), "H.F and H.G");
  }, {}});

  laws.push_back({"F, H and G, L compatible ⇒ F⊗G, H⊗L compatible", [=](Rng& rng, Case& c) {
    const auto d = draw_dims(rng, 4, max);
    const std::array<std::size_t, 2> d1{d[0], d[1]}, d2{d[2], d[3]};
    const Regs left = random_partition(rng, d1);
    const Regs right = random_partition(rng, d2);
    c.expect(compatible(tensor_registers(left[0], right[0]), tensor_registers(left[1], right[1]),
                        c.tol()),
             "F⊗G and H⊗L");
  }, {}});

  laws.push_back({"⟨F,G⟩ is a register", [=](Rng& rng, Case& c) {
    const Drawn d = draw_partition(rng, 2, max, true);
    note(c, d);
    const auto fg = p(d.parts[0], d.parts[1], c.tol());
    if (!fg) return c.skip();
    std::string why;
    c.expect(is_register(*fg, c.tol(), &why), "⟨F,G⟩: " + why);
  }, {}});

  laws.push_back({"⟨F,G⟩.Fst = F, ⟨F,G⟩.Snd = G", [=](Rng& rng, Case& c) {
    const Drawn d = draw_partition(rng, 3, max, true);
    note(c, d);
    const auto fg = p(d.parts[0], d.parts[1], c.tol());
    if (!fg) return c.skip();
    c.expect_eq(compose(*fg, sup(fst_register(d.dims[0], d.dims[1]))), sup(d.parts[0]), "⟨F,G⟩.Fst");
    c.expect_eq(compose(*fg, sup(snd_register(d.dims[0], d.dims[1]))), sup(d.parts[1]), "⟨F,G⟩.Snd");
  }, {}});

  laws.push_back({"⟨Fst,Snd⟩ = id", [=](Rng& rng, Case& c) {
    const auto d = draw_dims(rng, 2, max);
    const auto r = p(fst_register(d[0], d[1]), snd_register(d[0], d[1]), c.tol());
    if (!r) return c.fail("pair refused Fst, Snd");
    c.expect_eq(*r, Superoperator::identity(d[0] * d[1]), "⟨Fst,Snd⟩");
  }, {}});

  laws.push_back({"⟨Snd,Fst⟩ = σ", [=](Rng& rng, Case& c) {
    const auto d = draw_dims(rng, 2, max);
    const auto r = p(snd_register(d[0], d[1]), fst_register(d[0], d[1]), c.tol());
    if (!r) return c.fail("pair refused Snd, Fst");
    c.expect_eq(*r, sup(swap_register(d[1], d[0])), "⟨Snd,Fst⟩");
  }, {}});

  laws.push_back({"⟨F,G⟩.σ = ⟨G,F⟩", [=](Rng& rng, Case& c) {
    const Drawn d = draw_partition(rng, 3, max, true);
    note(c, d);
    const auto fg = p(d.parts[0], d.parts[1], c.tol());
    const auto gf = p(d.parts[1], d.parts[0], c.tol());
    if (!fg || !gf) return c.skip();
    c.expect_eq(compose(*fg, sup(swap_register(d.dims[1], d.dims[0]))), *gf, "⟨F,G⟩.σ");
  }, {}});

  auto nested = [=](Rng& rng, Case& c, bool inverse) {
    const Drawn d = draw_partition(rng, 3, max, true);
    note(c, d);
    const auto gh = p(d.parts[1], d.parts[2], c.tol());
    const auto fg = p(d.parts[0], d.parts[1], c.tol());
    if (!gh || !fg) return c.skip();
    const auto f_gh = p(d.parts[0], extract_canonical(*gh, c.tol()), c.tol());
    const auto fg_h = p(extract_canonical(*fg, c.tol()), d.parts[2], c.tol());
    if (!f_gh || !fg_h) return c.skip();
    if (inverse) {
      c.expect_eq(compose(*fg_h, sup(assoc_inv_register(d.dims[0], d.dims[1], d.dims[2]))), *f_gh,
                  "⟨⟨F,G⟩,H⟩.α'");
    } else {
      c.expect_eq(compose(*f_gh, sup(assoc_register(d.dims[0], d.dims[1], d.dims[2]))), *fg_h,
                  "⟨F,⟨G,H⟩⟩.α");
    }
  };
  laws.push_back({"⟨F,⟨G,H⟩⟩.α = ⟨⟨F,G⟩,H⟩", [=](Rng& rng, Case& c) { nested(rng, c, false); }, {}});
  laws.push_back({"⟨⟨F,G⟩,H⟩.α' = ⟨F,⟨G,H⟩⟩", [=](Rng& rng, Case& c) { nested(rng, c, true); }, {}});

  laws.push_back({"⟨C.F, C.G⟩ = C.⟨F,G⟩", [=](Rng& rng, Case& c) {
    const Drawn d = draw_partition(rng, 3, max, true);
    const QRegister cr =
        random_register(rng, d.n, pick(rng, 1, std::max<std::size_t>(max / d.n, 1)));
    note(c, d);
    c.input("C", cr);
    const auto lhs = p(chain(cr, d.parts[0]), chain(cr, d.parts[1]), c.tol());
    const auto fg = p(d.parts[0], d.parts[1], c.tol());
    if (!lhs || !fg) return c.skip();
    c.expect_eq(*lhs, compose(sup(cr), *fg), "⟨C.F, C.G⟩");
  }, {}});

  laws.push_back({"⟨F,G⟩.(C⊗D) = ⟨F.C, G.D⟩", [=](Rng& rng, Case& c) {
    const Drawn d = draw_partition(rng, 3, max, true);
    const QRegister cr = draw_into(rng, d.dims[0]);
    const QRegister dr = draw_into(rng, d.dims[1]);
    note(c, d);
    c.input("C", cr);
    c.input("D", dr);
    const auto fg = p(d.parts[0], d.parts[1], c.tol());
    const auto rhs = p(chain(d.parts[0], cr), chain(d.parts[1], dr), c.tol());
    if (!fg || !rhs) return c.skip();
    c.expect_eq(compose(*fg, sup(tensor_registers(cr, dr))), *rhs, "⟨F,G⟩.(C⊗D)");
  }, {}});
  return laws;
}

// Complement and unit laws -----------------------------------------------------

/// A unit register on C^n.
QRegister draw_unit(Rng& rng, std::size_t n) { return random_register(rng, 1, n); }

std::vector<LawSpec> fig4_laws(const LawOptions& o) {
  const std::size_t max = o.max_dim;
  std::vector<LawSpec> laws;

  laws.push_back({"F, G complements ⇔ G, F complements", [=](Rng& rng, Case& c) {
    const QRegister f = draw_register(rng, max);
    const std::size_t k = f.env_dim();
    const QRegister g = random_index(rng, 2) == 0
                            ? chain(complement(f), iso_register(random_unitary(rng, k)))
                            : random_register(rng, k, f.domain_dim());
    c.input("F", f);
    c.input("G", g);
    c.expect(is_complements(f, g, c.tol()) == is_complements(g, f, c.tol()), "asymmetric");
  }, {}});

  laws.push_back({"∁F is a register", [=](Rng& rng, Case& c) {
    const QRegister f = draw_register(rng, max);
    c.input("F", f);
    std::string why;
    c.expect(is_register(sup(complement(f)), c.tol(), &why), "∁F: " + why);
  }, {}});

  laws.push_back({"F, ∁F are complements", [=](Rng& rng, Case& c) {
    const QRegister f = draw_register(rng, max);
    c.input("F", f);
    c.expect(is_complements(f, complement(f), c.tol()), "F, ∁F");
  }, {}});

  laws.push_back({"F, G complements ⇒ (G ≍ H ⇔ F, H complements)", [=](Rng& rng, Case& c) {
    const QRegister f = draw_register(rng, max);
    const std::size_t k = f.env_dim();
    const QRegister g = chain(complement(f), iso_register(random_unitary(rng, k)));
    QRegister h = g;
    switch (random_index(rng, 3)) {
      case 0: h = chain(g, iso_register(random_unitary(rng, k))); break;
      case 1: h = random_register(rng, k, f.domain_dim()); break;
      default: h = chain(f.domain_dim() == k ? f : g, iso_register(random_unitary(rng, k))); break;
    }
    c.input("F", f);
    c.input("H", h);
    c.expect(equivalent(g, h, c.tol()).has_value() == is_complements(f, h, c.tol()),
             "equivalence and complementarity disagree");
  }, {}});

  laws.push_back({"F ≍ ∁∁F", [=](Rng& rng, Case& c) {
    const QRegister f = draw_register(rng, max);
    c.input("F", f);
    c.expect(equivalent(f, complement(complement(f)), c.tol()).has_value(), "F, ∁∁F");
  }, {}});

  laws.push_back({"F, G compatible ⇒ F, ⟨G, ∁⟨F,G⟩⟩ complements", [=](Rng& rng, Case& c) {
    const Drawn d = draw_partition(rng, 3, max);
    note(c, d);
    const QRegister& f = d.parts[0];
    const QRegister& g = d.parts[1];
    const QRegister rest = complement(pair(f, g, c.tol()));
    c.expect(is_complements(f, pair(g, rest, c.tol()), c.tol()), "F, ⟨G, ∁⟨F,G⟩⟩");
    c.expect(is_complements(g, pair(f, rest, c.tol()), c.tol()), "G, ⟨F, ∁⟨F,G⟩⟩");
  }, {}});

  laws.push_back({"F.G and ⟨∁F, F.∁G⟩ are complements", [=](Rng& rng, Case& c) {
    const QRegister f = draw_register(rng, max);
    const QRegister g = draw_into(rng, f.domain_dim());
    c.input("F", f);
    c.input("G", g);
    c.expect(is_complements(chain(f, g), pair(complement(f), chain(f, complement(g)), c.tol()),
                            c.tol()),
             "F.G, ⟨∁F, F.∁G⟩");
  }, {}});

  laws.push_back({"F⊗G and ∁F⊗∁G are complements", [=](Rng& rng, Case& c) {
    const auto d = draw_dims(rng, 4, max);
    const QRegister f = random_register(rng, d[0], d[1]);
    const QRegister g = random_register(rng, d[2], d[3]);
    c.input("F", f);
    c.input("G", g);
    c.expect(is_complements(tensor_registers(f, g),
                            tensor_registers(complement(f), complement(g)), c.tol()),
             "F⊗G, ∁F⊗∁G");
  }, {}});

  laws.push_back({"dim domain(∁F) = dim codomain / dim domain", [=](Rng& rng, Case& c) {
    const QRegister f = draw_register(rng, max);
    const QRegister g = draw_into(rng, f.domain_dim());
    const Drawn d = draw_partition(rng, 3, max);
    const auto e = draw_dims(rng, 4, max);
    c.input("F", f);
    const Regs generated{f,
                         g,
                         chain(f, g),
                         complement(f),
                         pair(d.parts[0], d.parts[1], c.tol()),
                         tensor_registers(random_register(rng, e[0], e[1]),
                                          random_register(rng, e[2], e[3])),
                         unit_register(f.codomain_dim())};
    for (const QRegister& r : generated) {
      const QRegister cr = complement(r);
      c.expect(cr.domain_dim() * r.domain_dim() == r.codomain_dim() &&
                   cr.codomain_dim() == r.codomain_dim(),
               "complement of a register with (m=" + std::to_string(r.domain_dim()) +
                   ", n=" + std::to_string(r.codomain_dim()) + ") has domain " +
                   std::to_string(cr.domain_dim()));
    }
  }, {}});

  laws.push_back({"U, F compatible", [=](Rng& rng, Case& c) {
    const QRegister f = draw_register(rng, max);
    const QRegister u = draw_unit(rng, f.codomain_dim());
    c.input("F", f);
    c.input("U", u);
    c.expect(compatible(u, f, c.tol()), "U, F");
  }, {}});

  laws.push_back({"F ≍ ⟨U,F⟩", [=](Rng& rng, Case& c) {
    const QRegister f = draw_register(rng, max);
    const QRegister u = draw_unit(rng, f.codomain_dim());
    c.input("F", f);
    c.input("U", u);
    c.expect(equivalent(f, pair(u, f, c.tol()), c.tol()).has_value(), "F, ⟨U,F⟩");
  }, {}});

  laws.push_back({"F∘U is a unit register", [=](Rng& rng, Case& c) {
    const QRegister f = draw_register(rng, max);
    const QRegister u = draw_unit(rng, f.domain_dim());
    c.input("F", f);
    c.expect(is_unit_register(chain(f, u), c.tol()), "F∘U");
  }, {}});

  laws.push_back({"U∘I is a unit register", [=](Rng& rng, Case& c) {
    const QRegister u = draw_unit(rng, pick(rng, 1, max));
    const QRegister i = iso_register(random_unitary(rng, 1));
    c.expect(is_unit_register(chain(u, i), c.tol()), "U∘I");
  }, {}});

  laws.push_back({"U ≍ U'", [=](Rng& rng, Case& c) {
    const std::size_t n = pick(rng, 1, max);
    const QRegister u = draw_unit(rng, n);
    const QRegister v = random_index(rng, 2) == 0 ? unit_register(n) : draw_unit(rng, n);
    c.expect(equivalent(u, v, c.tol()).has_value(), "U, U'");
  }, {}});

  laws.push_back({"unit registers have one-dimensional domains", [=](Rng& rng, Case& c) {
    const std::size_t n = pick(rng, 1, max);
    const QRegister u = complement(random_index(rng, 2) == 0 ? id_register(n)
                                                             : iso_register(random_unitary(rng, n)));
    c.expect(is_unit_register(u, c.tol()) && u.domain_dim() == 1, "domain of a unit register");
  }, {}});

  laws.push_back({"∁id is a unit register with the codomain of id", [=](Rng& rng, Case& c) {
    const std::size_t n = pick(rng, 1, max);
    const QRegister u = complement(id_register(n));
    c.expect(is_unit_register(u, c.tol()) && u.codomain_dim() == n, "∁id");
  }, {}});

  laws.push_back({"the built-in unit register is a unit register", [=](Rng& rng, Case& c) {
    const std::size_t n = pick(rng, 1, max);
    const QRegister u = unit_register(n);
    c.expect(is_unit_register(u, c.tol()) && u.domain_dim() == 1, "unit_register");
  }, {}});

  laws.push_back({"I, U are complements", [=](Rng& rng, Case& c) {
    const std::size_t n = pick(rng, 1, max);
    const QRegister i = iso_register(random_unitary(rng, n));
    const QRegister u = draw_unit(rng, n);
    c.input("I", i);
    c.expect(is_complements(i, u, c.tol()), "I, U");
  }, {}});
  return laws;
}

// Lifting lemmas ---------------------------------------------------------------

CMatrix scalar(Complex z) {
  CMatrix m(1, 1);
  m(0, 0) = z;
  return m;
}

CMatrix rank_two_or_pure(Rng& rng, std::size_t d, bool pure) {
  const CMatrix v = random_unitary(rng, d);
  if (pure || d == 1) return outer(v.col(0), v.col(0));
  return 0.5 * outer(v.col(0), v.col(0)) + 0.5 * outer(v.col(1), v.col(1));
}

Measurement random_projective(Rng& rng, std::size_t m, MeasurementKind kind) {
  const CMatrix v = random_unitary(rng, m);
  const std::size_t r = kind == MeasurementKind::complete ? m : pick(rng, 1, m);
  std::vector<CMatrix> ops(r, CMatrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m)));
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = i < r ? i : random_index(rng, r);
    ops[j] += outer(v.col(static_cast<Eigen::Index>(i)), v.col(static_cast<Eigen::Index>(i)));
  }
  return Measurement(kind, std::move(ops));
}

QChannel random_channel(Rng& rng, std::size_t d, bool subchannel) {
  return QChannel::from_kraus(random_kraus(rng, d, pick(rng, 1, 3), subchannel));
}

QChannel superoperator_form(const QChannel& e) {
  return QChannel::from_superoperator(e.superoperator());
}

Regs permuted(const Regs& v, const std::vector<std::size_t>& perm) {
  Regs out;
  for (std::size_t i : perm) out.push_back(v[i]);
  return out;
}

template <class T>
std::vector<T> permuted(const std::vector<T>& v, const std::vector<std::size_t>& perm) {
  std::vector<T> out;
  for (std::size_t i : perm) out.push_back(v[i]);
  return out;
}

std::vector<LawSpec> lifting_laws(const LawOptions& o) {
  const std::size_t max = o.max_dim;
  std::vector<LawSpec> laws;

  auto sub_setup = [=](Rng& rng, Case& c) {
    const QRegister f = draw_register(rng, max);
    c.input("F", f);
    return f;
  };
  auto rsub = [](Rng& rng, std::size_t n) { return random_subspace(rng, n, pick(rng, 0, n)); };
  auto same = [](Case& c, const Subspace& a, const Subspace& b, const std::string& what) {
    c.expect_eq(a.projector(), b.projector(), what);
  };

  laws.push_back({"lift.sub: F(S⊥) = F(S)⊥", [=](Rng& rng, Case& c) {
    const QRegister f = sub_setup(rng, c);
    const Subspace s = rsub(rng, f.domain_dim());
    same(c, lift_subspace(f, orthogonal_complement(s, c.tol()), c.tol()),
         orthogonal_complement(lift_subspace(f, s, c.tol()), c.tol()), "F(S⊥)");
  }, {}});

  laws.push_back({"lift.sub: F({0}) = {0}, F(full) = full", [=](Rng& rng, Case& c) {
    const QRegister f = sub_setup(rng, c);
    c.expect(lift_subspace(f, Subspace::zero(f.domain_dim()), c.tol()).rank() == 0, "F({0})");
    c.expect(lift_subspace(f, Subspace::full(f.domain_dim()), c.tol()).rank() == f.codomain_dim(),
             "F(full)");
  }, {}});

  laws.push_back({"lift.sub: S ⊆ T ⇔ F(S) ⊆ F(T)", [=](Rng& rng, Case& c) {
    const QRegister f = sub_setup(rng, c);
    const std::size_t m = f.domain_dim();
    const Subspace s = rsub(rng, m);
    const Subspace t = random_index(rng, 2) == 0 ? sum(s, rsub(rng, m), c.tol()) : rsub(rng, m);
    c.expect(contains(t, s, c.tol()) ==
                 contains(lift_subspace(f, t, c.tol()), lift_subspace(f, s, c.tol()), c.tol()),
             "inclusion not reflected");
  }, {}});

  laws.push_back({"lift.sub: F(S ∩ T) = F(S) ∩ F(T)", [=](Rng& rng, Case& c) {
    const QRegister f = sub_setup(rng, c);
    const std::size_t m = f.domain_dim();
    const Subspace common = rsub(rng, m);
    const Subspace s = sum(common, rsub(rng, m), c.tol());
    const Subspace t = sum(common, rsub(rng, m), c.tol());
    same(c, lift_subspace(f, intersect(s, t, c.tol()), c.tol()),
         intersect(lift_subspace(f, s, c.tol()), lift_subspace(f, t, c.tol()), c.tol()), "F(S∩T)");
  }, {}});

  laws.push_back({"lift.sub: F(S + T) = F(S) + F(T)", [=](Rng& rng, Case& c) {
    const QRegister f = sub_setup(rng, c);
    const std::size_t m = f.domain_dim();
    const Subspace s = rsub(rng, m);
    const Subspace t = rsub(rng, m);
    same(c, lift_subspace(f, sum(s, t, c.tol()), c.tol()),
         sum(lift_subspace(f, s, c.tol()), lift_subspace(f, t, c.tol()), c.tol()), "F(S+T)");
  }, {}});

  auto part = [=](Rng& rng, Case& c, std::size_t count) {
    const Drawn d = draw_partition(rng, count, max);
    note(c, d);
    return d;
  };
  auto densities = [](Rng& rng, const Drawn& d) {
    Ops out;
    for (std::size_t x : d.dims) out.push_back(random_density(rng, x));
    return out;
  };
  auto operators = [](Rng& rng, const Drawn& d) {
    Ops out;
    for (std::size_t x : d.dims) out.push_back(gaussian(rng, x));
    return out;
  };
  auto vectors = [](Rng& rng, const Drawn& d) {
    Vecs out;
    for (std::size_t x : d.dims) out.push_back(gaussian_vec(rng, x));
    return out;
  };
  auto random_perm = [](Rng& rng, std::size_t n) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    return perm;
  };

  laws.push_back({"mixed.states (i): lifted densities are densities", [=](Rng& rng, Case& c) {
    const Drawn d = part(rng, c, pick(rng, 1, 3));
    const CMatrix rho = lift_mixed(d.parts, densities(rng, d), c.tol());
    c.expect(classify_operator(rho, c.tol()).density, "not a density operator");
  }, {}});

  laws.push_back({"mixed.states (ii): trace is the product of traces", [=](Rng& rng, Case& c) {
    const Drawn d = part(rng, c, pick(rng, 1, 3));
    const Ops ops = operators(rng, d);
    Complex t = 1.0;
    for (const auto& x : ops) t *= x.trace();
    c.expect_eq(scalar(lift_mixed(d.parts, ops, c.tol()).trace()), scalar(t), "trace");
  }, {}});

  laws.push_back({"mixed.states (iii): permutation invariance", [=](Rng& rng, Case& c) {
    const Drawn d = part(rng, c, 3);
    const Ops ops = operators(rng, d);
    const auto perm = random_perm(rng, 3);
    c.expect_eq(lift_mixed(d.parts, ops, c.tol()),
                lift_mixed(permuted(d.parts, perm), permuted(ops, perm), c.tol()), "permuted");
  }, {}});

  laws.push_back({"mixed.states (iv): F1(Uρ1V) ⋈ … = F1(U)(…)F1(V)", [=](Rng& rng, Case& c) {
    const Drawn d = part(rng, c, pick(rng, 1, 3));
    Ops ops = operators(rng, d);
    const CMatrix u = gaussian(rng, d.dims[0]);
    const CMatrix v = gaussian(rng, d.dims[0]);
    const CMatrix base = lift_mixed(d.parts, ops, c.tol());
    ops[0] = u * ops[0] * v;
    c.expect_eq(lift_mixed(d.parts, ops, c.tol()),
                d.parts[0].apply(u) * base * d.parts[0].apply(v), "F1(Uρ1V)");
  }, {}});

  laws.push_back({"mixed.states (v): rank one iff every factor has rank one", [=](Rng& rng, Case& c) {
    const Drawn d = part(rng, c, pick(rng, 1, 3));
    Ops ops;
    bool all_pure = true;
    for (std::size_t x : d.dims) {
      const bool pure = random_index(rng, 3) != 0;
      ops.push_back(rank_two_or_pure(rng, x, pure));
      all_pure = all_pure && (pure || x == 1);
    }
    const std::size_t r = orthonormal_range_basis(lift_mixed(d.parts, ops, c.tol()), c.tol()).rank();
    c.expect((r == 1) == all_pure, "rank " + std::to_string(r));
  }, {}});

  laws.push_back({"mixed.states (vii): ⟨F1,F2⟩(ρ1⊗ρ2) ⋈ … flattens", [=](Rng& rng, Case& c) {
    const Drawn d = part(rng, c, 3);
    const Ops ops = operators(rng, d);
    const Regs paired{pair(d.parts[0], d.parts[1], c.tol()), d.parts[2]};
    const Ops joined{kron(ops[0], ops[1]), ops[2]};
    c.expect_eq(lift_mixed(d.parts, ops, c.tol()), lift_mixed(paired, joined, c.tol()), "pair");
  }, {}});

  laws.push_back({"mixed.states (x): nested partitions flatten", [=](Rng& rng, Case& c) {
    const auto dd = draw_dims(rng, 3, max);
    const std::array<std::size_t, 2> outer_dims{dd[0] * dd[1], dd[2]};
    const std::array<std::size_t, 2> inner_dims{dd[0], dd[1]};
    const Regs outer = random_partition(rng, outer_dims);
    const Regs inner = random_partition(rng, inner_dims);
    const CMatrix s1 = gaussian(rng, dd[0]), s2 = gaussian(rng, dd[1]), r = gaussian(rng, dd[2]);
    const Regs flat{chain(outer[0], inner[0]), chain(outer[0], inner[1]), outer[1]};
    const Ops inner_ops{s1, s2};
    const Ops nested_ops{lift_mixed(inner, inner_ops, c.tol()), r};
    c.expect_eq(lift_mixed(flat, Ops{s1, s2, r}, c.tol()), lift_mixed(outer, nested_ops, c.tol()),
                "nested");
  }, {}});

  laws.push_back({"lift.pure (i): norm is the product of norms", [=](Rng& rng, Case& c) {
    const Drawn d = part(rng, c, pick(rng, 1, 3));
    const Vecs psis = vectors(rng, d);
    double prod = 1.0;
    for (const auto& v : psis) prod *= v.norm();
    c.expect_eq(scalar(lift_pure(d.parts, psis, c.tol()).norm()), scalar(prod), "norm");
  }, {}});

  laws.push_back({"lift.pure (ii): permutation invariance", [=](Rng& rng, Case& c) {
    const Drawn d = part(rng, c, 3);
    const Vecs psis = vectors(rng, d);
    const auto perm = random_perm(rng, 3);
    c.expect_eq(lift_pure(d.parts, psis, c.tol()),
                lift_pure(permuted(d.parts, perm), permuted(psis, perm), c.tol()), "permuted");
  }, {}});

  laws.push_back({"lift.pure (iv): ⟨F1,F2⟩(ψ1⊗ψ2) ▷ … flattens", [=](Rng& rng, Case& c) {
    const Drawn d = part(rng, c, 3);
    const Vecs psis = vectors(rng, d);
    const Regs paired{pair(d.parts[0], d.parts[1], c.tol()), d.parts[2]};
    const Vecs joined{kron(psis[0], psis[1]), psis[2]};
    c.expect_eq(lift_pure(d.parts, psis, c.tol()), lift_pure(paired, joined, c.tol()), "pair");
  }, {}});

  laws.push_back({"lift.pure (vi): nested η-regular partitions flatten", [=](Rng& rng, Case& c) {
    const auto dd = draw_dims(rng, 3, max);
    const std::array<std::size_t, 2> outer_dims{dd[0] * dd[1], dd[2]};
    const Regs outer = random_partition(rng, outer_dims);
    const bool flip = random_index(rng, 2) == 0;
    Regs inner{fst_register(dd[0], dd[1]), snd_register(dd[0], dd[1])};
    Vecs inner_psis{gaussian_vec(rng, dd[0]), gaussian_vec(rng, dd[1])};
    if (flip) {
      std::swap(inner[0], inner[1]);
      std::swap(inner_psis[0], inner_psis[1]);
    }
    const CVector r = gaussian_vec(rng, dd[2]);
    c.input("outer F1", outer[0]);
    c.input("outer F2", outer[1]);
    c.expect(is_eta_regular(inner[0], c.tol()) && is_eta_regular(inner[1], c.tol()),
             "inner registers are not η-regular");
    const Regs flat{chain(outer[0], inner[0]), chain(outer[0], inner[1]), outer[1]};
    const Vecs nested{lift_pure(inner, inner_psis, c.tol()), r};
    c.expect_eq(lift_pure(flat, Vecs{inner_psis[0], inner_psis[1], r}, c.tol()),
                lift_pure(outer, nested, c.tol()), "nested");
  }, {}});

  laws.push_back({"lift.pure (viii): F1(Uψ1) ▷ … = F1(U)(…)", [=](Rng& rng, Case& c) {
    const Drawn d = part(rng, c, pick(rng, 1, 3));
    Vecs psis = vectors(rng, d);
    const CMatrix u = gaussian(rng, d.dims[0]);
    const CVector base = lift_pure(d.parts, psis, c.tol());
    psis[0] = u * psis[0];
    c.expect_eq(lift_pure(d.parts, psis, c.tol()), d.parts[0].apply(u) * base, "F1(Uψ1)");
  }, {}});

  laws.push_back({"lift.pure (ix): butterflies of lifted states", [=](Rng& rng, Case& c) {
    const Drawn d = part(rng, c, pick(rng, 1, 3));
    const Vecs psis = vectors(rng, d);
    Ops butterflies;
    for (const auto& v : psis) butterflies.push_back(outer(v, v));
    const CVector psi = lift_pure(d.parts, psis, c.tol());
    c.expect_eq(lift_mixed(d.parts, butterflies, c.tol()), outer(psi, psi), "butterfly");
  }, {}});

  laws.push_back({"lift.pure (x): ψi ∈ Si ⇒ lifted state ∈ Fi(Si)", [=](Rng& rng, Case& c) {
    const Drawn d = part(rng, c, pick(rng, 1, 3));
    Vecs psis;
    std::vector<Subspace> subs;
    for (std::size_t x : d.dims) {
      subs.push_back(random_subspace(rng, x, pick(rng, 1, x)));
      psis.push_back(subs.back().basis() * gaussian_vec(rng, subs.back().rank()));
    }
    const CVector psi = lift_pure(d.parts, psis, c.tol());
    for (std::size_t i = 0; i < subs.size(); ++i) {
      c.expect(contains_vector(lift_subspace(d.parts[i], subs[i], c.tol()), psi, c.tol()),
               "not in F" + std::to_string(i + 1) + "(S" + std::to_string(i + 1) + ")");
    }
  }, {}});

  laws.push_back({"lift.channel (ii): the choice of complement is irrelevant", [=](Rng& rng, Case& c) {
    const QRegister f = draw_register(rng, max);
    const QRegister g1 = complement(f);
    const QRegister g2 = chain(g1, iso_register(random_unitary(rng, g1.domain_dim())));
    const QChannel e = superoperator_form(random_channel(rng, f.domain_dim(), true));
    c.input("F", f);
    c.input("second complement", g2);
    const QChannel a = lift_channel_with_complement(f, g1, e, c.tol());
    c.expect_eq(a, lift_channel_with_complement(f, g2, e, c.tol()), "two complements");
    c.expect_eq(a, lift_channel(f, e), "built-in complement");
  }, {}});

  laws.push_back({"lift.kraus (iii): Kraus and conjugation lifts agree", [=](Rng& rng, Case& c) {
    const QRegister f = draw_register(rng, max);
    const QChannel e = random_channel(rng, f.domain_dim(), random_index(rng, 2) == 0);
    c.input("F", f);
    c.expect_eq(lift_channel(f, e, ChannelLift::kraus), lift_channel(f, e, ChannelLift::conjugation),
                "Kraus vs conjugation");
  }, {}});

  laws.push_back({"lift.channel (iii): F(ℰ)∘F(ℱ) = F(ℰ∘ℱ)", [=](Rng& rng, Case& c) {
    const QRegister f = draw_register(rng, max);
    const QChannel e = superoperator_form(random_channel(rng, f.domain_dim(), true));
    const QChannel g = random_channel(rng, f.domain_dim(), true);
    c.input("F", f);
    c.expect_eq(compose(lift_channel(f, e), lift_channel(f, g)), lift_channel(f, compose(e, g)),
                "composition");
  }, {}});

  laws.push_back({"lift.channel (iv): ⟨F,G⟩(ℰ⊗ℱ) = F(ℰ)∘G(ℱ) = G(ℱ)∘F(ℰ)", [=](Rng& rng, Case& c) {
    const Drawn d = part(rng, c, pick(rng, 2, 3));
    const QChannel e = random_channel(rng, d.dims[0], true);
    const QChannel g = superoperator_form(random_channel(rng, d.dims[1], true));
    const QChannel fe = lift_channel(d.parts[0], e);
    const QChannel gg = lift_channel(d.parts[1], g);
    const QChannel both = lift_channel(pair(d.parts[0], d.parts[1], c.tol()), tensor_channels(e, g));
    c.expect_eq(both, compose(fe, gg), "⟨F,G⟩(ℰ⊗ℱ) vs F(ℰ)∘G(ℱ)");
    c.expect_eq(both, compose(gg, fe), "⟨F,G⟩(ℰ⊗ℱ) vs G(ℱ)∘F(ℰ)");
  }, {}});

  laws.push_back({"lift.channel (vi): F1(ℰ) on a lifted product", [=](Rng& rng, Case& c) {
    const Drawn d = part(rng, c, pick(rng, 1, 3));
    Ops ops = densities(rng, d);
    const QChannel e = random_channel(rng, d.dims[0], true);
    const CMatrix before = lift_mixed(d.parts, ops, c.tol());
    ops[0] = e(ops[0]);
    c.expect_eq(lift_channel(d.parts[0], e)(before), lift_mixed(d.parts, ops, c.tol()), "F1(ℰ)");
  }, {}});

  laws.push_back({"lift.channel (vii): F(G(ℰ)) = (F.G)(ℰ)", [=](Rng& rng, Case& c) {
    const QRegister f = draw_register(rng, max);
    const QRegister g = draw_into(rng, f.domain_dim());
    const QChannel e = superoperator_form(random_channel(rng, g.domain_dim(), true));
    c.input("F", f);
    c.input("G", g);
    c.expect_eq(lift_channel(f, lift_channel(g, e)), lift_channel(chain(f, g), e), "chain");
  }, {}});

  laws.push_back({"lift.channel (viii): σ(ℰ⊗ℱ) = ℱ⊗ℰ", [=](Rng& rng, Case& c) {
    const auto d = draw_dims(rng, 2, max);
    const QChannel e = random_channel(rng, d[0], true);
    const QChannel g = random_channel(rng, d[1], true);
    c.expect_eq(lift_channel(swap_register(d[0], d[1]), tensor_channels(e, g)), tensor_channels(g, e),
                "σ(ℰ⊗ℱ)");
  }, {}});

  laws.push_back({"lift.channel (v): F(id) = id", [=](Rng& rng, Case& c) {
    const QRegister f = draw_register(rng, max);
    c.input("F", f);
    const QChannel id = QChannel::identity(f.domain_dim());
    c.expect_eq(lift_channel(f, id, ChannelLift::conjugation), QChannel::identity(f.codomain_dim()),
                "F(id)");
  }, {}});

  laws.push_back({"partial.tr (vi): tracing in one part of a partition", [=](Rng& rng, Case& c) {
    const Drawn d = part(rng, c, pick(rng, 1, 3));
    const Ops ops = operators(rng, d);
    const CMatrix rho = lift_mixed(d.parts, ops, c.tol());
    const std::size_t i = random_index(rng, ops.size());
    Complex t = 1.0;
    for (std::size_t j = 0; j < ops.size(); ++j) {
      if (j != i) t *= ops[j].trace();
    }
    c.expect_eq(trace_in(d.parts[i], rho), t * ops[i], "≫Fi");
  }, {}});

  laws.push_back({"partial.tr (vii): ≫(F.G) = ≫G ∘ ≫F", [=](Rng& rng, Case& c) {
    const QRegister f = draw_register(rng, max);
    const QRegister g = draw_into(rng, f.domain_dim());
    const CMatrix rho = gaussian(rng, f.codomain_dim());
    c.input("F", f);
    c.input("G", g);
    c.expect_eq(trace_in(chain(f, g), rho), trace_in(g, trace_in(f, rho)), "≫(F.G)");
  }, {}});

  laws.push_back({"partial.tr (viii): ≫F ∘ F(ℰ) = ℰ ∘ ≫F", [=](Rng& rng, Case& c) {
    const QRegister f = draw_register(rng, max);
    const QChannel e = random_channel(rng, f.domain_dim(), true);
    const CMatrix rho = random_density(rng, f.codomain_dim());
    c.input("F", f);
    c.expect_eq(trace_in(f, lift_channel(f, e)(rho)), e(trace_in(f, rho)), "≫F∘F(ℰ)");
  }, {}});

  laws.push_back({"partial.tr (ix): ≫F ∘ G(ℰ) = ≫F for compatible F, G", [=](Rng& rng, Case& c) {
    const Drawn d = part(rng, c, pick(rng, 2, 3));
    const QChannel e = random_channel(rng, d.dims[1], false);
    const CMatrix rho = gaussian(rng, d.n);
    c.expect_eq(trace_in(d.parts[0], lift_channel(d.parts[1], e)(rho)), trace_in(d.parts[0], rho),
                "≫F∘G(ℰ)");
  }, {}});

  // Measurements act on F(ρ) ⋈ ∁F(σ) and on F(ψ) ▷ ∁F(φ).
  auto check_stats = [](Case& c, const QRegister& f, const Measurement& m, Rng& rng,
                        bool with_post) {
    const QRegister g = complement(f);
    const Regs regs{f, g};
    const CMatrix rho = random_density(rng, f.domain_dim());
    const CMatrix sigma = random_density(rng, g.domain_dim());
    const CVector psi = random_unit_vector(rng, f.domain_dim());
    const CVector phi = random_unit_vector(rng, g.domain_dim());
    const Measurement lifted = lift_measurement(f, m);
    const DensityOp big_rho(lift_mixed(regs, Ops{rho, sigma}, c.tol()), false, c.tol());
    const CVector big_psi = lift_pure(regs, Vecs{psi, phi}, c.tol());
    for (const std::string& label : m.labels()) {
      const Outcome small_d = measure(m, label, DensityOp(rho, false, c.tol()));
      const Outcome large_d = measure(lifted, label, big_rho);
      const Outcome small_p = measure(m, label, psi);
      const Outcome large_p = measure(lifted, label, big_psi);
      c.expect_eq(scalar(large_d.probability), scalar(small_d.probability), "probability (mixed) " + label);
      c.expect_eq(scalar(large_p.probability), scalar(small_p.probability), "probability (pure) " + label);
      if (with_post) {
        c.expect_eq(*large_d.post_state, lift_mixed(regs, Ops{*small_d.post_state, sigma}, c.tol()),
                    "post-state (mixed) " + label);
        c.expect_eq(*large_p.post_state,
                    lift_pure(regs, Vecs{CVector(small_p.post_state->col(0)), phi}, c.tol()),
                    "post-state (pure) " + label);
      }
    }
  };

  laws.push_back({"proj.meas: lifted projective statistics", [=](Rng& rng, Case& c) {
    const QRegister f = draw_register(rng, max);
    c.input("F", f);
    const Measurement m = random_projective(rng, f.domain_dim(), MeasurementKind::projective);
    c.expect(lift_measurement(f, m).kind() == MeasurementKind::projective, "kind changed");
    check_stats(c, f, m, rng, true);
  }, {}});

  laws.push_back({"proj.meas: complete measurements lift as projective", [=](Rng& rng, Case& c) {
    const QRegister f = draw_register(rng, max);
    c.input("F", f);
    const Measurement m = random_projective(rng, f.domain_dim(), MeasurementKind::complete);
    const Measurement lifted = lift_measurement(f, m);
    c.expect(lifted.kind() == MeasurementKind::projective, "kind is not projective");
    for (const auto& p : lifted.operators()) {
      c.expect(orthonormal_range_basis(p, c.tol()).rank() == f.env_dim(), "lifted projector rank");
    }
    check_stats(c, f, m, rng, true);
  }, {}});

  laws.push_back({"povm: lifted POVM statistics", [=](Rng& rng, Case& c) {
    const QRegister f = draw_register(rng, max);
    c.input("F", f);
    Ops ops;
    for (const auto& k : random_kraus(rng, f.domain_dim(), pick(rng, 1, 3), false)) {
      ops.push_back(k.adjoint() * k);
    }
    const Measurement m(MeasurementKind::povm, ops, {}, c.tol());
    c.expect(lift_measurement(f, m).kind() == MeasurementKind::povm, "kind changed");
    check_stats(c, f, m, rng, false);
  }, {}});

  laws.push_back({"general.meas: lifted general measurement statistics", [=](Rng& rng, Case& c) {
    const QRegister f = draw_register(rng, max);
    c.input("F", f);
    const Measurement m(MeasurementKind::general,
                        random_kraus(rng, f.domain_dim(), pick(rng, 1, 3), false), {}, c.tol());
    c.expect(lift_measurement(f, m).kind() == MeasurementKind::general, "kind changed");
    check_stats(c, f, m, rng, true);
  }, {}});

  laws.push_back({"povm: projective and POVM views agree", [=](Rng& rng, Case& c) {
    const QRegister f = draw_register(rng, max);
    c.input("F", f);
    const Measurement proj = random_projective(rng, f.domain_dim(), MeasurementKind::projective);
    const Measurement povm(MeasurementKind::povm, proj.operators(), proj.labels(), c.tol());
    const CMatrix rho = random_density(rng, f.codomain_dim());
    const Measurement lp = lift_measurement(f, proj);
    const Measurement lv = lift_measurement(f, povm);
    for (const auto& label : proj.labels()) {
      c.expect_eq(scalar(measure(lp, label, DensityOp(rho, false, c.tol())).probability),
                  scalar(measure(lv, label, DensityOp(rho, false, c.tol())).probability),
                  "probability " + label);
    }
  }, {}});
  return laws;
}

// Classical laws -----------------------------------------------------------------

struct CDrawn {
  std::vector<CRegister> parts;
  std::vector<std::size_t> dims;
  std::size_t n = 1;
};

std::vector<std::size_t> random_perm(Rng& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

/// Three compatible classical registers: the components of
/// A × (B × C), seen through a random bijection of the memory and random
/// bijections of each component.
CDrawn cpartition(Rng& rng, std::size_t max) {
  CDrawn d;
  d.dims = draw_dims(rng, 3, max, 3);
  d.n = product(d.dims);
  const std::size_t bc = d.dims[1] * d.dims[2];
  const CRegister y = cmapped(random_perm(rng, d.n));
  const CRegister rest = cchain(y, csnd(d.dims[0], bc));
  d.parts = {cchain(y, cfst(d.dims[0], bc)), cchain(rest, cfst(d.dims[1], d.dims[2])),
             cchain(rest, csnd(d.dims[1], d.dims[2]))};
  for (std::size_t i = 0; i < 3; ++i) {
    d.parts[i] = cchain(d.parts[i], cmapped(random_perm(rng, d.dims[i])));
  }
  return d;
}

void cnote(Case& c, const CDrawn& d) {
  for (std::size_t i = 0; i < d.parts.size(); ++i) c.input("F" + std::to_string(i + 1), d.parts[i]);
}

CRegister cdraw_into(Rng& rng, std::size_t memory) {
  std::vector<std::size_t> divs;
  for (std::size_t x = 1; x <= memory; ++x) {
    if (memory % x == 0) divs.push_back(x);
  }
  return random_cregister(rng, memory, divs[random_index(rng, divs.size())]);
}

void expect_lawful(Case& c, const CRegister& f, const std::string& what) {
  const LensReport r = validate_lens(f.lens());
  c.expect(r.ok(), what + ": " + (r.ok() ? std::string() : r.failures.front()));
}

std::vector<LawSpec> classical_laws(const LawOptions& o) {
  const std::size_t max = std::min<std::size_t>(o.max_dim, 8);
  std::vector<LawSpec> laws;

  laws.push_back({"built-in lenses are lawful", [=](Rng& rng, Case& c) {
    const auto d = draw_dims(rng, 3, max, 3);
    expect_lawful(c, cid(d[0]), "cid");
    expect_lawful(c, cfst(d[0], d[1]), "cfst");
    expect_lawful(c, csnd(d[0], d[1]), "csnd");
    expect_lawful(c, cswap(d[0], d[1]), "cswap");
    expect_lawful(c, cassoc(d[0], d[1], d[2]), "cassoc");
    expect_lawful(c, cunit(product(d)), "cunit");
    expect_lawful(c, cmapped(random_perm(rng, product(d))), "cmapped");
  }, {}});

  laws.push_back({"cpair outputs are lawful", [=](Rng& rng, Case& c) {
    const CDrawn d = cpartition(rng, max);
    cnote(c, d);
    expect_lawful(c, cpair(d.parts[0], d.parts[1]), "cpair(F,G)");
    expect_lawful(c, cpair(cpair(d.parts[0], d.parts[1]), d.parts[2]), "cpair(cpair(F,G),H)");
  }, {}});

  laws.push_back({"cchain outputs are lawful", [=](Rng& rng, Case& c) {
    const std::size_t n = pick(rng, 1, max);
    const CRegister f = cdraw_into(rng, n);
    const CRegister g = cdraw_into(rng, f.domain_size());
    c.input("F", f);
    c.input("G", g);
    expect_lawful(c, cchain(f, g), "cchain(F,G)");
  }, {}});

  laws.push_back({"ccompatible agrees with brute force (|B| ≤ 4, |A| ≤ 3, exhaustive)", {},
                  [](LawResult& r) {
    for (std::size_t n = 1; n <= 4; ++n) {
      std::vector<CRegister> regs;
      for (std::size_t a = 1; a <= 3; ++a) {
        for (auto& f : all_registers(n, a)) regs.push_back(std::move(f));
      }
      for (const auto& f : regs) {
        for (const auto& g : regs) {
          ++r.cases;
          ++r.requested;
          if (ccompatible(f, g) != brute_force_commute(f, g)) {
            ++r.failures;
            if (r.counterexample.empty()) {
              r.counterexample = "disagreement\n    F: " + lens_text(f) + "\n    G: " + lens_text(g);
            }
          }
        }
      }
    }
  }});

  laws.push_back({"capply is a monoid homomorphism", [=](Rng& rng, Case& c) {
    const CRegister f = cdraw_into(rng, pick(rng, 1, max));
    const PartialFn a = random_partial_fn(rng, f.domain_size());
    const PartialFn b = random_partial_fn(rng, f.domain_size());
    c.input("F", f);
    c.input("a", a);
    c.input("b", b);
    c.expect(capply(f, identity_fn(f.domain_size())) == identity_fn(f.memory_size()), "F(id)");
    c.expect(capply(f, compose_fn(a, b)) == compose_fn(capply(f, a), capply(f, b)), "F(a∘b)");
  }, {}});

  laws.push_back({"tensor.ab: (F⊗G)(a⊗b) = F(a)⊗G(b)", [=](Rng& rng, Case& c) {
    const auto d = draw_dims(rng, 2, max, 4);
    const CRegister f = cdraw_into(rng, d[0]);
    const CRegister g = cdraw_into(rng, d[1]);
    const PartialFn a = random_partial_fn(rng, f.domain_size());
    const PartialFn b = random_partial_fn(rng, g.domain_size());
    c.input("F", f);
    c.input("G", g);
    c.expect(capply(ctensor_registers(f, g), ctensor(a, b)) == ctensor(capply(f, a), capply(g, b)),
             "(F⊗G)(a⊗b)");
  }, {}});

  laws.push_back({"σ(b⊗a) = a⊗b, σ.Fst = Snd, σ.Snd = Fst", [=](Rng& rng, Case& c) {
    const auto d = draw_dims(rng, 2, max, 4);
    const PartialFn a = random_partial_fn(rng, d[0]);
    const PartialFn b = random_partial_fn(rng, d[1]);
    const CRegister s = cswap(d[0], d[1]);
    c.expect(capply(s, ctensor(b, a)) == ctensor(a, b), "σ(b⊗a)");
    c.expect(same_caction(cchain(s, cfst(d[1], d[0])), csnd(d[0], d[1])), "σ.Fst");
    c.expect(same_caction(cchain(s, csnd(d[1], d[0])), cfst(d[0], d[1])), "σ.Snd");
  }, {}});

  laws.push_back({"α((a⊗b)⊗c) = a⊗(b⊗c)", [=](Rng& rng, Case& c) {
    const auto d = draw_dims(rng, 3, max, 3);
    const PartialFn a = random_partial_fn(rng, d[0]);
    const PartialFn b = random_partial_fn(rng, d[1]);
    const PartialFn x = random_partial_fn(rng, d[2]);
    c.expect(capply(cassoc(d[0], d[1], d[2]), ctensor(ctensor(a, b), x)) ==
                 ctensor(a, ctensor(b, x)),
             "α");
  }, {}});

  laws.push_back({"compatibility closure (Fst/Snd, pair, chains, tensor)", [=](Rng& rng, Case& c) {
    const CDrawn d = cpartition(rng, max);
    cnote(c, d);
    const auto& f = d.parts[0];
    const auto& g = d.parts[1];
    const auto& h = d.parts[2];
    c.expect(ccompatible(cfst(d.dims[0], d.dims[1]), csnd(d.dims[0], d.dims[1])), "Fst, Snd");
    c.expect(ccompatible(cpair(f, g), h), "⟨F,G⟩, H");
    const CRegister inner = cdraw_into(rng, d.dims[0]);
    c.input("H'", inner);
    c.expect(ccompatible(cchain(f, inner), g), "F.H', G");
    const std::size_t k = std::max<std::size_t>(max / d.n, 1);
    const CRegister outer = random_cregister(rng, d.n * pick(rng, 1, k), d.n);
    c.input("C", outer);
    c.expect(ccompatible(cchain(outer, f), cchain(outer, g)), "C.F, C.G");
  }, {}});

  laws.push_back({"F, H and G, L compatible ⇒ F⊗G, H⊗L compatible", [=](Rng& rng, Case& c) {
    const CDrawn left = cpartition(rng, 4);
    const CDrawn right = cpartition(rng, std::max<std::size_t>(max / left.n, 1));
    c.expect(ccompatible(ctensor_registers(left.parts[0], right.parts[0]),
                         ctensor_registers(left.parts[1], right.parts[1])),
             "F⊗G, H⊗L");
  }, {}});

  laws.push_back({"⟨F,G⟩(a⊗b) = F(a)∘G(b)", [=](Rng& rng, Case& c) {
    const CDrawn d = cpartition(rng, max);
    cnote(c, d);
    const PartialFn a = random_partial_fn(rng, d.dims[0]);
    const PartialFn b = random_partial_fn(rng, d.dims[1]);
    c.input("a", a);
    c.input("b", b);
    c.expect(capply(cpair(d.parts[0], d.parts[1]), ctensor(a, b)) ==
                 compose_fn(capply(d.parts[0], a), capply(d.parts[1], b)),
             "pair property");
  }, {}});

  laws.push_back({"⟨F,G⟩.Fst = F, ⟨F,G⟩.Snd = G, ⟨Fst,Snd⟩ = id, ⟨Snd,Fst⟩ = σ", [=](Rng& rng, Case& c) {
    const CDrawn d = cpartition(rng, max);
    cnote(c, d);
    const CRegister fg = cpair(d.parts[0], d.parts[1]);
    c.expect(same_caction(cchain(fg, cfst(d.dims[0], d.dims[1])), d.parts[0]), "⟨F,G⟩.Fst");
    c.expect(same_caction(cchain(fg, csnd(d.dims[0], d.dims[1])), d.parts[1]), "⟨F,G⟩.Snd");
    c.expect(same_caction(cpair(cfst(d.dims[0], d.dims[1]), csnd(d.dims[0], d.dims[1])),
                          cid(d.dims[0] * d.dims[1])),
             "⟨Fst,Snd⟩");
    c.expect(same_caction(cpair(csnd(d.dims[0], d.dims[1]), cfst(d.dims[0], d.dims[1])),
                          cswap(d.dims[0], d.dims[1])),
             "⟨Snd,Fst⟩");
  }, {}});

  laws.push_back({"⟨F,G⟩.σ = ⟨G,F⟩, ⟨F,⟨G,H⟩⟩.α = ⟨⟨F,G⟩,H⟩", [=](Rng& rng, Case& c) {
    const CDrawn d = cpartition(rng, max);
    cnote(c, d);
    const auto& f = d.parts[0];
    const auto& g = d.parts[1];
    const auto& h = d.parts[2];
    c.expect(same_caction(cchain(cpair(f, g), cswap(d.dims[0], d.dims[1])), cpair(g, f)), "⟨F,G⟩.σ");
    c.expect(same_caction(cchain(cpair(f, cpair(g, h)), cassoc(d.dims[0], d.dims[1], d.dims[2])),
                          cpair(cpair(f, g), h)),
             "⟨F,⟨G,H⟩⟩.α");
    c.expect(same_caction(cchain(cpair(cpair(f, g), h), cassoc(d.dims[0], d.dims[1], d.dims[2])),
                          cpair(f, cpair(g, h))),
             "⟨⟨F,G⟩,H⟩.α'");
  }, {}});

  laws.push_back({"⟨C.F, C.G⟩ = C.⟨F,G⟩, ⟨F,G⟩.(C⊗D) = ⟨F.C, G.D⟩", [=](Rng& rng, Case& c) {
    const CDrawn d = cpartition(rng, max);
    cnote(c, d);
    const auto& f = d.parts[0];
    const auto& g = d.parts[1];
    const std::size_t k = std::max<std::size_t>(max / d.n, 1);
    const CRegister outer = random_cregister(rng, d.n * pick(rng, 1, k), d.n);
    const CRegister cr = cdraw_into(rng, d.dims[0]);
    const CRegister dr = cdraw_into(rng, d.dims[1]);
    c.input("C", outer);
    c.expect(same_caction(cpair(cchain(outer, f), cchain(outer, g)), cchain(outer, cpair(f, g))),
             "⟨C.F, C.G⟩");
    c.expect(same_caction(cchain(cpair(f, g), ctensor_registers(cr, dr)),
                          cpair(cchain(f, cr), cchain(g, dr))),
             "⟨F,G⟩.(C⊗D)");
  }, {}});
  return laws;
}

}  // namespace

SuiteReport run_fig2(const LawOptions& opts) { return run_laws("fig2", fig2_laws(opts), opts); }
SuiteReport run_fig4(const LawOptions& opts) { return run_laws("fig4", fig4_laws(opts), opts); }
SuiteReport run_lifting(const LawOptions& opts) {
  return run_laws("lifting", lifting_laws(opts), opts);
}
SuiteReport run_classical(const LawOptions& opts) {
  return run_laws("classical", classical_laws(opts), opts);
}

SuiteReport run_suite(const std::string& name, const LawOptions& opts) {
  if (name == "fig2") return run_fig2(opts);
  if (name == "fig4") return run_fig4(opts);
  if (name == "lifting") return run_lifting(opts);
  if (name == "classical") return run_classical(opts);
  throw InvalidArgument("unknown law suite '" + name + "'");
}

std::string format_report(const SuiteReport& report) {
  std::ostringstream os;
  for (const auto& l : report.laws) {
    os << (l.passed() ? "PASS " : "FAIL ") << report.suite << ": " << l.law << "  (cases "
       << l.cases;
    if (l.vacuous) os << ", vacuous " << l.vacuous;
    if (l.failures) os << ", failures " << l.failures;
    os << ", max residual " << l.max_residual << ")\n";
    if (l.cases < l.requested) {
      os << "  only " << l.cases << " of " << l.requested << " cases were non-vacuous\n";
    }
  }
  for (const auto& l : report.laws) {
    if (!l.counterexample.empty()) {
      os << "counterexample for " << report.suite << ": " << l.law << "\n  " << l.counterexample
         << "\n";
    }
  }
  return os.str();
}

}  // namespace regcalc
