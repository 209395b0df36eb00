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


#include "regcalc/classical.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "regcalc/errors.hpp"

namespace regcalc {

namespace {

std::string triple(std::size_t a, std::size_t b) {
  return "(a=" + std::to_string(a) + ", b=" + std::to_string(b) + ")";
}

// The lens induced by a bijection memory → domain × rest.
Lens lens_from_bijection(const std::vector<std::size_t>& phi, std::size_t a_size) {
  const std::size_t n = phi.size();
  const std::size_t rest = n / a_size;
  std::vector<std::size_t> inverse(n);
  for (std::size_t b = 0; b < n; ++b) inverse[phi[b]] = b;
  Lens l{a_size, n, std::vector<std::size_t>(n), std::vector<std::size_t>(a_size * n)};
  for (std::size_t b = 0; b < n; ++b) {
    l.getter[b] = phi[b] / rest;
    for (std::size_t a = 0; a < a_size; ++a) {
      l.setter[a * n + b] = inverse[a * rest + phi[b] % rest];
    }
  }
  return l;
}

}  // namespace

PartialFn identity_fn(std::size_t size) {
  PartialFn f(size);
  for (std::size_t x = 0; x < size; ++x) f[x] = x;
  return f;
}

PartialFn constant_fn(std::size_t size, std::size_t value) {
  if (value >= size) throw InvalidArgument("constant_fn: value out of range");
  return PartialFn(size, value);
}

PartialFn compose_fn(const PartialFn& a, const PartialFn& b) {
  if (a.size() != b.size()) throw DimensionError("compose_fn: sizes differ");
  PartialFn out(b.size());
  for (std::size_t x = 0; x < b.size(); ++x) {
    if (b[x]) out[x] = a[*b[x]];
  }
  return out;
}

PartialFn ctensor(const PartialFn& a, const PartialFn& b) {
  PartialFn out(a.size() * b.size());
  for (std::size_t x = 0; x < a.size(); ++x) {
    for (std::size_t y = 0; y < b.size(); ++y) {
      if (a[x] && b[y]) out[x * b.size() + y] = *a[x] * b.size() + *b[y];
    }
  }
  return out;
}

std::vector<PartialFn> all_partial_fns(std::size_t size) {
  std::vector<PartialFn> out;
  std::vector<std::size_t> digits(size, 0);  // digit `size` encodes undefined
  while (true) {
    PartialFn f(size);
    for (std::size_t x = 0; x < size; ++x) {
      if (digits[x] < size) f[x] = digits[x];
    }
    out.push_back(std::move(f));
    std::size_t pos = 0;
    while (pos < size && ++digits[pos] > size) digits[pos++] = 0;
    if (pos == size) break;
  }
  return out;
}

PartialFn random_partial_fn(Rng& rng, std::size_t size) {
  PartialFn f(size);
  for (auto& v : f) {
    const std::size_t d = random_index(rng, size + 1);
    if (d < size) v = d;
  }
  return f;
}

LensReport validate_lens(const Lens& l) {
  LensReport r;
  for (std::size_t b = 0; b < l.b_size; ++b) {
    if (l.setter[l.getter[b] * l.b_size + b] != b) {
      r.failures.push_back("s(g(b), b) != b at b=" + std::to_string(b));
    }
  }
  for (std::size_t a = 0; a < l.a_size; ++a) {
    for (std::size_t b = 0; b < l.b_size; ++b) {
      const std::size_t sab = l.setter[a * l.b_size + b];
      if (l.getter[sab] != a) r.failures.push_back("g(s(a, b)) != a at " + triple(a, b));
      for (std::size_t a2 = 0; a2 < l.a_size; ++a2) {
        const std::size_t inner = l.setter[a2 * l.b_size + b];
        if (l.setter[a * l.b_size + inner] != sab) {
          r.failures.push_back("s(a, s(a', b)) != s(a, b) at " + triple(a, b) +
                               ", a'=" + std::to_string(a2));
        }
      }
    }
  }
  return r;
}

CRegister::CRegister(Lens lens) : lens_(std::move(lens)) {
  if (lens_.a_size == 0 || lens_.b_size == 0) {
    throw InvalidArgument("lens sets must be non-empty");
  }
  if (lens_.getter.size() != lens_.b_size || lens_.setter.size() != lens_.a_size * lens_.b_size) {
    throw InvalidArgument("lens tables have the wrong length");
  }
  for (const auto v : lens_.getter) {
    if (v >= lens_.a_size) throw InvalidArgument("getter value out of range");
  }
  for (const auto v : lens_.setter) {
    if (v >= lens_.b_size) throw InvalidArgument("setter value out of range");
  }
  const LensReport r = validate_lens(lens_);
  if (!r.ok()) throw InvalidArgument("unlawful lens: " + r.failures.front());
}

PartialFn capply(const CRegister& f, const PartialFn& a) {
  if (a.size() != f.domain_size()) throw DimensionError("capply: update has the wrong domain");
  PartialFn out(f.memory_size());
  for (std::size_t b = 0; b < f.memory_size(); ++b) {
    const auto& img = a[f.get(b)];
    if (img) out[b] = f.set(*img, b);
  }
  return out;
}

CRegister cid(std::size_t size) {
  Lens l{size, size, std::vector<std::size_t>(size), std::vector<std::size_t>(size * size)};
  std::iota(l.getter.begin(), l.getter.end(), 0);
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = 0; b < size; ++b) l.setter[a * size + b] = a;
  }
  return CRegister(std::move(l));
}

CRegister cfst(std::size_t a_size, std::size_t b_size) {
  const std::size_t n = a_size * b_size;
  Lens l{a_size, n, std::vector<std::size_t>(n), std::vector<std::size_t>(a_size * n)};
  for (std::size_t c = 0; c < n; ++c) {
    l.getter[c] = c / b_size;
    for (std::size_t a = 0; a < a_size; ++a) l.setter[a * n + c] = a * b_size + c % b_size;
  }
  return CRegister(std::move(l));
}

CRegister csnd(std::size_t a_size, std::size_t b_size) {
  const std::size_t n = a_size * b_size;
  Lens l{b_size, n, std::vector<std::size_t>(n), std::vector<std::size_t>(b_size * n)};
  for (std::size_t c = 0; c < n; ++c) {
    l.getter[c] = c % b_size;
    for (std::size_t y = 0; y < b_size; ++y) l.setter[y * n + c] = (c / b_size) * b_size + y;
  }
  return CRegister(std::move(l));
}

CRegister cswap(std::size_t a_size, std::size_t b_size) {
  std::vector<std::size_t> f(a_size * b_size);
  for (std::size_t x = 0; x < a_size; ++x) {
    for (std::size_t y = 0; y < b_size; ++y) f[x * b_size + y] = y * a_size + x;
  }
  return cmapped(f);
}

CRegister cassoc(std::size_t a_size, std::size_t b_size, std::size_t c_size) {
  return cid(a_size * b_size * c_size);
}

CRegister cmapped(const std::vector<std::size_t>& f) {
  const std::size_t n = f.size();
  std::vector<bool> seen(n, false);
  for (const auto v : f) {
    if (v >= n || seen[v]) throw InvalidArgument("cmapped: table is not a bijection");
    seen[v] = true;
  }
  return CRegister(lens_from_bijection(f, n));
}

CRegister cunit(std::size_t memory_size) {
  Lens l{1, memory_size, std::vector<std::size_t>(memory_size, 0),
         std::vector<std::size_t>(memory_size)};
  std::iota(l.setter.begin(), l.setter.end(), 0);
  return CRegister(std::move(l));
}

CRegister cpair(const CRegister& f, const CRegister& g) {
  if (f.memory_size() != g.memory_size()) throw DimensionError("cpair: memories differ");
  if (!ccompatible(f, g)) throw IncompatibleRegisters("cpair: registers are not compatible");
  const std::size_t n = f.memory_size();
  const std::size_t ga = g.domain_size();
  const std::size_t a_size = f.domain_size() * ga;
  Lens l{a_size, n, std::vector<std::size_t>(n), std::vector<std::size_t>(a_size * n)};
  for (std::size_t c = 0; c < n; ++c) {
    l.getter[c] = f.get(c) * ga + g.get(c);
    for (std::size_t a = 0; a < f.domain_size(); ++a) {
      for (std::size_t b = 0; b < ga; ++b) l.setter[(a * ga + b) * n + c] = f.set(a, g.set(b, c));
    }
  }
  return CRegister(std::move(l));
}

CRegister cchain(const CRegister& f, const CRegister& g) {
  if (f.domain_size() != g.memory_size()) {
    throw DimensionError("cchain: domain of outer register does not match memory of inner");
  }
  const std::size_t n = f.memory_size();
  const std::size_t a_size = g.domain_size();
  Lens l{a_size, n, std::vector<std::size_t>(n), std::vector<std::size_t>(a_size * n)};
  for (std::size_t c = 0; c < n; ++c) {
    l.getter[c] = g.get(f.get(c));
    for (std::size_t a = 0; a < a_size; ++a) l.setter[a * n + c] = f.set(g.set(a, f.get(c)), c);
  }
  return CRegister(std::move(l));
}

CRegister ctensor_registers(const CRegister& f, const CRegister& g) {
  const std::size_t nf = f.memory_size();
  const std::size_t ng = g.memory_size();
  const std::size_t n = nf * ng;
  const std::size_t ga = g.domain_size();
  const std::size_t a_size = f.domain_size() * ga;
  Lens l{a_size, n, std::vector<std::size_t>(n), std::vector<std::size_t>(a_size * n)};
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t b1 = c / ng;
    const std::size_t b2 = c % ng;
    l.getter[c] = f.get(b1) * ga + g.get(b2);
    for (std::size_t a1 = 0; a1 < f.domain_size(); ++a1) {
      for (std::size_t a2 = 0; a2 < ga; ++a2) {
        l.setter[(a1 * ga + a2) * n + c] = f.set(a1, b1) * ng + g.set(a2, b2);
      }
    }
  }
  return CRegister(std::move(l));
}

bool ccompatible(const CRegister& f, const CRegister& g) {
  if (f.memory_size() != g.memory_size()) throw DimensionError("ccompatible: memories differ");
  for (std::size_t b = 0; b < f.memory_size(); ++b) {
    for (std::size_t a = 0; a < f.domain_size(); ++a) {
      if (g.get(f.set(a, b)) != g.get(b)) return false;
      for (std::size_t a2 = 0; a2 < g.domain_size(); ++a2) {
        if (f.set(a, g.set(a2, b)) != g.set(a2, f.set(a, b))) return false;
      }
    }
    for (std::size_t a2 = 0; a2 < g.domain_size(); ++a2) {
      if (f.get(g.set(a2, b)) != f.get(b)) return false;
    }
  }
  return true;
}

bool brute_force_commute(const CRegister& f, const CRegister& g) {
  if (f.memory_size() != g.memory_size()) {
    throw DimensionError("brute_force_commute: memories differ");
  }
  if (f.domain_size() > 3 || g.domain_size() > 3) {
    throw InvalidArgument("brute_force_commute: domains larger than 3 are not enumerated");
  }
  std::vector<PartialFn> fs;
  for (const auto& a : all_partial_fns(f.domain_size())) fs.push_back(capply(f, a));
  std::vector<PartialFn> gs;
  for (const auto& b : all_partial_fns(g.domain_size())) gs.push_back(capply(g, b));
  for (const auto& x : fs) {
    for (const auto& y : gs) {
      if (compose_fn(x, y) != compose_fn(y, x)) return false;
    }
  }
  return true;
}

bool same_caction(const CRegister& f, const CRegister& g) {
  if (f.domain_size() != g.domain_size() || f.memory_size() != g.memory_size()) return false;
  // Constant updates recover the setter, which fixes the getter through
  // g(s(a, b)) = a.
  for (std::size_t a = 0; a < f.domain_size(); ++a) {
    const PartialFn c = constant_fn(f.domain_size(), a);
    if (capply(f, c) != capply(g, c)) return false;
  }
  return true;
}

std::vector<CRegister> all_registers(std::size_t memory_size, std::size_t domain_size) {
  std::vector<CRegister> out;
  if (domain_size == 0 || memory_size % domain_size != 0) return out;
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::size_t> phi(memory_size);
  std::iota(phi.begin(), phi.end(), 0);
  do {
    Lens l = lens_from_bijection(phi, domain_size);
    if (seen.insert(l.setter).second) out.emplace_back(std::move(l));
  } while (std::next_permutation(phi.begin(), phi.end()));
  return out;
}

CRegister random_cregister(Rng& rng, std::size_t memory_size, std::size_t domain_size) {
  if (domain_size == 0 || memory_size % domain_size != 0) {
    throw InvalidArgument("random_cregister: domain size must divide memory size");
  }
  std::vector<std::size_t> phi(memory_size);
  std::iota(phi.begin(), phi.end(), 0);
  std::shuffle(phi.begin(), phi.end(), rng);
  return CRegister(lens_from_bijection(phi, domain_size));
}

}  // namespace regcalc
