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

// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only
// when every criterion passes.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "regcalc/errors.hpp"
#include "regcalc/laws.hpp"
#include "regcalc/qregister.hpp"
#include "regcalc/random.hpp"
#include "regcalc/scenarios.hpp"

namespace {

using namespace regcalc;

struct Verdict {
  bool passed = false;
  std::string detail;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string first_failure(const ScenarioReport& r) {
  for (const auto& c : r.checks) {
    if (!c.passed) return "; first failure: " + c.name + " (residual " + sci(c.residual) + ")";
  }
  return "";
}

std::string law_summary(const SuiteReport& r) {
  std::size_t cases = 0, failing = 0, min_cases = static_cast<std::size_t>(-1);
  for (const auto& l : r.laws) {
    cases += l.cases;
    min_cases = std::min(min_cases, l.cases);
    failing += l.passed() ? 0 : 1;
  }
  std::ostringstream os;
  os << r.suite << ": " << r.laws.size() << " laws, " << cases << " cases, min " << min_cases
     << " per law, " << failing << " failing";
  return os.str();
}

Verdict teleport() {
  const auto t0 = std::chrono::steady_clock::now();
  const ScenarioReport r = run_teleport(TeleportOptions{});
  const double t = seconds_since(t0);
  std::size_t triples = 0;
  for (const auto& c : r.checks) triples += c.name.rfind("triple", 0) == 0;
  std::ostringstream os;
  os << r.checks.size() << " checks (" << triples << " triples, 8 basis + 4 random states x 4 "
     << "corrections), " << r.failures() << " failed, " << std::fixed << std::setprecision(2) << t << " s" << first_failure(r);
  return {r.passed() && triples == 48 && t < 10.0, os.str()};
}

Verdict m_equals_m_prime() {
  double worst = 0.0;
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      const CMatrix m = teleport_m(a, b);
      const CMatrix mp = teleport_m_prime(a, b);
      if (m.rows() != 8 || m.cols() != 8 || mp.rows() != 8 || mp.cols() != 8) {
        return {false, "M or M' is not 8x8"};
      }
      worst = std::max(worst, max_abs(m - mp));
    }
  }
  return {worst <= 1e-12, "max entrywise |M - M'| over (a,b) = " + sci(worst)};
}

Verdict triple_cnot() {
  const ScenarioReport r = run_triple_cnot(TripleCnotOptions{});
  return {r.passed(), std::to_string(r.checks.size()) + " checks with a 3-dimensional third register, " +
                          std::to_string(r.failures()) + " failed" + first_failure(r)};
}

Verdict mixed_circuit() {
  const ScenarioReport r = run_mixed_circuit(MixedCircuitOptions{});
  MixedCircuitOptions env;
  env.rest_dim = 2;
  env.scrambled = true;
  const ScenarioReport r2 = run_mixed_circuit(env);
  return {r.passed() && r2.passed(),
          std::to_string(r.checks.size()) + " checks (trivial environment), " +
              std::to_string(r2.checks.size()) + " checks (random qubit environment), " +
              std::to_string(r.failures() + r2.failures()) + " failed" + first_failure(r) +
              first_failure(r2)};
}

Verdict law_suites() {
  const SuiteReport f2 = run_fig2();
  const SuiteReport f4 = run_fig4();
  LawOptions mutant;
  mutant.pair = unchecked_pair();
  const SuiteReport m = run_fig2(mutant);
  std::size_t caught = 0;
  for (const auto& l : m.laws) caught += l.failures > 0;
  return {f2.passed() && f4.passed() && caught > 0,
          law_summary(f2) + "; " + law_summary(f4) + "; mutant pair breaks " +
              std::to_string(caught) + " fig2 laws"};
}

Verdict lifting() {
  const SuiteReport r = run_lifting();
  bool two_complements = false;
  for (const auto& l : r.laws) two_complements |= l.law.find("choice of complement") != std::string::npos;
  return {r.passed() && two_complements, law_summary(r)};
}

Verdict complement_dimension() {
  Rng rng(20260101);
  std::size_t checked = 0;
  std::string bad;
  auto check = [&](const QRegister& f) {
    ++checked;
    const QRegister c = complement(f);
    if (c.domain_dim() * f.domain_dim() != f.codomain_dim() || c.codomain_dim() != f.codomain_dim()) {
      if (bad.empty()) bad = "; mismatch at m=" + std::to_string(f.domain_dim());
    }
  };
  for (std::size_t i = 0; i < 200; ++i) {
    const std::size_t m = 1 + random_index(rng, 4);
    const std::size_t k = 1 + random_index(rng, 16 / m);
    const QRegister f = random_register(rng, m, k);
    check(f);
    check(complement(f));
    const std::size_t m2 = 1 + random_index(rng, m);
    if (m % m2 == 0) check(chain(f, random_register(rng, m2, m / m2)));
    check(tensor_registers(random_register(rng, 1 + random_index(rng, 2), 1 + random_index(rng, 2)),
                           random_register(rng, 1 + random_index(rng, 2), 1 + random_index(rng, 2))));
  }
  const SuiteReport f4 = run_fig4();
  bool law_ok = false;
  for (const auto& l : f4.laws) {
    if (l.law.find("dim domain") != std::string::npos) law_ok = l.passed();
  }
  return {bad.empty() && law_ok, std::to_string(checked) +
                                     " generated registers plus the fig4 dimension law" + bad};
}

Verdict classical() {
  const SuiteReport r = run_classical();
  return {r.passed(), law_summary(r)};
}

bool rejects(const Superoperator& s) {
  try {
    extract_canonical(s, Tolerance(1e-9));
    return false;
  } catch (const NotARegister&) {
    return true;
  }
}

Verdict canonical_round_trip() {
  Rng rng(9);
  double worst = 0.0;
  std::size_t ok = 0;
  for (std::size_t i = 0; i < 200; ++i) {
    const std::size_t m = 1 + random_index(rng, 4);
    const std::size_t k = 1 + random_index(rng, 16 / m);
    const QRegister f = random_register(rng, m, k);
    const QRegister g = extract_canonical(f.superoperator(), Tolerance(1e-9));
    double r = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        const CMatrix e = matrix_unit(m, a, b);
        r = std::max(r, max_abs(f.apply(e) - g.apply(e)));
      }
    }
    worst = std::max(worst, r);
    ok += r <= 1e-9 && g.domain_dim() == m && g.env_dim() == k;
  }
  bool rejected = true;
  for (std::size_t m = 2; m <= 4; ++m) {
    const Superoperator transpose =
        Superoperator::from_map(m, m, [](const CMatrix& a) -> CMatrix { return a.transpose(); });
    const Superoperator trace = Superoperator::from_map(
        m, m, [m](const CMatrix& a) -> CMatrix { return a.trace() / static_cast<double>(m) * identity(m); });
    rejected = rejected && rejects(transpose) && rejects(trace);
  }
  return {ok == 200 && rejected, std::to_string(ok) + "/200 round trips, worst residual " + sci(worst) + ", transpose and normalized trace " +
                                     (rejected ? "rejected" : "NOT rejected")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"1 teleportation triples", teleport},
      {"2 M = M'", m_equals_m_prime},
      {"3 triple CNOT", triple_cnot},
      {"4 mixed circuit", mixed_circuit},
      {"5 register and complement law suites", law_suites},
      {"6 lifting lemma suites", lifting},
      {"7 complement dimension", complement_dimension},
      {"8 classical suite", classical},
      {"9 canonical form round trip", canonical_round_trip},
  };
  bool all = true;
  for (const auto& [name, run] : criteria) {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %s: %s [%.2f s]\n", v.passed ? "PASS" : "FAIL", name.c_str(),
                v.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
    all = all && v.passed;
  }
  std::printf("%s\n", all ? "all acceptance criteria pass" : "some acceptance criteria FAIL");
  return all ? 0 : 1;
}
