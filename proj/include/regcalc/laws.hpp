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

// Seeded randomized suites for the generic register laws, the complement
// and unit laws, the lifting lemmas and the classical instantiation.

#ifndef REGCALC_LAWS_HPP
#define REGCALC_LAWS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "regcalc/linalg.hpp"
#include "regcalc/qregister.hpp"
#include "regcalc/superoperator.hpp"

namespace regcalc {

/// The pair construction under test, at the level of its action. Returning
/// nullopt means the construction refused its inputs, which makes the case
/// vacuous.
using PairFn = std::function<std::optional<Superoperator>(const QRegister&, const QRegister&,
                                                          Tolerance)>;

/// `pair`, refusing incompatible inputs.
PairFn checked_pair();
/// a ⊗ b ↦ F(a)·G(b) with no compatibility precondition.
PairFn unchecked_pair();

struct LawOptions {
  std::uint64_t seed = 1;
  /// Non-vacuous cases per law.
  std::size_t cases = 100;
  /// Largest codomain dimension drawn. Classical memories stay at most 8.
  std::size_t max_dim = 16;
  Tolerance tol{1e-8};
  PairFn pair = checked_pair();
};

struct LawResult {
  std::string law;
  std::size_t cases = 0;
  std::size_t vacuous = 0;
  std::size_t failures = 0;
  std::size_t requested = 0;
  double max_residual = 0.0;
  /// The first failing case: what failed and the inputs involved.
  std::string counterexample;

  bool passed() const { return failures == 0 && cases >= requested; }
};

struct SuiteReport {
  std::string suite;
  std::vector<LawResult> laws;

  bool passed() const;
};

/// "fig2", "fig4", "lifting", "classical".
std::vector<std::string> suite_names();

SuiteReport run_fig2(const LawOptions& opts = {});
SuiteReport run_fig4(const LawOptions& opts = {});
SuiteReport run_lifting(const LawOptions& opts = {});
SuiteReport run_classical(const LawOptions& opts = {});
/// Dispatches on a suite name; throws InvalidArgument for unknown names.
SuiteReport run_suite(const std::string& name, const LawOptions& opts = {});

/// One line per law, followed by counterexamples of failing laws.
std::string format_report(const SuiteReport& report);

}  // namespace regcalc

#endif  // REGCALC_LAWS_HPP
