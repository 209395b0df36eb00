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

#ifndef REGCALC_ERRORS_HPP
#define REGCALC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace regcalc {

/// Shapes or dimensions of the arguments do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A linear map handed to canonicalization is not a unital *-homomorphism.
class NotARegister : public std::runtime_error {
 public:
  explicit NotARegister(const std::string& reason)
      : std::runtime_error("not a register: " + reason), reason_(reason) {}
  const std::string& reason() const { return reason_; }

 private:
  std::string reason_;
};

/// Pairing was requested for registers whose updates do not commute.
class IncompatibleRegisters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A value violates the invariant of the domain type it was meant to build
/// (non-unitary matrix for an iso-register, invalid lens, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A register expression does not fit the memory it is resolved against.
/// `path()` locates the offending node, e.g. "pair[1].chain[0]".
class TypeError : public std::invalid_argument {
 public:
  TypeError(const std::string& path, const std::string& message)
      : std::invalid_argument((path.empty() ? std::string("<root>") : path) + ": " + message),
        path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// A Hoare rule's side condition does not hold.
class RuleRejected : public std::runtime_error {
 public:
  RuleRejected(const std::string& message, double residual)
      : std::runtime_error(message + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace regcalc

#endif  // REGCALC_ERRORS_HPP
