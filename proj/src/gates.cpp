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


#include "regcalc/gates.hpp"

#include <cmath>

#include "regcalc/errors.hpp"

namespace regcalc::gates {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}  // namespace

CMatrix hadamard() {
  CMatrix h(2, 2);
  h << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
  return h;
}

CMatrix pauli_x() {
  CMatrix x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

CMatrix pauli_z() {
  CMatrix z(2, 2);
  z << 1, 0, 0, -1;
  return z;
}

CMatrix cnot() {
  CMatrix c = CMatrix::Zero(4, 4);
  c(0, 0) = 1;
  c(1, 1) = 1;
  c(2, 3) = 1;
  c(3, 2) = 1;
  return c;
}

CMatrix swap() {
  CMatrix s = CMatrix::Zero(4, 4);
  s(0, 0) = 1;
  s(1, 2) = 1;
  s(2, 1) = 1;
  s(3, 3) = 1;
  return s;
}

CVector ket(std::size_t dim, std::size_t x) { return basis_vector(dim, x); }

CMatrix projector(std::size_t dim, std::size_t x) { return matrix_unit(dim, x, x); }

CVector bell() {
  CVector b = CVector::Zero(4);
  b(0) = kInvSqrt2;
  b(3) = kInvSqrt2;
  return b;
}

CVector plus() {
  CVector v(2);
  v << kInvSqrt2, kInvSqrt2;
  return v;
}

CVector minus() {
  CVector v(2);
  v << kInvSqrt2, -kInvSqrt2;
  return v;
}

CMatrix power(const CMatrix& a, std::size_t e) {
  if (e > 1) throw InvalidArgument("gate exponent must be 0 or 1");
  return e == 0 ? identity(static_cast<std::size_t>(a.rows())) : a;
}

std::optional<CMatrix> lookup(const std::string& name) {
  if (name == "H") return hadamard();
  if (name == "X") return pauli_x();
  if (name == "Z") return pauli_z();
  if (name == "CNOT") return cnot();
  if (name == "Usigma") return swap();
  if (name == "I2") return identity(2);
  if (name == "beta") return CMatrix(bell());
  if (name == "plus") return CMatrix(plus());
  if (name == "minus") return CMatrix(minus());
  if (name == "ket0") return CMatrix(ket(2, 0));
  if (name == "ket1") return CMatrix(ket(2, 1));
  return std::nullopt;
}

}  // namespace regcalc::gates
