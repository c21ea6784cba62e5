// Copyright 2026 The qxmap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

namespace qxmap {

enum class GateKind : std::uint8_t { U, CX };

/// An elementary gate: U(theta, phi, lambda) on one qubit, or CX(control, target).
struct Gate {
  GateKind kind = GateKind::U;
  int q0 = 0;   // U operand or CX control
  int q1 = -1;  // CX target
  double theta = 0.0;
  double phi = 0.0;
  double lambda = 0.0;

  static Gate u(int qubit, double theta, double phi, double lambda) {
    return Gate{GateKind::U, qubit, -1, theta, phi, lambda};
  }
  static Gate cx(int control, int target) {
    return Gate{GateKind::CX, control, target, 0.0, 0.0, 0.0};
  }
  /// Hadamard as U(pi/2, 0, pi).
  static Gate h(int qubit) { return u(qubit, std::numbers::pi / 2, 0.0, std::numbers::pi); }

  bool is_cx() const { return kind == GateKind::CX; }
  bool is_u() const { return kind == GateKind::U; }
  /// Bit-exact U(pi/2, 0, pi).
  bool is_h() const {
    return kind == GateKind::U && theta == std::numbers::pi / 2 && phi == 0.0 &&
           lambda == std::numbers::pi;
  }
  int control() const { return q0; }
  int target() const { return q1; }
  bool acts_on(int q) const { return q0 == q || q1 == q; }

  friend bool operator==(const Gate&, const Gate&) = default;
};

struct ClassicalRegister {
  std::string name;
  int width = 0;
  friend bool operator==(const ClassicalRegister&, const ClassicalRegister&) = default;
};

/// A terminal measurement of `qubit` into `creg[bit]`.
struct Measurement {
  int qubit = 0;
  std::string creg;
  int bit = 0;
  friend bool operator==(const Measurement&, const Measurement&) = default;
};

/// Ordered elementary gate list over `num_qubits` qubits.
///
/// `barriers` holds gate positions: a barrier sits immediately before
/// `gates[pos]` (pos == gates.size() marks a trailing barrier). Barriers span
/// all qubits. Measurements are always terminal.
struct Circuit {
  int num_qubits = 0;
  std::vector<Gate> gates;
  std::vector<std::size_t> barriers;
  std::vector<ClassicalRegister> cregs;
  std::vector<Measurement> measurements;

  std::size_t size() const { return gates.size(); }
  std::size_t cx_count() const;
  std::size_t single_qubit_count() const { return gates.size() - cx_count(); }

  /// Throws std::invalid_argument when an operand is out of range, a CX has
  /// control == target, an angle is not finite, or barrier positions are
  /// unsorted.
  void validate() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// Gates on pairwise-disjoint qubits, stored as ascending indices into the
/// circuit's gate list.
struct Layer {
  std::size_t index = 0;
  std::vector<std::size_t> gates;
};

/// Greedy as-soon-as-possible layering. A gate lands in the first layer after
/// every earlier gate sharing one of its qubits; a barrier pushes all later
/// gates past every layer formed so far.
std::vector<Layer> partition_layers(const Circuit& circuit);

/// Number of layers of `partition_layers(circuit)`.
std::size_t depth(const Circuit& circuit);

}  // namespace qxmap
