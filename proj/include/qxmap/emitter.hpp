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

#include <string>
#include <string_view>
#include <vector>

#include "qxmap/circuit.hpp"
#include "qxmap/coupling_map.hpp"
#include "qxmap/mapper.hpp"
#include "qxmap/qasm.hpp"

namespace qxmap {

struct EmitStats {
  std::size_t native_cx = 0;
  std::size_t reversed_cx = 0;
  std::size_t swaps = 0;
  std::size_t single_qubit = 0;
};

/// Elementary circuit over physical qubits, ready to run on the device.
struct MappedCircuit {
  /// num_qubits is the physical qubit count m.
  Circuit circuit;
  /// Logical to physical before the first gate.
  Mapping initial;
  /// Logical to physical after the last gate.
  Mapping output;
  EmitStats stats;

  std::size_t gate_count() const { return circuit.size(); }
  std::size_t depth() const { return qxmap::depth(circuit); }
};

/// CX(x,y), H x, H y, CX(x,y), H x, H y, CX(x,y) with x->y the native edge.
/// Throws MappingError if a and b are not adjacent.
std::vector<Gate> decompose_swap(int a, int b, const CouplingMap& map);

/// CX between the physical homes of `cx`, flipped with four H gates when only
/// the reverse edge exists.
std::vector<Gate> emit_cnot(CnotPair cx, const Mapping& mapping, const CouplingMap& map);

/// Interleaves each step's SWAPs with its original gates.
MappedCircuit assemble(const MappedPlan& plan, const Circuit& circuit, const CouplingMap& map);

/// OpenQASM 2.0 text with `// initial:` and `// output-perm:` header lines.
std::string to_qasm(const MappedCircuit& mc);

/// Inverse of to_qasm. The mapping header lines are required.
MappedCircuit read_mapped_qasm(std::string_view text, const ParseOptions& options = {});

/// Parses "q0->Q2 q1->Q0 ..." (commas also accepted as separators).
Mapping parse_mapping(std::string_view text, int n, int m);
/// As above with n one past the largest logical index named.
Mapping parse_mapping(std::string_view text, int m);

}  // namespace qxmap
