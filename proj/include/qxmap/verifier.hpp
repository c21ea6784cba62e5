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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qxmap/circuit.hpp"
#include "qxmap/coupling_map.hpp"
#include "qxmap/emitter.hpp"

namespace qxmap {

enum class Verdict { Equivalent, NotEquivalent, Inconclusive };

std::string to_string(Verdict verdict);

struct Violation {
  std::size_t gate = 0;
  int control = 0;
  int target = 0;
};

struct ConstraintReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Every CX of `circuit` must use a directed edge of `map`.
ConstraintReport check_constraints(const Circuit& circuit, const CouplingMap& map);
inline ConstraintReport check_constraints(const MappedCircuit& mc, const CouplingMap& map) {
  return check_constraints(mc.circuit, map);
}

struct PermCheck {
  Verdict verdict = Verdict::Inconclusive;
  std::string message;
  std::size_t steps = 0;
};

/// Reads SWAP blocks and H-flipped CX back out of `mc`, tracking which
/// logical qubit sits where, and accepts when the recovered gates form a valid
/// ordering of `original` ending in `mc.output`. Ambiguous H runs are resolved
/// by backtracking; running past `step_budget` gives Inconclusive.
PermCheck check_equivalence_perm(const Circuit& original, const MappedCircuit& mc,
                                 std::size_t step_budget = 2'000'000);

struct SimCheck {
  Verdict verdict = Verdict::Inconclusive;
  std::string message;
  double max_deviation = 0.0;
  int simulated_qubits = 0;
  int trials = 0;
};

struct SimOptions {
  int trials = 20;
  std::uint64_t seed = 1;
  double tolerance = 1e-8;
  /// Largest number of physical qubits simulated. Only qubits that some gate
  /// touches or that hold a logical qubit count.
  int max_qubits = 20;
};

/// Runs both circuits on random product states and compares the outputs up
/// to global phase, after undoing the output permutation. Untouched physical
/// qubits must come back as |0>.
SimCheck check_equivalence_sim(const Circuit& original, const MappedCircuit& mc, const SimOptions& options = {});

struct VerificationReport {
  ConstraintReport constraints;
  std::optional<PermCheck> perm;
  std::optional<SimCheck> sim;

  /// Constraints clean and every check that ran said Equivalent, except that
  /// an Inconclusive permutation check is settled by a passing simulation.
  bool passed() const;
};

/// One line of JSON.
std::string to_json_line(const VerificationReport& report, const std::string& benchmark = "");

}  // namespace qxmap
