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

#include "qxmap/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qxmap {

std::size_t Circuit::cx_count() const {
  return static_cast<std::size_t>(
      std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return g.is_cx(); }));
}

void Circuit::validate() const {
  if (num_qubits < 0) throw std::invalid_argument("negative qubit count");
  auto check = [&](int q, std::size_t i) {
    if (q < 0 || q >= num_qubits) {
      throw std::invalid_argument("gate " + std::to_string(i) + ": operand " + std::to_string(q) +
                                  " out of range for " + std::to_string(num_qubits) + " qubits");
    }
  };
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    check(g.q0, i);
    if (g.is_cx()) {
      check(g.q1, i);
      if (g.q0 == g.q1) throw std::invalid_argument("gate " + std::to_string(i) + ": CX control == target");
    } else if (!std::isfinite(g.theta) || !std::isfinite(g.phi) || !std::isfinite(g.lambda)) {
      throw std::invalid_argument("gate " + std::to_string(i) + ": non-finite angle");
    }
  }
  if (!std::is_sorted(barriers.begin(), barriers.end()) ||
      (!barriers.empty() && barriers.back() > gates.size())) {
    throw std::invalid_argument("barrier positions must be sorted and within the gate list");
  }
  for (const Measurement& m : measurements) check(m.qubit, gates.size());
}

std::vector<Layer> partition_layers(const Circuit& circuit) {
  std::vector<Layer> layers;
  std::vector<std::size_t> next_free(static_cast<std::size_t>(circuit.num_qubits), 0);
  std::size_t floor = 0;
  auto barrier = circuit.barriers.begin();

  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    for (; barrier != circuit.barriers.end() && *barrier <= i; ++barrier) floor = layers.size();
    const Gate& g = circuit.gates[i];
    std::size_t level = std::max(floor, next_free[static_cast<std::size_t>(g.q0)]);
    if (g.is_cx()) level = std::max(level, next_free[static_cast<std::size_t>(g.q1)]);

    if (level == layers.size()) layers.push_back(Layer{level, {}});
    layers[level].gates.push_back(i);
    next_free[static_cast<std::size_t>(g.q0)] = level + 1;
    if (g.is_cx()) next_free[static_cast<std::size_t>(g.q1)] = level + 1;
  }
  return layers;
}

std::size_t depth(const Circuit& circuit) { return partition_layers(circuit).size(); }

}  // namespace qxmap
