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

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qxmap/circuit.hpp"
#include "qxmap/coupling_map.hpp"

namespace qxmap {

inline constexpr int kUnmapped = -1;

class MappingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// More logical qubits than the architecture offers.
class UnmappableError : public MappingError {
 public:
  using MappingError::MappingError;
};

/// The node budget or the wall-clock deadline ran out.
class SearchLimitError : public MappingError {
 public:
  enum class Kind { NodeBudget, Deadline };
  SearchLimitError(Kind kind, const std::string& message) : MappingError(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Partial injective assignment of n logical qubits to m physical qubits.
class Mapping {
 public:
  Mapping() = default;
  /// Empty mapping.
  Mapping(int n, int m);
  /// `l2p[q]` is the physical qubit of logical q, or kUnmapped.
  static Mapping from_vector(const std::vector<int>& l2p, int m);
  static Mapping identity(int n, int m);

  int logical_count() const { return static_cast<int>(l2p_.size()); }
  int physical_count() const { return static_cast<int>(p2l_.size()); }

  int physical(int q) const { return l2p_[static_cast<std::size_t>(q)]; }
  int logical(int p) const { return p2l_[static_cast<std::size_t>(p)]; }
  bool is_mapped(int q) const { return physical(q) != kUnmapped; }
  bool is_free(int p) const { return logical(p) == kUnmapped; }
  bool is_total() const;

  void assign(int q, int p);
  /// Exchanges the contents of physical qubits a and b (either may be empty).
  void swap_physical(int a, int b);

  const std::vector<int>& logical_to_physical() const { return l2p_; }
  const std::vector<int>& physical_to_logical() const { return p2l_; }

  friend bool operator==(const Mapping&, const Mapping&) = default;

 private:
  std::vector<int> l2p_;
  std::vector<int> p2l_;
};

/// "q0->Q2 q1->Q0 ..." over mapped qubits.
std::string to_string(const Mapping& mapping);

/// SWAP on a coupling-map edge, stored with a < b.
struct Swap {
  int a = 0;
  int b = 0;
  static Swap of(int x, int y) { return x < y ? Swap{x, y} : Swap{y, x}; }
  friend bool operator==(const Swap&, const Swap&) = default;
  friend auto operator<=>(const Swap&, const Swap&) = default;
};

/// SWAPs on pairwise-disjoint qubits, applied concurrently.
using SwapStep = std::vector<Swap>;

/// SWAP steps inserted between two layers, in application order.
struct PermutationLayer {
  std::vector<SwapStep> steps;

  std::size_t swap_count() const;
  bool empty() const { return steps.empty(); }
  void apply(Mapping& mapping) const;
  friend bool operator==(const PermutationLayer&, const PermutationLayer&) = default;
};

/// CX over logical qubits.
struct CnotPair {
  int control = 0;
  int target = 0;
  friend bool operator==(const CnotPair&, const CnotPair&) = default;
};

/// CX gates of `layer`, in gate order.
std::vector<CnotPair> layer_cnots(const Circuit& circuit, const Layer& layer);

enum class Strategy { Baseline, LookAhead, Full };

std::string to_string(Strategy strategy);
/// "baseline", "lookahead" or "full"; throws std::invalid_argument otherwise.
Strategy parse_strategy(const std::string& name);

struct SearchNode {
  Mapping mapping;
  int g = 0;
  int h = 0;
  std::vector<SwapStep> steps;

  int f() const { return g + h; }
};

enum class ExpansionMode {
  /// Every non-empty set of pairwise-disjoint edges touching an active qubit,
  /// each set once.
  DistinctSets,
  /// Walks the active qubits in order and lets each pick one free incident
  /// edge or none. The same set may come out several times.
  PerQubit,
};

/// SWAP sets available from the active physical qubits.
std::vector<SwapStep> swap_sets(const std::vector<int>& active, const CouplingMap& map,
                                ExpansionMode mode = ExpansionMode::DistinctSets);

/// One successor per SWAP set, with g raised by 7 per SWAP. Successor h is
/// left at 0.
std::vector<SearchNode> expand(const SearchNode& node, const std::vector<int>& active, const CouplingMap& map,
                               ExpansionMode mode = ExpansionMode::DistinctSets);

/// cnot_cost of one CX under a possibly partial mapping. One unmapped operand
/// takes the cheapest free physical qubit; two unmapped operands cost 0.
int pair_cost(const Mapping& mapping, CnotPair cx, const CouplingMap& map);

/// Largest pair_cost over the layer.
int h_baseline(const Mapping& mapping, const std::vector<CnotPair>& layer, const CouplingMap& map);

/// Sum of pair_cost over both layers.
int h_lookahead(const Mapping& mapping, const std::vector<CnotPair>& layer, const std::vector<CnotPair>& next,
                const CouplingMap& map);

/// True when every CX of the layer sits on a coupling-map edge (either way).
bool layer_satisfied(const Mapping& mapping, const std::vector<CnotPair>& layer, const CouplingMap& map);

/// CX gates of the layer that need a direction flip.
int reversed_count(const Mapping& mapping, const std::vector<CnotPair>& layer, const CouplingMap& map);

struct SearchOptions {
  std::size_t node_budget = 5'000'000;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  /// Number of following CX layers read by the look-ahead heuristic.
  int window = 1;
  ExpansionMode mode = ExpansionMode::DistinctSets;
  /// Called for every node taken off the open list and expanded.
  std::function<void(const Mapping& mapping, int g, int h)> on_expand;
};

struct LayerResult {
  Mapping goal;
  PermutationLayer pi;
  int swaps = 0;
  int reversed = 0;
  /// 7 * swaps + 4 * reversed.
  int cost = 0;
  std::size_t expanded = 0;
};

/// A* from `start` to a mapping on which every CX of `layer` is adjacent.
///
/// Baseline minimises 7 * swaps + 4 * reversed CX exactly. The look-ahead
/// strategies add the cost of `next` to the heuristic and stop at the first
/// goal taken off the open list. For Full, unmapped qubits outside the layer
/// stay unmapped.
LayerResult astar_layer(const Mapping& start, const std::vector<CnotPair>& layer, const std::vector<CnotPair>& next,
                        Strategy strategy, const CouplingMap& map, const SearchOptions& options = {});

/// Places the unmapped operands of the layer's CX gates, in gate order. A CX
/// with both operands unmapped takes the free pair minimising the layer sum
/// (lexicographically first on ties); a single unmapped operand takes the
/// free qubit minimising its CX plus the CX gates of `next` that touch it
/// (lowest index on ties).
Mapping complete_mapping(const Mapping& partial, const std::vector<CnotPair>& layer, const CouplingMap& map,
                         const std::vector<CnotPair>& next = {});

/// One section of a mapped program: SWAP steps, then original gates.
struct PlanStep {
  PermutationLayer pi;
  std::vector<std::size_t> gates;
  /// A barrier precedes this step's SWAPs.
  bool barrier_before = false;
  std::size_t expanded = 0;
};

struct MappedPlan {
  Strategy strategy = Strategy::Baseline;
  /// Total.
  Mapping initial;
  std::vector<PlanStep> steps;
  /// True when the original circuit ends with a barrier.
  bool trailing_barrier = false;

  std::size_t expanded() const;
  std::size_t swap_count() const;
  /// initial with every step's SWAPs applied.
  Mapping final_mapping() const;
};

struct MapOptions {
  std::uint64_t seed = 0;
  /// Replaces the random initial mapping of Baseline and LookAhead.
  std::optional<Mapping> initial;
  SearchOptions search;
  std::optional<std::chrono::duration<double>> timeout;
};

MappedPlan map_circuit(const Circuit& circuit, const CouplingMap& map, Strategy strategy,
                       const MapOptions& options = {});

/// Seeded random total mapping under which every CX of the first layer that
/// contains one runs natively. Falls back to a greedy placement after
/// 100000 rejected samples.
Mapping random_initial_mapping(const Circuit& circuit, const CouplingMap& map, std::uint64_t seed);

/// Gate-by-gate resolution without search. Before CX gate `i`, the SWAPs in
/// `routes[i]` are applied one per step; a CX without a route whose operands
/// are not adjacent has its control walked along a shortest path.
MappedPlan sequential_plan(const Circuit& circuit, const CouplingMap& map, const Mapping& initial,
                           const std::map<std::size_t, std::vector<Swap>>& routes = {});

}  // namespace qxmap
