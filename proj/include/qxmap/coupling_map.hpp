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

#include <Eigen/Core>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qxmap {

/// Elementary-gate cost of one SWAP (3 CX + 4 H).
inline constexpr int kSwapCost = 7;
/// Extra gates for a direction flip (4 H).
inline constexpr int kFlipCost = 4;

class CouplingMapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Directed coupling edge: CX with this control and target is native.
struct Edge {
  int control = 0;
  int target = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Architecture graph over `m` physical qubits with precomputed all-pairs
/// undirected distances and CX costs.
class CouplingMap {
 public:
  /// Throws CouplingMapError on self-edges, out-of-range indices, or a
  /// disconnected undirected graph. Duplicate edges are merged.
  CouplingMap(int m, std::vector<Edge> edges, std::string name = "custom");

  int size() const { return m_; }
  const std::string& name() const { return name_; }
  /// Sorted, deduplicated.
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_edge(int control, int target) const { return directed_(control, target) != 0; }
  bool adjacent(int a, int b) const { return has_edge(a, b) || has_edge(b, a); }
  /// Undirected neighbours, ascending.
  const std::vector<int>& neighbors(int q) const { return neighbors_[static_cast<std::size_t>(q)]; }

  /// Undirected hop count.
  int distance(int a, int b) const { return dist_(a, b); }
  const Eigen::MatrixXi& distances() const { return dist_; }

  /// Elementary gates needed beyond the CX itself to run CX(control, target):
  /// 7 per SWAP to become adjacent, plus 4 when no shortest path ends on an
  /// edge usable in the needed direction.
  int cnot_cost(int control, int target) const { return cost_(control, target); }
  const Eigen::MatrixXi& costs() const { return cost_; }

  /// One undirected shortest path from `a` to `b`, both ends included.
  /// Neighbours are visited in ascending order, so the result is deterministic.
  std::vector<int> shortest_path(int a, int b) const;

  friend bool operator==(const CouplingMap& x, const CouplingMap& y) {
    return x.m_ == y.m_ && x.edges_ == y.edges_;
  }

 private:
  int m_;
  std::string name_;
  std::vector<Edge> edges_;
  Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> directed_;
  std::vector<std::vector<int>> neighbors_;
  Eigen::MatrixXi dist_;
  Eigen::MatrixXi cost_;
};

/// IBM QX2, QX3, QX4 or QX5. Throws CouplingMapError for any other name.
CouplingMap builtin_architecture(std::string_view name);

/// Names accepted by builtin_architecture.
std::vector<std::string> builtin_architecture_names();

/// Reads the coupling-map text format:
///
///   # comment
///   m 5            (or m=5)
///   0 1
///   3 2
///
/// Blank lines and `#` comments are ignored.
CouplingMap parse_coupling_map(std::string_view text, std::string name = "custom");

/// Reads a coupling-map file from disk.
CouplingMap load_coupling_map(const std::string& path);

/// Round-trippable text form.
std::string to_text(const CouplingMap& map);

}  // namespace qxmap
