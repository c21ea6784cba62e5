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

#include <catch_amalgamated.hpp>

#include <climits>
#include <filesystem>
#include <fstream>
#include <queue>
#include <tuple>

#include "qxmap/coupling_map.hpp"

using namespace qxmap;

namespace {

std::vector<std::vector<int>> floyd_warshall(const CouplingMap& map) {
  const int m = map.size();
  std::vector<std::vector<int>> d(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m), 1 << 20));
  for (int i = 0; i < m; ++i) d[i][i] = 0;
  for (const Edge& e : map.edges()) d[e.control][e.target] = d[e.target][e.control] = 1;
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

// Cheapest way to run CX(c, t) by moving the two operands around with SWAPs
// (7 each) and flipping at the end (4) when the meeting edge points the
// wrong way. Dijkstra over operand positions.
int routing_oracle(const CouplingMap& map, int c, int t) {
  const int m = map.size();
  std::vector<int> dist(static_cast<std::size_t>(m * m), INT_MAX);
  using Item = std::tuple<int, int, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  dist[c * m + t] = 0;
  open.emplace(0, c, t);
  int best = INT_MAX;
  while (!open.empty()) {
    auto [g, pc, pt] = open.top();
    open.pop();
    if (g > dist[pc * m + pt]) continue;
    if (map.has_edge(pc, pt)) best = std::min(best, g);
    if (map.has_edge(pt, pc)) best = std::min(best, g + kFlipCost);
    auto relax = [&](int nc, int nt) {
      if (g + kSwapCost < dist[nc * m + nt]) {
        dist[nc * m + nt] = g + kSwapCost;
        open.emplace(g + kSwapCost, nc, nt);
      }
    };
    for (int v : map.neighbors(pc)) relax(v, v == pt ? pc : pt);
    for (int v : map.neighbors(pt)) relax(v == pc ? pt : pc, v);
  }
  return best;
}

}  // namespace

TEST_CASE("built-in edge sets") {
  const CouplingMap qx2 = builtin_architecture("qx2");
  CHECK(qx2.size() == 5);
  CHECK(qx2.edges().size() == 6);
  for (auto [c, t] : {std::pair{0, 1}, {0, 2}, {3, 2}, {4, 2}}) CHECK(qx2.has_edge(c, t));
  CHECK_FALSE(qx2.has_edge(1, 0));

  const CouplingMap qx4 = builtin_architecture("qx4");
  CHECK(qx4.size() == 5);
  CHECK(qx4.has_edge(1, 0));
  CHECK(qx4.has_edge(2, 0));
  CHECK_FALSE(qx4.has_edge(0, 1));

  const CouplingMap qx5 = builtin_architecture("qx5");
  CHECK(qx5.size() == 16);
  CHECK(qx5.has_edge(1, 0));
  CHECK(qx5.has_edge(15, 2));
  CHECK(qx5.has_edge(12, 5));
  CHECK(qx5.edges().size() == 22);

  const CouplingMap qx3 = builtin_architecture("qx3");
  CHECK(qx3.size() == 16);
  CHECK(qx3.edges().size() == 20);
  CHECK(qx3.has_edge(3, 14));

  CHECK(builtin_architecture_names() == std::vector<std::string>{"qx2", "qx3", "qx4", "qx5"});
  CHECK_THROWS_AS(builtin_architecture("qx9"), CouplingMapError);
}

TEST_CASE("distances agree with Floyd-Warshall") {
  for (const std::string& name : builtin_architecture_names()) {
    const CouplingMap map = builtin_architecture(name);
    const auto d = floyd_warshall(map);
    for (int a = 0; a < map.size(); ++a)
      for (int b = 0; b < map.size(); ++b) {
        INFO(name << " " << a << " " << b);
        CHECK(map.distance(a, b) == d[a][b]);
      }
  }
}

TEST_CASE("CX costs agree with exhaustive routing") {
  for (const std::string& name : builtin_architecture_names()) {
    const CouplingMap map = builtin_architecture(name);
    for (int c = 0; c < map.size(); ++c)
      for (int t = 0; t < map.size(); ++t) {
        if (c == t) continue;
        INFO(name << " CX " << c << "->" << t);
        CHECK(map.cnot_cost(c, t) == routing_oracle(map, c, t));
      }
  }
}

TEST_CASE("quoted CX costs") {
  CHECK(builtin_architecture("qx3").cnot_cost(1, 14) == 14);
  CHECK(builtin_architecture("qx5").cnot_cost(1, 0) == 0);
  CHECK(builtin_architecture("qx5").cnot_cost(0, 1) == 4);
}

TEST_CASE("shortest paths are walks of the right length") {
  const CouplingMap map = builtin_architecture("qx5");
  for (int a = 0; a < map.size(); ++a)
    for (int b = 0; b < map.size(); ++b) {
      const auto path = map.shortest_path(a, b);
      REQUIRE(static_cast<int>(path.size()) == map.distance(a, b) + 1);
      CHECK(path.front() == a);
      CHECK(path.back() == b);
      for (std::size_t i = 1; i < path.size(); ++i) CHECK(map.adjacent(path[i - 1], path[i]));
    }
}

TEST_CASE("text format round trip and file loading") {
  const CouplingMap qx2 = builtin_architecture("qx2");
  const std::string text = "# five qubits\nm 5\n0 1\n0 2\n1 2\n3 2\n3 4\n4 2\n";
  CHECK(parse_coupling_map(text) == qx2);
  CHECK(parse_coupling_map("m=5\n0 1\n0 2 # trailing\n\n1 2\n3 2\n3 4\n4 2\n0 1\n") == qx2);
  for (const std::string& name : builtin_architecture_names()) {
    const CouplingMap map = builtin_architecture(name);
    CHECK(parse_coupling_map(to_text(map)) == map);
  }
  const auto path = std::filesystem::temp_directory_path() / "qxmap_test_qx2.txt";
  std::ofstream(path) << text;
  const CouplingMap loaded = load_coupling_map(path.string());
  CHECK(loaded == qx2);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_coupling_map("/nonexistent/map.txt"), CouplingMapError);
}

TEST_CASE("malformed coupling maps are rejected") {
  CHECK_THROWS_AS(parse_coupling_map("0 1\n"), CouplingMapError);
  CHECK_THROWS_AS(parse_coupling_map("m 3\n0 1\n"), CouplingMapError);
  CHECK_THROWS_AS(parse_coupling_map("m 2\n0 0\n"), CouplingMapError);
  CHECK_THROWS_AS(parse_coupling_map("m 2\n0 2\n"), CouplingMapError);
  CHECK_THROWS_AS(parse_coupling_map("m 2\n0 x\n"), CouplingMapError);
  CHECK_THROWS_AS(CouplingMap(3, {{0, 1}, {1, 0}}), CouplingMapError);
}
